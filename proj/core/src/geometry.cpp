#include "uwmvs/geometry.hpp"

#include <cmath>

namespace uwmvs::geometry {

Mat3 CameraIntrinsics::matrix() const {
  Mat3 k;
  k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return k;
}

Mat3 CameraIntrinsics::inverse_matrix() const {
  validate();
  Mat3 k_inv;
  k_inv << 1.0 / fx, 0.0, -cx / fx, 0.0, 1.0 / fy, -cy / fy, 0.0, 0.0, 1.0;
  return k_inv;
}

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw DomainError("intrinsics: focal lengths must be positive");
  if (!std::isfinite(fx) || !std::isfinite(fy) || !std::isfinite(cx) || !std::isfinite(cy))
    throw DomainError("intrinsics: non-finite entries");
}

void CameraPose::validate() const {
  const Mat3 rtr = R.transpose() * R;
  if ((rtr - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9)
    throw DomainError("pose: R is not orthonormal");
  if (std::abs(R.determinant() - 1.0) > 1e-9) throw DomainError("pose: det(R) != +1");
  if (!t.allFinite()) throw DomainError("pose: non-finite translation");
}

void Viewpoint::validate() const {
  intrinsics.validate();
  pose.validate();
  if (width < 8 || height < 8) throw DomainError("viewpoint: image dimensions must be >= 8");
}

Viewpoint Viewpoint::scaled(double s) const {
  Viewpoint out = *this;
  out.intrinsics.fx = intrinsics.fx * s;
  out.intrinsics.fy = intrinsics.fy * s;
  out.intrinsics.cx = (intrinsics.cx + 0.5) * s - 0.5;
  out.intrinsics.cy = (intrinsics.cy + 0.5) * s - 0.5;
  out.width = static_cast<int>(std::lround(width * s));
  out.height = static_cast<int>(std::lround(height * s));
  return out;
}

HomographyRange homography_range(const Viewpoint& src, const Viewpoint& tgt) {
  src.intrinsics.validate();
  tgt.intrinsics.validate();
  // Relative motion x_src = R_rel x_tgt + t_rel between the camera frames;
  // the sweep plane is e3^T x_tgt = z in the target camera frame.
  const Mat3 r_rel = src.pose.R * tgt.pose.R.transpose();
  const Vec3 t_rel = src.pose.t - r_rel * tgt.pose.t;
  const Mat3 kt_inv = tgt.intrinsics.inverse_matrix();
  const Mat3 ks = src.intrinsics.matrix();
  HomographyRange hr;
  hr.A = ks * r_rel * kt_inv;
  hr.B = ks * (t_rel * Vec3(0.0, 0.0, 1.0).transpose()) * kt_inv;
  return hr;
}

Mat3 homography(const Viewpoint& src, const Viewpoint& tgt, double z) {
  if (!(z > 0.0)) throw DomainError("homography: depth must be positive");
  Mat3 h = homography_range(src, tgt).at(z);
  if (std::abs(h(2, 2)) > 1e-12) h /= h(2, 2);
  return h;
}

Vec3 unproject(const Viewpoint& vp, const Vec2& pixel, double z) {
  if (!(z > 0.0)) throw DomainError("unproject: depth must be positive");
  const Vec3 ray_cam((pixel.x() - vp.intrinsics.cx) / vp.intrinsics.fx,
                     (pixel.y() - vp.intrinsics.cy) / vp.intrinsics.fy, 1.0);
  return vp.pose.R.transpose() * (z * ray_cam - vp.pose.t);
}

Projection project(const Viewpoint& vp, const Vec3& point) {
  const Vec3 x_cam = vp.pose.R * point + vp.pose.t;
  if (x_cam.z() == 0.0) throw DomainError("project: point on the principal plane (z = 0)");
  Projection p;
  p.depth = x_cam.z();
  p.pixel = Vec2(vp.intrinsics.fx * x_cam.x() / x_cam.z() + vp.intrinsics.cx,
                 vp.intrinsics.fy * x_cam.y() / x_cam.z() + vp.intrinsics.cy);
  return p;
}

Vec3 ray_direction(const Viewpoint& vp, const Vec2& pixel) {
  const Vec3 ray_cam((pixel.x() - vp.intrinsics.cx) / vp.intrinsics.fx,
                     (pixel.y() - vp.intrinsics.cy) / vp.intrinsics.fy, 1.0);
  return (vp.pose.R.transpose() * ray_cam).normalized();
}

DirectionMap ray_directions(const Viewpoint& vp) {
  DirectionMap dm;
  dm.h = vp.height;
  dm.w = vp.width;
  dm.dirs.resize(static_cast<size_t>(vp.height) * vp.width);
  const Mat3 rt = vp.pose.R.transpose();
  for (int y = 0; y < vp.height; ++y) {
    for (int x = 0; x < vp.width; ++x) {
      const Vec3 ray_cam((x - vp.intrinsics.cx) / vp.intrinsics.fx,
                         (y - vp.intrinsics.cy) / vp.intrinsics.fy, 1.0);
      dm.at(y, x) = (rt * ray_cam).normalized();
    }
  }
  return dm;
}

bool bilinear_sample(const MapF& map, double x, double y, float* out) {
  if (!(x >= 0.0) || !(y >= 0.0) || !(x <= map.w - 1.0) || !(y <= map.h - 1.0)) {
    for (int ch = 0; ch < map.c; ++ch) out[ch] = 0.0f;
    return false;
  }
  const int x0 = static_cast<int>(x);
  const int y0 = static_cast<int>(y);
  const int x1 = std::min(x0 + 1, map.w - 1);
  const int y1 = std::min(y0 + 1, map.h - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const float* p00 = map.pixel(y0, x0);
  const float* p01 = map.pixel(y0, x1);
  const float* p10 = map.pixel(y1, x0);
  const float* p11 = map.pixel(y1, x1);
  for (int ch = 0; ch < map.c; ++ch) {
    const double top = (1.0 - fx) * p00[ch] + fx * p01[ch];
    const double bot = (1.0 - fx) * p10[ch] + fx * p11[ch];
    out[ch] = static_cast<float>((1.0 - fy) * top + fy * bot);
  }
  return true;
}

void warp_map(const MapF& src, const Mat3& H, int out_h, int out_w, MapF* out, MaskU8* mask) {
  *out = MapF(out_h, out_w, src.c);
  *mask = MaskU8(out_h, out_w);
  for (int v = 0; v < out_h; ++v) {
    for (int u = 0; u < out_w; ++u) {
      const double denom = H(2, 0) * u + H(2, 1) * v + H(2, 2);
      if (!(denom > 1e-12)) continue;  // behind the sweep plane
      const double x = (H(0, 0) * u + H(0, 1) * v + H(0, 2)) / denom;
      const double y = (H(1, 0) * u + H(1, 1) * v + H(1, 2)) / denom;
      if (bilinear_sample(src, x, y, out->pixel(v, u))) mask->at(v, u) = 1;
    }
  }
}

}  // namespace uwmvs::geometry
