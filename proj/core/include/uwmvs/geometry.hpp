#pragma once

#include <Eigen/Dense>
#include <vector>

#include "uwmvs/array.hpp"
#include "uwmvs/errors.hpp"

namespace uwmvs::geometry {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

// Pixel convention used everywhere: pixel centers at integer coordinates,
// origin at the top-left pixel, +u right, +v down.

struct CameraIntrinsics {
  double fx = 0.0, fy = 0.0;
  double cx = 0.0, cy = 0.0;

  Mat3 matrix() const;
  Mat3 inverse_matrix() const;
  void validate() const;  // fx > 0, fy > 0
};

// World-to-camera transform: x_cam = R * x_world + t.
struct CameraPose {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  void validate() const;  // R orthonormal within 1e-9, det(R) = +1
  Vec3 camera_center() const { return -R.transpose() * t; }
  // Camera +z axis expressed in world coordinates (third row of R).
  Vec3 principal_axis() const { return R.row(2).transpose(); }
};

struct Viewpoint {
  CameraIntrinsics intrinsics;
  CameraPose pose;
  int width = 0, height = 0;

  void validate() const;  // width, height >= 8
  // Rescaled camera grid. Keeps pixel centers aligned:
  // u' = (u + 0.5) * s - 0.5.
  Viewpoint scaled(double s) const;
};

// Plane-induced homography H(z) mapping target pixels to source pixels for
// the sweep plane fronto-parallel to the target camera at depth z.
// Normalized so H(2,2) == 1 when that entry is nonzero.
Mat3 homography(const Viewpoint& src, const Viewpoint& tgt, double z);

// Depth-parametrized decomposition H(z) = A + B / z, for sweeping many
// depths without re-deriving the pose algebra per plane.
struct HomographyRange {
  Mat3 A, B;
  Mat3 at(double z) const { return A + B / z; }
};
HomographyRange homography_range(const Viewpoint& src, const Viewpoint& tgt);

// Pixel + depth -> world point with camera-frame depth exactly z.
Vec3 unproject(const Viewpoint& vp, const Vec2& pixel, double z);

struct Projection {
  Vec2 pixel;
  double depth;  // camera-frame z; negative when behind the camera
};
Projection project(const Viewpoint& vp, const Vec3& point);

// Unit ray direction (world frame) through one pixel center.
Vec3 ray_direction(const Viewpoint& vp, const Vec2& pixel);

// H x W unit ray directions in world coordinates, one per pixel center.
struct DirectionMap {
  int h = 0, w = 0;
  std::vector<Vec3> dirs;

  const Vec3& at(int y, int x) const { return dirs[static_cast<size_t>(y) * w + x]; }
  Vec3& at(int y, int x) { return dirs[static_cast<size_t>(y) * w + x]; }
};
DirectionMap ray_directions(const Viewpoint& vp);

// Bilinear lookup of all channels at (x, y); false when (x, y) falls outside
// [0, w-1] x [0, h-1] (out writes zeros in that case).
bool bilinear_sample(const MapF& map, double x, double y, float* out);

// Resamples src (h x w x F) onto an out_h x out_w target grid: out(u, v)
// reads src at H * [u, v, 1]^T after homogeneous division, with bilinear
// interpolation. Out-of-bounds samples (or samples with non-positive
// homogeneous denominator) are zero-filled with mask = 0.
void warp_map(const MapF& src, const Mat3& H, int out_h, int out_w, MapF* out, MaskU8* mask);

}  // namespace uwmvs::geometry
