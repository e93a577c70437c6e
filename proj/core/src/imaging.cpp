#include "uwmvs/imaging.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace uwmvs::imaging {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// sRGB transfer curve

double srgb_encode(double linear) {
  if (linear <= 0.0031308) return 12.92 * linear;
  return 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

double srgb_decode(double encoded) {
  if (encoded <= 0.04045) return encoded / 12.92;
  return std::pow((encoded + 0.055) / 1.055, 2.4);
}

// ---------------------------------------------------------------------------
// PNG

namespace {

struct PngReadCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngReadCloser() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

struct PngWriteCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngWriteCloser() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

}  // namespace

ImageBuffer read_image(const std::string& path) {
  PngReadCloser ctx;
  ctx.fp = std::fopen(path.c_str(), "rb");
  if (!ctx.fp) throw IoError("cannot open image for reading: " + path);

  unsigned char sig[8];
  if (std::fread(sig, 1, 8, ctx.fp) != 8 || png_sig_cmp(sig, 0, 8))
    throw IoError("not a PNG file (bad signature at byte 0): " + path);

  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw IoError("libpng read init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw IoError("libpng info init failed");
  if (setjmp(png_jmpbuf(ctx.png)))
    throw IoError("malformed PNG near byte " + std::to_string(std::ftell(ctx.fp)) + ": " + path);

  png_init_io(ctx.png, ctx.fp);
  png_set_sig_bytes(ctx.png, 8);
  png_read_info(ctx.png, ctx.info);

  const int width = png_get_image_width(ctx.png, ctx.info);
  const int height = png_get_image_height(ctx.png, ctx.info);
  const int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
  const int color_type = png_get_color_type(ctx.png, ctx.info);

  if (bit_depth != 8 && bit_depth != 16)
    throw IoError("unsupported PNG bit depth " + std::to_string(bit_depth) + ": " + path);
  if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB)
    throw IoError("unsupported PNG color type (expected gray or RGB): " + path);

  const int channels = (color_type == PNG_COLOR_TYPE_RGB) ? 3 : 1;
  ImageBuffer img(height, width, channels);

  const size_t row_bytes = png_get_rowbytes(ctx.png, ctx.info);
  std::vector<unsigned char> row(row_bytes);
  for (int y = 0; y < height; ++y) {
    png_read_row(ctx.png, row.data(), nullptr);
    if (bit_depth == 16) {
      for (int x = 0; x < width * channels; ++x) {
        const unsigned v = (unsigned(row[2 * x]) << 8) | row[2 * x + 1];  // PNG is big-endian
        img.data[static_cast<size_t>(y) * width * channels + x] = static_cast<float>(v / 65535.0);
      }
    } else {
      for (int x = 0; x < width * channels; ++x) {
        img.data[static_cast<size_t>(y) * width * channels + x] =
            static_cast<float>(srgb_decode(row[x] / 255.0));
      }
    }
  }
  png_read_end(ctx.png, nullptr);
  return img;
}

namespace {

void write_png_rows(const std::string& path, int height, int width, int channels, int bit_depth,
                    const std::function<double(size_t)>& value_at) {
  PngWriteCloser ctx;
  ctx.fp = std::fopen(path.c_str(), "wb");
  if (!ctx.fp) throw IoError("cannot open image for writing: " + path);
  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw IoError("libpng write init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw IoError("libpng info init failed");
  if (setjmp(png_jmpbuf(ctx.png))) throw IoError("PNG write failed: " + path);

  png_init_io(ctx.png, ctx.fp);
  const int color_type = (channels == 3) ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY;
  png_set_IHDR(ctx.png, ctx.info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);

  std::vector<unsigned char> row(static_cast<size_t>(width) * channels * (bit_depth / 8));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width * channels; ++x) {
      const size_t idx = static_cast<size_t>(y) * width * channels + x;
      const double v = std::clamp(value_at(idx), 0.0, 1.0);
      if (bit_depth == 16) {
        const unsigned q = static_cast<unsigned>(std::lround(v * 65535.0));
        row[2 * x] = static_cast<unsigned char>(q >> 8);
        row[2 * x + 1] = static_cast<unsigned char>(q & 0xff);
      } else {
        row[x] = static_cast<unsigned char>(std::lround(srgb_encode(v) * 255.0));
      }
    }
    png_write_row(ctx.png, row.data());
  }
  png_write_end(ctx.png, nullptr);
}

}  // namespace

void write_image(const std::string& path, const ImageBuffer& img, int bit_depth) {
  if (img.empty()) throw DomainError("write_image: empty buffer");
  if (bit_depth != 8 && bit_depth != 16) throw DomainError("write_image: bit depth must be 8 or 16");
  for (float v : img.data)
    if (!std::isfinite(v)) throw DomainError("write_image: non-finite pixel value");
  write_png_rows(path, img.h, img.w, img.c, bit_depth, [&](size_t i) { return double(img.data[i]); });
}

void write_image(const std::string& path, const MapD& img, int bit_depth) {
  if (img.data.empty()) throw DomainError("write_image: empty buffer");
  if (bit_depth != 8 && bit_depth != 16) throw DomainError("write_image: bit depth must be 8 or 16");
  write_png_rows(path, img.h, img.w, img.c, bit_depth, [&](size_t i) { return img.data[i]; });
}

// ---------------------------------------------------------------------------
// PFM

MapF read_depth(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open PFM for reading: " + path);
  std::string tag;
  in >> tag;
  if (tag != "Pf") throw IoError("PFM parse error: expected grayscale 'Pf' header: " + path);
  int w = 0, h = 0;
  double scale = 0.0;
  in >> w >> h >> scale;
  if (!in || w <= 0 || h <= 0) throw IoError("PFM parse error: bad dimensions: " + path);
  if (!(scale < 0.0)) throw IoError("PFM parse error: expected little-endian (negative scale): " + path);
  in.get();  // single whitespace byte after the header
  MapF depth(h, w, 1);
  // Bottom-up row order per PFM convention.
  for (int y = h - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(&depth.data[static_cast<size_t>(y) * w]),
            static_cast<std::streamsize>(w) * sizeof(float));
    if (!in) throw IoError("PFM parse error: truncated payload: " + path);
  }
  return depth;
}

void write_depth(const std::string& path, const MapF& depth) {
  if (depth.c != 1) throw DomainError("write_depth: expected a single-channel map");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open PFM for writing: " + path);
  out << "Pf\n" << depth.w << " " << depth.h << "\n-1.0\n";
  for (int y = depth.h - 1; y >= 0; --y) {
    out.write(reinterpret_cast<const char*>(&depth.data[static_cast<size_t>(y) * depth.w]),
              static_cast<std::streamsize>(depth.w) * sizeof(float));
  }
  if (!out) throw IoError("PFM write failed: " + path);
}

// ---------------------------------------------------------------------------
// Metrics

double psnr(const ImageBuffer& a, const ImageBuffer& b, double peak) {
  if (!a.same_shape(b)) throw DomainError("psnr: shape mismatch");
  if (a.empty()) throw DomainError("psnr: empty input");
  double sum_sq = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    const double d = double(a.data[i]) - double(b.data[i]);
    sum_sq += d * d;
  }
  const double mse = sum_sq / double(a.data.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

std::array<double, 11> ssim_window() {
  std::array<double, 11> k{};
  const double sigma = 1.5;
  double sum = 0.0;
  for (int i = 0; i < 11; ++i) {
    const double x = i - 5;
    k[i] = std::exp(-x * x / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

namespace {

inline int reflect_index(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -1 - i;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

// Separable 11-tap Gaussian filter with symmetric (edge-mirroring) padding.
void ssim_blur(const std::vector<double>& in, int h, int w, std::vector<double>* out) {
  const auto k = ssim_window();
  std::vector<double> tmp(in.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -5; i <= 5; ++i) acc += k[i + 5] * in[static_cast<size_t>(y) * w + reflect_index(x + i, w)];
      tmp[static_cast<size_t>(y) * w + x] = acc;
    }
  out->resize(in.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -5; i <= 5; ++i) acc += k[i + 5] * tmp[static_cast<size_t>(reflect_index(y + i, h)) * w + x];
      (*out)[static_cast<size_t>(y) * w + x] = acc;
    }
}

}  // namespace

double ssim(const ImageBuffer& a, const ImageBuffer& b) {
  if (!a.same_shape(b)) throw DomainError("ssim: shape mismatch");
  if (a.h < 11 || a.w < 11) throw DomainError("ssim: images must be at least 11x11");
  const double c1 = 0.01 * 0.01;
  const double c2 = 0.03 * 0.03;
  const int n = a.h * a.w;
  double total = 0.0;
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  std::vector<double> mu_x, mu_y, m_xx, m_yy, m_xy;
  for (int ch = 0; ch < a.c; ++ch) {
    for (int i = 0; i < n; ++i) {
      x[i] = a.data[static_cast<size_t>(i) * a.c + ch];
      y[i] = b.data[static_cast<size_t>(i) * a.c + ch];
      xx[i] = x[i] * x[i];
      yy[i] = y[i] * y[i];
      xy[i] = x[i] * y[i];
    }
    ssim_blur(x, a.h, a.w, &mu_x);
    ssim_blur(y, a.h, a.w, &mu_y);
    ssim_blur(xx, a.h, a.w, &m_xx);
    ssim_blur(yy, a.h, a.w, &m_yy);
    ssim_blur(xy, a.h, a.w, &m_xy);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double var_x = m_xx[i] - mu_x[i] * mu_x[i];
      const double var_y = m_yy[i] - mu_y[i] * mu_y[i];
      const double cov = m_xy[i] - mu_x[i] * mu_y[i];
      const double num = (2.0 * mu_x[i] * mu_y[i] + c1) * (2.0 * cov + c2);
      const double den = (mu_x[i] * mu_x[i] + mu_y[i] * mu_y[i] + c1) * (var_x + var_y + c2);
      acc += num / den;
    }
    total += acc / n;
  }
  return total / a.c;
}

ImageBuffer central_crop_eval_region(const ImageBuffer& img) {
  if (img.w < 10 || img.h < 10) throw DomainError("central_crop: image must be at least 10x10");
  const int cw = img.w * 4 / 5;
  const int ch = img.h * 4 / 5;
  const int x0 = (img.w - cw) / 2;
  const int y0 = (img.h - ch) / 2;
  ImageBuffer out(ch, cw, img.c);
  for (int y = 0; y < ch; ++y)
    for (int x = 0; x < cw; ++x)
      for (int k = 0; k < img.c; ++k) out.at(y, x, k) = img.at(y0 + y, x0 + x, k);
  return out;
}

// ---------------------------------------------------------------------------
// Manifest

geometry::Viewpoint DatasetManifest::viewpoint(int index) const {
  const ViewRecord& v = views.at(static_cast<size_t>(index));
  geometry::Viewpoint vp;
  vp.intrinsics = v.intrinsics;
  vp.pose = v.pose;
  vp.width = v.width;
  vp.height = v.height;
  return vp;
}

std::string DatasetManifest::resolve(const std::string& relative) const {
  if (relative.empty()) return "";
  if (base_dir.empty()) return relative;
  return (fs::path(base_dir) / relative).string();
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("manifest parse error: ") + e.what());
  }

  DatasetManifest m;
  m.base_dir = fs::path(path).parent_path().string();
  try {
    m.near = j.at("near").get<double>();
    m.far = j.at("far").get<double>();
    for (const auto& jv : j.at("views")) {
      ViewRecord r;
      r.image = jv.at("image").get<std::string>();
      r.clear_image = jv.value("clear_image", "");
      r.depth = jv.value("depth", "");
      r.intrinsics.fx = jv.at("fx").get<double>();
      r.intrinsics.fy = jv.at("fy").get<double>();
      r.intrinsics.cx = jv.at("cx").get<double>();
      r.intrinsics.cy = jv.at("cy").get<double>();
      r.width = jv.at("width").get<int>();
      r.height = jv.at("height").get<int>();
      const auto rot = jv.at("rotation").get<std::vector<double>>();
      const auto tr = jv.at("translation").get<std::vector<double>>();
      if (rot.size() != 9 || tr.size() != 3)
        throw DomainError("manifest: rotation must have 9 entries and translation 3");
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) r.pose.R(i, k) = rot[static_cast<size_t>(i) * 3 + k];
      for (int i = 0; i < 3; ++i) r.pose.t(i) = tr[static_cast<size_t>(i)];
      m.views.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("manifest field error: ") + e.what());
  }

  if (!(m.near > 0.0) || !(m.far > m.near)) throw DomainError("manifest: need 0 < near < far");
  for (size_t i = 0; i < m.views.size(); ++i) {
    const ViewRecord& v = m.views[i];
    m.viewpoint(static_cast<int>(i)).validate();
    if (!fs::exists(m.resolve(v.image)))
      throw IoError("manifest: missing image file " + m.resolve(v.image));
    if (!v.clear_image.empty() && !fs::exists(m.resolve(v.clear_image)))
      throw IoError("manifest: missing clear image file " + m.resolve(v.clear_image));
    if (!v.depth.empty() && !fs::exists(m.resolve(v.depth)))
      throw IoError("manifest: missing depth file " + m.resolve(v.depth));
  }
  return m;
}

void save_manifest(const std::string& path, const DatasetManifest& manifest) {
  json j;
  j["near"] = manifest.near;
  j["far"] = manifest.far;
  j["views"] = json::array();
  for (const ViewRecord& v : manifest.views) {
    json jv;
    jv["image"] = v.image;
    if (!v.clear_image.empty()) jv["clear_image"] = v.clear_image;
    if (!v.depth.empty()) jv["depth"] = v.depth;
    jv["fx"] = v.intrinsics.fx;
    jv["fy"] = v.intrinsics.fy;
    jv["cx"] = v.intrinsics.cx;
    jv["cy"] = v.intrinsics.cy;
    jv["width"] = v.width;
    jv["height"] = v.height;
    std::vector<double> rot(9), tr(3);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) rot[static_cast<size_t>(i) * 3 + k] = v.pose.R(i, k);
    for (int i = 0; i < 3; ++i) tr[static_cast<size_t>(i)] = v.pose.t(i);
    jv["rotation"] = rot;
    jv["translation"] = tr;
    j["views"].push_back(jv);
  }

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot open manifest for writing: " + tmp);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("manifest write failed: " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("manifest rename failed: " + path + " (" + ec.message() + ")");
}

}  // namespace uwmvs::imaging
