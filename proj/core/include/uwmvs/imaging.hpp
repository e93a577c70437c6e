#pragma once

#include <array>
#include <string>
#include <vector>

#include "uwmvs/array.hpp"
#include "uwmvs/errors.hpp"
#include "uwmvs/geometry.hpp"

namespace uwmvs::imaging {

// Linear-light float image, 1 or 3 channels, values nominally in [0, 1].
using ImageBuffer = MapF;

// PNG I/O. 16-bit files carry linear-light values; 8-bit files carry the
// standard sRGB transfer curve, applied on write and removed on read.
ImageBuffer read_image(const std::string& path);
void write_image(const std::string& path, const ImageBuffer& img, int bit_depth = 16);
void write_image(const std::string& path, const MapD& img, int bit_depth = 16);

double srgb_encode(double linear);
double srgb_decode(double encoded);

// Grayscale PFM, little-endian (scale header -1.0), bottom-up row order.
// Invalid depths are encoded as 0.
MapF read_depth(const std::string& path);
void write_depth(const std::string& path, const MapF& depth);

// 10 * log10(peak^2 / MSE). Identical inputs report +infinity.
double psnr(const ImageBuffer& a, const ImageBuffer& b, double peak = 1.0);

// Mean SSIM over pixels and channels, 11x11 Gaussian window (sigma 1.5),
// k1 = 0.01, k2 = 0.03, dynamic range 1. Same window as the D-SSIM loss.
double ssim(const ImageBuffer& a, const ImageBuffer& b);

// The 11-tap separable window shared by ssim() and the D-SSIM training loss.
std::array<double, 11> ssim_window();

// Centered window covering 80% of each dimension (floored).
ImageBuffer central_crop_eval_region(const ImageBuffer& img);

struct ViewRecord {
  std::string image;        // path relative to the manifest directory
  std::string clear_image;  // optional, "" when absent
  std::string depth;        // optional, "" when absent
  geometry::CameraIntrinsics intrinsics;
  geometry::CameraPose pose;
  int width = 0, height = 0;
};

struct DatasetManifest {
  std::vector<ViewRecord> views;
  double near = 0.0, far = 0.0;
  std::string base_dir;  // directory of the manifest file, set on load

  geometry::Viewpoint viewpoint(int index) const;
  std::string resolve(const std::string& relative) const;
};

// Loads and validates a manifest: referenced image files must exist and every
// pose must satisfy the camera pose invariants.
DatasetManifest load_manifest(const std::string& path);

// Writes atomically (temp file + rename).
void save_manifest(const std::string& path, const DatasetManifest& manifest);

}  // namespace uwmvs::imaging
