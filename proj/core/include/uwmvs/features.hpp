#pragma once

#include <span>
#include <vector>

#include "uwmvs/array.hpp"
#include "uwmvs/geometry.hpp"

namespace uwmvs::features {

// Deterministic multi-scale filter-bank pyramid. Channel counts and spatial
// shapes match the cascade contract: 32 channels at 1/4 resolution, 16 at
// 1/2, 8 at full resolution.
//
// Channel layout (sigma1 = 1.0, sigma2 = 2.0; orientations 0/45/90/135 deg):
//   level3 (8):  R, G, B, Lum, D1(sigma1) x 4                      on Lum
//   level2 (16): + D1(sigma2) x 4, D2(sigma1) x 4                  on Lum
//   level1 (32): + D2(sigma2) x 4, D1(sigma1) x 4 on each of R,G,B
// D1/D2 are steered first/second-order Gaussian derivatives; second-order
// responses are two first-order passes, so constant inputs map to exact
// zeros. Each level is computed on the input downsampled by Gaussian blur
// (sigma 1.0) followed by 2x decimation per level.
struct FeaturePyramid {
  MapF level1;  // H/4 x W/4 x 32
  MapF level2;  // H/2 x W/2 x 16
  MapF level3;  // H   x W   x 8
  int pad_x = 0, pad_y = 0;  // mirror padding applied to reach divisibility by 4
};

FeaturePyramid extract_pyramid(const MapF& rgb);

// Bilinear feature lookup at each coordinate. `out` receives
// coords.size() * map.c floats; out-of-bounds coordinates produce zeros with
// valid = 0.
void sample_features(const MapF& map, std::span<const geometry::Vec2> coords, float* out,
                     uint8_t* valid);

// Convenience overload for small queries.
std::vector<std::pair<std::vector<float>, bool>> sample_features(
    const MapF& map, std::span<const geometry::Vec2> coords);

// Per-pixel pooled statistics over views: concat(mean, population variance)
// of the per-view feature vectors, computed over valid views only. A pixel
// with zero valid views stays zeroed with valid = 0.
struct PooledFeatures {
  int n_px = 0, dim = 0;         // dim = input feature dimension
  std::vector<float> data;       // n_px x 2*dim, mean then variance
  std::vector<uint8_t> valid;    // n_px
};
PooledFeatures pool_views(const float* feats /* [n_views][n_px][dim] */, const uint8_t* valid,
                          int n_views, int n_px, int dim);

// Mean over valid views of the warped feature volumes; voxels with zero valid
// views stay zero.
VolumeF average_volumes(std::span<const VolumeF> volumes, std::span<const VolumeU8> masks);

// Trilinear lookup of vol (d x h x w x c) at spatial position (x, y) in the
// volume's pixel grid and at metric depth `depth`. `planes` holds the
// per-pixel hypothesis depths (h x w x d, or 1 x 1 x d for a uniform sweep).
// The depth coordinate is resolved per spatial corner: each corner linearly
// interpolates its own pair of bracketing planes, then the four corners are
// combined bilinearly. Depths outside a corner's plane range clamp to the
// boundary plane; the return value is false when any corner clamped or (x, y)
// left the grid (out still receives the clamped sample when spatially valid).
bool sample_grid_feature(const VolumeF& vol, const MapF& planes, double x, double y, double depth,
                         float* out);

}  // namespace uwmvs::features
