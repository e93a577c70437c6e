#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace uwmvs {

// Row-major H x W x C float map. The channel is the innermost stride, so a
// pixel's channels are contiguous. Used for images, feature maps and other
// per-pixel payloads (32-bit per the payload precision convention).
struct MapF {
  int h = 0, w = 0, c = 1;
  std::vector<float> data;

  MapF() = default;
  MapF(int h_, int w_, int c_, float fill = 0.0f)
      : h(h_), w(w_), c(c_), data(static_cast<size_t>(h_) * w_ * c_, fill) {}

  float& at(int y, int x, int ch = 0) {
    assert(y >= 0 && y < h && x >= 0 && x < w && ch >= 0 && ch < c);
    return data[(static_cast<size_t>(y) * w + x) * c + ch];
  }
  float at(int y, int x, int ch = 0) const {
    assert(y >= 0 && y < h && x >= 0 && x < w && ch >= 0 && ch < c);
    return data[(static_cast<size_t>(y) * w + x) * c + ch];
  }
  const float* pixel(int y, int x) const { return &data[(static_cast<size_t>(y) * w + x) * c]; }
  float* pixel(int y, int x) { return &data[(static_cast<size_t>(y) * w + x) * c]; }

  size_t size() const { return data.size(); }
  bool empty() const { return data.empty(); }
  bool same_shape(const MapF& o) const { return h == o.h && w == o.w && c == o.c; }
};

// Double-precision variant for the synthetic oracle, which must stay exact
// against the per-pixel physics.
struct MapD {
  int h = 0, w = 0, c = 1;
  std::vector<double> data;

  MapD() = default;
  MapD(int h_, int w_, int c_, double fill = 0.0)
      : h(h_), w(w_), c(c_), data(static_cast<size_t>(h_) * w_ * c_, fill) {}

  double& at(int y, int x, int ch = 0) { return data[(static_cast<size_t>(y) * w + x) * c + ch]; }
  double at(int y, int x, int ch = 0) const { return data[(static_cast<size_t>(y) * w + x) * c + ch]; }

  MapF to_float() const {
    MapF out(h, w, c);
    for (size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<float>(data[i]);
    return out;
  }
};

struct MaskU8 {
  int h = 0, w = 0;
  std::vector<uint8_t> data;

  MaskU8() = default;
  MaskU8(int h_, int w_, uint8_t fill = 0) : h(h_), w(w_), data(static_cast<size_t>(h_) * w_, fill) {}

  uint8_t& at(int y, int x) { return data[static_cast<size_t>(y) * w + x]; }
  uint8_t at(int y, int x) const { return data[static_cast<size_t>(y) * w + x]; }
};

// D x H x W x C volume (plane-major). One feature map per depth plane.
struct VolumeF {
  int d = 0, h = 0, w = 0, c = 1;
  std::vector<float> data;

  VolumeF() = default;
  VolumeF(int d_, int h_, int w_, int c_, float fill = 0.0f)
      : d(d_), h(h_), w(w_), c(c_), data(static_cast<size_t>(d_) * h_ * w_ * c_, fill) {}

  float& at(int k, int y, int x, int ch = 0) {
    return data[((static_cast<size_t>(k) * h + y) * w + x) * c + ch];
  }
  float at(int k, int y, int x, int ch = 0) const {
    return data[((static_cast<size_t>(k) * h + y) * w + x) * c + ch];
  }
  const float* voxel(int k, int y, int x) const {
    return &data[((static_cast<size_t>(k) * h + y) * w + x) * c];
  }
  float* voxel(int k, int y, int x) {
    return &data[((static_cast<size_t>(k) * h + y) * w + x) * c];
  }
};

// D x H x W byte volume (per-voxel flags or counts).
struct VolumeU8 {
  int d = 0, h = 0, w = 0;
  std::vector<uint8_t> data;

  VolumeU8() = default;
  VolumeU8(int d_, int h_, int w_, uint8_t fill = 0)
      : d(d_), h(h_), w(w_), data(static_cast<size_t>(d_) * h_ * w_, fill) {}

  uint8_t& at(int k, int y, int x) { return data[(static_cast<size_t>(k) * h + y) * w + x]; }
  uint8_t at(int k, int y, int x) const { return data[(static_cast<size_t>(k) * h + y) * w + x]; }
};

}  // namespace uwmvs
