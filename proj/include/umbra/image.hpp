#pragma once

#include <cstdint>
#include <vector>

namespace umbra {

// Single-channel image of doubles, row-major, row 0 at the top.
class Image {
 public:
  Image() = default;
  Image(int width, int height, double value = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }
  std::size_t size() const { return pixels_.size(); }

  double at(int x, int y) const { return pixels_[idx(x, y)]; }
  double& at(int x, int y) { return pixels_[idx(x, y)]; }

  const std::vector<double>& pixels() const { return pixels_; }
  std::vector<double>& pixels() { return pixels_; }

  bool same_size(const Image& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }

 private:
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> pixels_;
};

// 8-bit RGB image, used for the inconsistency overlays.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // 3 bytes per pixel, row-major

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(3u * w * h, 0) {}

  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const std::size_t i = 3u * (static_cast<std::size_t>(y) * width + x);
    data[i] = r;
    data[i + 1] = g;
    data[i + 2] = b;
  }
};

}  // namespace umbra
