#pragma once

#include <umbra/image.hpp>

#include <string>

namespace umbra {

enum class TargetMode { kBinary, kGrayscale };

// A target shadow image. Foreground (shadow) pixels carry value 1
// regardless of whether the source art was black-on-white; the invert
// flag at load time resolves the convention.
struct TargetImage {
  Image image;
  TargetMode mode = TargetMode::kBinary;

  int width() const { return image.width(); }
  int height() const { return image.height(); }
};

// Loads and binarizes (or keeps grayscale) a PNG/PGM target.
// Binary mode: value = 1 iff luminance >= threshold, XOR invert.
// Grayscale mode: value = luminance, optionally inverted.
TargetImage load_target(const std::string& path, double threshold,
                        TargetMode mode, bool invert);

// Resamples to the render resolution: nearest-neighbor for binary targets,
// bilinear for grayscale.
TargetImage resample_target(const TargetImage& target, int width, int height);

}  // namespace umbra
