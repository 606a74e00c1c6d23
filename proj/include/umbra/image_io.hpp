#pragma once

#include <umbra/image.hpp>

#include <string>

namespace umbra {

// Reads an 8-bit grayscale or RGB PNG, or a P2/P5 PGM, as luminance in
// [0, 1]. RGB is converted with Rec.601 weights. The format is detected
// from the file's magic bytes. Throws std::runtime_error on unreadable
// files, unsupported bit depths, or zero-size images.
Image read_image_gray(const std::string& path);

// Writes values clamped to [0, 1] as an 8-bit grayscale PNG.
void write_png_gray(const std::string& path, const Image& image);

void write_png_rgb(const std::string& path, const RgbImage& image);

}  // namespace umbra
