#include <umbra/target.hpp>

#include <umbra/image_io.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace umbra {

TargetImage load_target(const std::string& path, double threshold,
                        TargetMode mode, bool invert) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must be in (0, 1)");
  }
  Image lum = read_image_gray(path);

  TargetImage out;
  out.mode = mode;
  out.image = Image(lum.width(), lum.height());
  for (std::size_t i = 0; i < lum.size(); ++i) {
    const double v = lum.pixels()[i];
    if (mode == TargetMode::kBinary) {
      const bool fg = (v >= threshold) != invert;
      out.image.pixels()[i] = fg ? 1.0 : 0.0;
    } else {
      out.image.pixels()[i] = invert ? 1.0 - v : v;
    }
  }
  return out;
}

TargetImage resample_target(const TargetImage& target, int width, int height) {
  if (target.width() == width && target.height() == height) return target;

  TargetImage out;
  out.mode = target.mode;
  out.image = Image(width, height);
  const Image& src = target.image;

  const double sx = static_cast<double>(src.width()) / width;
  const double sy = static_cast<double>(src.height()) / height;

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double u = (x + 0.5) * sx;
      const double v = (y + 0.5) * sy;
      if (target.mode == TargetMode::kBinary) {
        const int ix = std::min(src.width() - 1, static_cast<int>(u));
        const int iy = std::min(src.height() - 1, static_cast<int>(v));
        out.image.at(x, y) = src.at(ix, iy);
      } else {
        // Bilinear over source pixel centers, clamped at the border.
        const double gu = std::clamp(u - 0.5, 0.0, src.width() - 1.0);
        const double gv = std::clamp(v - 0.5, 0.0, src.height() - 1.0);
        const int x0 = static_cast<int>(gu);
        const int y0 = static_cast<int>(gv);
        const int x1 = std::min(x0 + 1, src.width() - 1);
        const int y1 = std::min(y0 + 1, src.height() - 1);
        const double fx = gu - x0;
        const double fy = gv - y0;
        out.image.at(x, y) =
            (1 - fy) * ((1 - fx) * src.at(x0, y0) + fx * src.at(x1, y0)) +
            fy * ((1 - fx) * src.at(x0, y1) + fx * src.at(x1, y1));
      }
    }
  }
  return out;
}

}  // namespace umbra
