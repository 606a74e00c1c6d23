#include <umbra/image.hpp>

#include <stdexcept>

namespace umbra {

Image::Image(int width, int height, double value)
    : width_(width),
      height_(height),
      pixels_(static_cast<std::size_t>(width) * height, value) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("image dimensions must be >= 1");
  }
}

}  // namespace umbra
