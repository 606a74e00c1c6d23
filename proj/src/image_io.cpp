#include <umbra/image_io.hpp>

#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace umbra {

namespace {

constexpr double kR601 = 0.299;
constexpr double kG601 = 0.587;
constexpr double kB601 = 0.114;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

Image read_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw std::runtime_error("cannot open image file: " + path);

  png_byte sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw std::runtime_error("not a PNG file: " + path);
  }

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("failed to decode PNG: " + path);
  }

  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  if (width == 0 || height == 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("zero-size PNG: " + path);
  }
  if (bit_depth > 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("unsupported PNG bit depth (want 8-bit): " + path);
  }

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  std::vector<png_byte> row(png_get_rowbytes(png, info));

  Image out(static_cast<int>(width), static_cast<int>(height));
  for (png_uint_32 y = 0; y < height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (png_uint_32 x = 0; x < width; ++x) {
      double lum;
      if (channels >= 3) {
        lum = (kR601 * row[channels * x] + kG601 * row[channels * x + 1] +
               kB601 * row[channels * x + 2]) /
              255.0;
      } else {
        lum = row[channels * x] / 255.0;
      }
      out.at(static_cast<int>(x), static_cast<int>(y)) = lum;
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

// Next whitespace-delimited token, skipping '#' comments to end of line.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
    } else if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#') {
        tok.push_back(static_cast<char>(in.get()));
      }
      return tok;
    }
  }
  throw std::runtime_error("truncated PGM header");
}

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open image file: " + path);

  const std::string magic = pgm_token(in);
  if (magic != "P2" && magic != "P5") {
    throw std::runtime_error("unsupported PGM magic '" + magic + "': " + path);
  }
  const int width = std::stoi(pgm_token(in));
  const int height = std::stoi(pgm_token(in));
  const int maxval = std::stoi(pgm_token(in));
  if (width < 1 || height < 1) {
    throw std::runtime_error("zero-size PGM: " + path);
  }
  if (maxval < 1 || maxval > 255) {
    throw std::runtime_error("unsupported PGM bit depth (want maxval <= 255): " +
                             path);
  }

  Image out(width, height);
  if (magic == "P5") {
    in.get();  // single whitespace after maxval
    std::vector<unsigned char> buf(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size()) {
      throw std::runtime_error("truncated PGM data: " + path);
    }
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        out.at(x, y) = buf[static_cast<std::size_t>(y) * width + x] /
                       static_cast<double>(maxval);
      }
    }
  } else {
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        out.at(x, y) = std::stoi(pgm_token(in)) / static_cast<double>(maxval);
      }
    }
  }
  return out;
}

void write_png(const std::string& path, int width, int height, int color_type,
               const std::vector<png_byte>& data) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw std::runtime_error("cannot write image file: " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            nullptr, nullptr);
  if (!png) throw std::runtime_error("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("failed to encode PNG: " + path);
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const int stride = (color_type == PNG_COLOR_TYPE_RGB) ? 3 * width : width;
  for (int y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_byte*>(
                           &data[static_cast<std::size_t>(y) * stride]));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

Image read_image_gray(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw std::runtime_error("cannot open image file: " + path);
  char magic[2] = {0, 0};
  probe.read(magic, 2);
  probe.close();
  if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) {
    return read_pgm(path);
  }
  return read_png(path);
}

void write_png_gray(const std::string& path, const Image& image) {
  std::vector<png_byte> bytes(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const double v = std::min(1.0, std::max(0.0, image.pixels()[i]));
    bytes[i] = static_cast<png_byte>(v * 255.0 + 0.5);
  }
  write_png(path, image.width(), image.height(), PNG_COLOR_TYPE_GRAY, bytes);
}

void write_png_rgb(const std::string& path, const RgbImage& image) {
  write_png(path, image.width, image.height, PNG_COLOR_TYPE_RGB, image.data);
}

}  // namespace umbra
