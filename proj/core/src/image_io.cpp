#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include "trlg/image.hpp"

namespace trlg {

namespace {

bool has_suffix(const std::string& s, const char* suffix) {
  std::size_t n = std::strlen(suffix);
  if (s.size() < n) return false;
  std::string tail = s.substr(s.size() - n);
  for (char& c : tail) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return tail == suffix;
}

int read_pnm_int(std::istream& in) {
  // whitespace and '#' comments between header tokens
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
    } else if (!std::isspace(c)) {
      in.unget();
      break;
    }
  }
  int v;
  if (!(in >> v)) throw image_error("pnm: malformed header");
  return v;
}

RgbImage load_pnm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw image_error("cannot open image: " + path);
  char magic[2];
  f.read(magic, 2);
  if (!f || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
    throw image_error("pnm: expected binary P5/P6 magic in " + path);
  int channels = magic[1] == '5' ? 1 : 3;
  int w = read_pnm_int(f);
  int h = read_pnm_int(f);
  int maxval = read_pnm_int(f);
  if (w <= 0 || h <= 0) throw image_error("pnm: bad dimensions in " + path);
  if (maxval != 255) throw image_error("pnm: only 8-bit (maxval 255) supported: " + path);
  f.get();  // single whitespace after maxval
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(w) * h * channels);
  f.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!f) throw image_error("pnm: truncated pixel data in " + path);
  RgbImage img;
  img.planes.assign(channels, Plane(w, h));
  std::size_t i = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c) img.planes[c].at(y, x) = raw[i++];
  return img;
}

void save_pnm(const std::string& path, const RgbImage& img) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw image_error("cannot write image: " + path);
  int channels = img.color() ? 3 : 1;
  f << (channels == 1 ? "P5" : "P6") << "\n"
    << img.width() << " " << img.height() << "\n255\n";
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(img.width()) * img.height() * channels);
  std::size_t i = 0;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < channels; ++c) raw[i++] = img.planes[c].at(y, x);
  f.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!f) throw image_error("failed writing " + path);
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

RgbImage load_png(const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw image_error("cannot open image: " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw image_error("png: allocation failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw image_error("png: failed to decode " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  png_uint_32 w, h;
  int depth, color_type;
  png_get_IHDR(png, info, &w, &h, &depth, &color_type, nullptr, nullptr, nullptr);
  if (depth == 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw image_error("png: only 8-bit depth supported (16-bit would be re-quantized): " + path);
  }
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  int channels = png_get_channels(png, info);
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw image_error("png: unsupported channel layout in " + path);
  }
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(w) * h * channels);
  std::vector<png_bytep> rows(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = raw.data() + static_cast<std::size_t>(y) * w * channels;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  RgbImage img;
  img.planes.assign(channels, Plane(static_cast<int>(w), static_cast<int>(h)));
  std::size_t i = 0;
  for (png_uint_32 y = 0; y < h; ++y)
    for (png_uint_32 x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c) img.planes[c].at(static_cast<int>(y), static_cast<int>(x)) = raw[i++];
  return img;
}

void save_png(const std::string& path, const RgbImage& img) {
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw image_error("cannot write image: " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw image_error("png: allocation failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw image_error("png: failed to encode " + path);
  }
  png_init_io(png, fp.get());
  int channels = img.color() ? 3 : 1;
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()),
               8, channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width()) * channels);
  for (int y = 0; y < img.height(); ++y) {
    std::size_t i = 0;
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < channels; ++c) row[i++] = img.planes[c].at(y, x);
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

RgbImage load_image(const std::string& path) {
  if (has_suffix(path, ".png")) return load_png(path);
  if (has_suffix(path, ".pgm") || has_suffix(path, ".ppm") || has_suffix(path, ".pnm"))
    return load_pnm(path);
  // sniff by magic as a fallback
  std::ifstream f(path, std::ios::binary);
  if (!f) throw image_error("cannot open image: " + path);
  char magic[2] = {};
  f.read(magic, 2);
  f.close();
  if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) return load_pnm(path);
  if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P') return load_png(path);
  throw image_error("unsupported image format (need PNG or binary PGM/PPM): " + path);
}

void save_image(const std::string& path, const RgbImage& img) {
  if (img.planes.empty()) throw image_error("save_image: empty image");
  if (has_suffix(path, ".pgm") || has_suffix(path, ".ppm") || has_suffix(path, ".pnm")) {
    save_pnm(path, img);
    return;
  }
  save_png(path, img);
}

}  // namespace trlg
