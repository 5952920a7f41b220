#include "ldi3d/image_io.hpp"

#include <png.h>

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace ldi3d {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw InputError("cannot open " + path.string());
  return f;
}

[[noreturn]] void png_error_fn(png_structp, png_const_charp msg) { throw InputError(std::string("png: ") + msg); }
void png_warning_fn(png_structp, png_const_charp) {}

// Decoded PNG in its native layout after palette/low-bit expansion.
struct RawPng {
  int width = 0, height = 0, channels = 0, bit_depth = 0;
  std::vector<std::uint8_t> bytes;  // row-major; 16-bit samples are big-endian pairs
};

RawPng decode_png(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw InputError("not a PNG file: " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warning_fn);
  if (!png) throw InputError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_read_struct(p, i, nullptr); }
  } guard{&png, &info};

  png_init_io(png, f.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  int color_type = png_get_color_type(png, info);
  int bit_depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_read_update_info(png, info);

  RawPng out;
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.channels = png_get_channels(png, info);
  out.bit_depth = png_get_bit_depth(png, info);
  std::size_t rowbytes = png_get_rowbytes(png, info);
  out.bytes.resize(rowbytes * out.height);
  std::vector<png_bytep> rows(out.height);
  for (int y = 0; y < out.height; ++y) rows[y] = out.bytes.data() + rowbytes * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  return out;
}

void encode_png(const std::filesystem::path& path, int width, int height, int color_type, int bit_depth,
                const std::uint8_t* bytes, std::size_t rowbytes) {
  FilePtr f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warning_fn);
  if (!png) throw InputError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_write_struct(p, i); }
  } guard{&png, &info};

  png_init_io(png, f.get());
  png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) png_write_row(png, const_cast<png_bytep>(bytes + rowbytes * y));
  png_write_end(png, nullptr);
}

std::uint16_t sample(const RawPng& raw, std::size_t i) {
  if (raw.bit_depth == 16) return static_cast<std::uint16_t>((raw.bytes[2 * i] << 8) | raw.bytes[2 * i + 1]);
  return raw.bytes[i];
}

}  // namespace

RgbImage read_png_rgb(const std::filesystem::path& path) {
  RawPng raw = decode_png(path);
  RgbImage img(raw.width, raw.height);
  for (int y = 0; y < raw.height; ++y) {
    for (int x = 0; x < raw.width; ++x) {
      std::size_t base = (static_cast<std::size_t>(y) * raw.width + x) * raw.channels;
      auto to8 = [&](std::size_t i) -> std::uint8_t {
        std::uint16_t v = sample(raw, i);
        return raw.bit_depth == 16 ? static_cast<std::uint8_t>(v >> 8) : static_cast<std::uint8_t>(v);
      };
      Rgb8 c;
      if (raw.channels >= 3) {
        c = {to8(base), to8(base + 1), to8(base + 2)};
      } else {
        std::uint8_t g = to8(base);
        c = {g, g, g};
      }
      img.at(x, y) = c;
    }
  }
  return img;
}

Plane<std::uint16_t> read_png_gray16(const std::filesystem::path& path) {
  RawPng raw = decode_png(path);
  if (raw.channels != 1 && raw.channels != 2)
    throw InputError("expected a grayscale PNG: " + path.string());
  Plane<std::uint16_t> img(raw.width, raw.height);
  for (int y = 0; y < raw.height; ++y)
    for (int x = 0; x < raw.width; ++x)
      img.at(x, y) = sample(raw, (static_cast<std::size_t>(y) * raw.width + x) * raw.channels);
  return img;
}

void write_png_rgb(const std::filesystem::path& path, const RgbImage& img) {
  std::vector<std::uint8_t> bytes(img.size() * 3);
  for (std::size_t i = 0; i < img.size(); ++i) {
    bytes[3 * i] = img.data[i].r;
    bytes[3 * i + 1] = img.data[i].g;
    bytes[3 * i + 2] = img.data[i].b;
  }
  encode_png(path, img.width, img.height, PNG_COLOR_TYPE_RGB, 8, bytes.data(), img.width * 3);
}

void write_png_gray8(const std::filesystem::path& path, const Mask& img) {
  encode_png(path, img.width, img.height, PNG_COLOR_TYPE_GRAY, 8, img.data.data(), img.width);
}

void write_png_gray16(const std::filesystem::path& path, const Plane<std::uint16_t>& img) {
  std::vector<std::uint8_t> bytes(img.size() * 2);
  for (std::size_t i = 0; i < img.size(); ++i) {
    bytes[2 * i] = static_cast<std::uint8_t>(img.data[i] >> 8);
    bytes[2 * i + 1] = static_cast<std::uint8_t>(img.data[i] & 0xFF);
  }
  encode_png(path, img.width, img.height, PNG_COLOR_TYPE_GRAY, 16, bytes.data(), img.width * 2);
}

PfmImage read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::string magic;
  PfmImage img;
  double scale = 0;
  in >> magic >> img.width >> img.height >> scale;
  if (!in || (magic != "PF" && magic != "Pf") || img.width < 0 || img.height < 0 || scale == 0)
    throw InputError("bad PFM header: " + path.string());
  in.get();  // single whitespace byte before raster
  img.channels = magic == "PF" ? 3 : 1;
  std::size_t row = static_cast<std::size_t>(img.width) * img.channels;
  img.data.resize(row * img.height);
  bool file_le = scale < 0;
  bool swap = file_le != (std::endian::native == std::endian::little);
  std::vector<std::uint32_t> buf(row);
  for (int y = img.height - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(row * 4));
    if (!in) throw InputError("truncated PFM raster: " + path.string());
    for (std::size_t i = 0; i < row; ++i) {
      std::uint32_t w = swap ? __builtin_bswap32(buf[i]) : buf[i];
      img.data[y * row + i] = std::bit_cast<float>(w);
    }
  }
  return img;
}

void write_pfm(const std::filesystem::path& path, const PfmImage& img) {
  if (img.channels != 1 && img.channels != 3) throw InputError("PFM supports 1 or 3 channels");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << (img.channels == 3 ? "PF" : "Pf") << '\n' << img.width << ' ' << img.height << '\n' << "-1.0" << '\n';
  std::size_t row = static_cast<std::size_t>(img.width) * img.channels;
  std::vector<std::uint32_t> buf(row);
  for (int y = img.height - 1; y >= 0; --y) {
    for (std::size_t i = 0; i < row; ++i) {
      std::uint32_t w = std::bit_cast<std::uint32_t>(img.data[y * row + i]);
      buf[i] = std::endian::native == std::endian::little ? w : __builtin_bswap32(w);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(row * 4));
  }
  if (!out) throw InputError("write failed: " + path.string());
}

PfmImage to_pfm(const Plane<float>& plane) {
  return PfmImage{plane.width, plane.height, 1, plane.data};
}

Plane<float> pfm_to_plane(const PfmImage& img) {
  if (img.channels != 1) throw InputError("expected single-channel PFM");
  Plane<float> p(img.width, img.height);
  p.data = img.data;
  return p;
}

}  // namespace ldi3d
