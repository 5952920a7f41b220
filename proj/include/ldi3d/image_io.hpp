#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ldi3d/image.hpp"

namespace ldi3d {

/// Floating-point image as stored in a PFM file. Rows are top-to-bottom,
/// channels interleaved. channels is 1 ("Pf") or 3 ("PF").
struct PfmImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<float> data;
  friend bool operator==(const PfmImage&, const PfmImage&) = default;
};

/// Any 8- or 16-bit PNG, expanded to RGB8. Alpha is dropped, gray is replicated.
RgbImage read_png_rgb(const std::filesystem::path& path);

/// Single-channel PNG as raw sample values (8- or 16-bit, widened to uint16).
Plane<std::uint16_t> read_png_gray16(const std::filesystem::path& path);

void write_png_rgb(const std::filesystem::path& path, const RgbImage& img);
void write_png_gray8(const std::filesystem::path& path, const Mask& img);
void write_png_gray16(const std::filesystem::path& path, const Plane<std::uint16_t>& img);

PfmImage read_pfm(const std::filesystem::path& path);
/// Little-endian, scale -1, bottom-to-top rows on disk.
void write_pfm(const std::filesystem::path& path, const PfmImage& img);

PfmImage to_pfm(const Plane<float>& plane);
Plane<float> pfm_to_plane(const PfmImage& img);

}  // namespace ldi3d
