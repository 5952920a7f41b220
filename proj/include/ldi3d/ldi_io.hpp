#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ldi3d/ldi.hpp"

namespace ldi3d {

// Binary LDI container, version 1. All integers little-endian.
//
//   offset  size  field
//   0       4     magic "LDI1"
//   4       4     width  (u32)
//   8       4     height (u32)
//   12      4     pixel count N (u32)
//   16      27*N  pixel records
//
// Pixel record (27 bytes, packed):
//   x u16, y u16, r u8, g u8, b u8, disparity f32 (IEEE-754 bits),
//   links u32 x4 in order left, right, up, down.
//
// Records are the live pixels in increasing id order. Links hold record
// indices, 0xFFFFFFFF for "no neighbor". Reading assigns ids 0..N-1, so a
// compacted LDI round-trips bit-exactly.
inline constexpr std::size_t kLdiHeaderBytes = 16;
inline constexpr std::size_t kLdiRecordBytes = 27;

std::vector<std::uint8_t> encode_ldi(const Ldi& ldi);
Ldi decode_ldi(const std::vector<std::uint8_t>& bytes);

void write_ldi(const std::filesystem::path& path, const Ldi& ldi);
Ldi read_ldi(const std::filesystem::path& path);

}  // namespace ldi3d
