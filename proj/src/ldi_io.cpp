#include "ldi3d/ldi_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace ldi3d {
namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
std::uint16_t get_u16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }
std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> encode_ldi(const Ldi& ldi) {
  if (ldi.width() > 0xFFFF || ldi.height() > 0xFFFF) throw InputError("LDI too large for u16 positions");
  std::vector<PixelId> ids = ldi.pixel_ids();
  std::vector<std::uint32_t> dense(ldi.id_bound(), kNoPixel);
  for (std::size_t i = 0; i < ids.size(); ++i) dense[ids[i]] = static_cast<std::uint32_t>(i);

  std::vector<std::uint8_t> out;
  out.reserve(kLdiHeaderBytes + kLdiRecordBytes * ids.size());
  for (char c : {'L', 'D', 'I', '1'}) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, static_cast<std::uint32_t>(ldi.width()));
  put_u32(out, static_cast<std::uint32_t>(ldi.height()));
  put_u32(out, static_cast<std::uint32_t>(ids.size()));
  for (PixelId id : ids) {
    const LdiPixel& p = ldi.pixel(id);
    put_u16(out, static_cast<std::uint16_t>(p.pos.x));
    put_u16(out, static_cast<std::uint16_t>(p.pos.y));
    out.push_back(p.color.r);
    out.push_back(p.color.g);
    out.push_back(p.color.b);
    put_u32(out, std::bit_cast<std::uint32_t>(p.disparity));
    for (Dir d : kDirs) put_u32(out, p.has_link(d) ? dense[p.link(d)] : kNoPixel);
  }
  return out;
}

Ldi decode_ldi(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kLdiHeaderBytes || std::memcmp(bytes.data(), "LDI1", 4) != 0)
    throw InputError("not an LDI1 container");
  std::uint32_t w = get_u32(bytes.data() + 4);
  std::uint32_t h = get_u32(bytes.data() + 8);
  std::uint32_t n = get_u32(bytes.data() + 12);
  if (w > 0xFFFF || h > 0xFFFF) throw InputError("LDI dimensions out of range");
  if (bytes.size() != kLdiHeaderBytes + kLdiRecordBytes * static_cast<std::size_t>(n))
    throw InputError("LDI container size does not match pixel count");

  Ldi ldi(static_cast<int>(w), static_cast<int>(h));
  std::vector<std::array<std::uint32_t, 4>> links(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint8_t* r = bytes.data() + kLdiHeaderBytes + kLdiRecordBytes * i;
    Pos pos{get_u16(r), get_u16(r + 2)};
    if (pos.x >= static_cast<int>(w) || pos.y >= static_cast<int>(h)) throw InputError("LDI pixel out of bounds");
    Rgb8 c{r[4], r[5], r[6]};
    float disp = std::bit_cast<float>(get_u32(r + 7));
    if (!std::isfinite(disp)) throw InputError("LDI pixel has non-finite disparity");
    ldi.add_pixel(pos, c, disp);
    for (int k = 0; k < 4; ++k) links[i][k] = get_u32(r + 11 + 4 * k);
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (Dir d : kDirs) {
      std::uint32_t j = links[i][static_cast<int>(d)];
      if (j == kNoPixel) continue;
      if (j >= n || links[j][static_cast<int>(opposite(d))] != i) throw InputError("LDI container has asymmetric links");
      if (i < j) {
        try {
          ldi.link(i, d, j);
        } catch (const ConsistencyError& e) {
          throw InputError(std::string("LDI container has invalid link: ") + e.what());
        }
      }
    }
  }
  return ldi;
}

void write_ldi(const std::filesystem::path& path, const Ldi& ldi) {
  auto bytes = encode_ldi(ldi);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("write failed: " + path.string());
}

Ldi read_ldi(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_ldi(bytes);
}

}  // namespace ldi3d
