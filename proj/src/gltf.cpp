#include "ldi3d/gltf.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>

namespace ldi3d {
namespace {

using json = nlohmann::ordered_json;

constexpr std::uint32_t kMagic = 0x46546C67;  // "glTF"
constexpr std::uint32_t kJsonChunk = 0x4E4F534A;
constexpr std::uint32_t kBinChunk = 0x004E4942;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& out, float f) {
  std::uint32_t u;
  std::memcpy(&u, &f, 4);
  put_u32(out, u);
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

float get_f32(const std::uint8_t* p) {
  std::uint32_t u = get_u32(p);
  float f;
  std::memcpy(&f, &u, 4);
  return f;
}

}  // namespace

std::vector<std::uint8_t> encode_glb(const TexturedMesh& mesh) {
  json doc;
  doc["asset"] = {{"version", "2.0"}, {"generator", "ldi3d"}};
  doc["scene"] = 0;
  std::vector<std::uint8_t> bin;

  if (mesh.vertices.empty() || mesh.triangles.empty()) {
    doc["scenes"] = json::array({json{{"nodes", json::array()}}});
  } else {
    const std::size_t nv = mesh.vertices.size();
    std::array<float, 3> lo{}, hi{};
    lo.fill(std::numeric_limits<float>::infinity());
    hi.fill(-std::numeric_limits<float>::infinity());
    for (const auto& v : mesh.vertices) {
      const float p[3] = {v.position[0], -v.position[1], -v.position[2]};
      for (int i = 0; i < 3; ++i) {
        put_f32(bin, p[i]);
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    }
    for (const auto& v : mesh.vertices) {
      put_f32(bin, v.color.r / 255.f);
      put_f32(bin, v.color.g / 255.f);
      put_f32(bin, v.color.b / 255.f);
    }
    for (const auto& t : mesh.triangles)
      for (auto i : t) put_u32(bin, i);
    const std::size_t pos_bytes = nv * 12, idx_bytes = mesh.triangles.size() * 12;

    doc["scenes"] = json::array({json{{"nodes", {0}}}});
    doc["nodes"] = json::array({json{{"mesh", 0}}});
    doc["meshes"] = json::array({json{
        {"primitives", json::array({json{{"attributes", {{"POSITION", 0}, {"COLOR_0", 1}}}, {"indices", 2}, {"mode", 4}}})}}});
    doc["buffers"] = json::array({json{{"byteLength", bin.size()}}});
    doc["bufferViews"] = json::array({
        json{{"buffer", 0}, {"byteOffset", 0}, {"byteLength", pos_bytes}, {"target", 34962}},
        json{{"buffer", 0}, {"byteOffset", pos_bytes}, {"byteLength", pos_bytes}, {"target", 34962}},
        json{{"buffer", 0}, {"byteOffset", 2 * pos_bytes}, {"byteLength", idx_bytes}, {"target", 34963}},
    });
    doc["accessors"] = json::array({
        json{{"bufferView", 0}, {"componentType", 5126}, {"count", nv}, {"type", "VEC3"},
             {"min", {lo[0], lo[1], lo[2]}}, {"max", {hi[0], hi[1], hi[2]}}},
        json{{"bufferView", 1}, {"componentType", 5126}, {"count", nv}, {"type", "VEC3"}},
        json{{"bufferView", 2}, {"componentType", 5125}, {"count", mesh.triangles.size() * 3}, {"type", "SCALAR"}},
    });
  }

  std::string text = doc.dump();
  while (text.size() % 4) text.push_back(' ');
  while (bin.size() % 4) bin.push_back(0);
  std::vector<std::uint8_t> out;
  const std::size_t total = 12 + 8 + text.size() + (bin.empty() ? 0 : 8 + bin.size());
  put_u32(out, kMagic);
  put_u32(out, 2);
  put_u32(out, static_cast<std::uint32_t>(total));
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  put_u32(out, kJsonChunk);
  out.insert(out.end(), text.begin(), text.end());
  if (!bin.empty()) {
    put_u32(out, static_cast<std::uint32_t>(bin.size()));
    put_u32(out, kBinChunk);
    out.insert(out.end(), bin.begin(), bin.end());
  }
  return out;
}

TexturedMesh decode_glb(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 20) throw InputError("glb: file too short");
  if (get_u32(bytes.data()) != kMagic) throw InputError("glb: bad magic");
  if (get_u32(bytes.data() + 4) != 2) throw InputError("glb: unsupported version");
  if (get_u32(bytes.data() + 8) > bytes.size()) throw InputError("glb: truncated file");
  const std::size_t json_len = get_u32(bytes.data() + 12);
  if (get_u32(bytes.data() + 16) != kJsonChunk || 20 + json_len > bytes.size()) throw InputError("glb: bad JSON chunk");
  json doc;
  try {
    doc = json::parse(bytes.begin() + 20, bytes.begin() + 20 + static_cast<std::ptrdiff_t>(json_len));
  } catch (const std::exception& e) {
    throw InputError(std::string("glb: ") + e.what());
  }
  std::span<const std::uint8_t> bin;
  std::size_t off = 20 + json_len;
  if (off + 8 <= bytes.size()) {
    std::size_t len = get_u32(bytes.data() + off);
    if (get_u32(bytes.data() + off + 4) != kBinChunk || off + 8 + len > bytes.size())
      throw InputError("glb: bad BIN chunk");
    bin = std::span<const std::uint8_t>(bytes.data() + off + 8, len);
  }

  TexturedMesh mesh;
  if (!doc.contains("meshes") || doc["meshes"].empty()) return mesh;
  try {
    const json& prim = doc["meshes"][0]["primitives"].at(0);
    if (prim.value("mode", 4) != 4) throw InputError("glb: only triangle primitives are supported");
    if (!prim["attributes"].contains("COLOR_0")) throw InputError("glb: missing vertex colors");

    struct View {
      const std::uint8_t* data;
      std::size_t count, stride;
      int component;
      bool normalized;
    };
    auto accessor = [&](int index, int comps) {
      const json& acc = doc["accessors"].at(index);
      const json& bv = doc["bufferViews"].at(acc.at("bufferView").get<int>());
      const int component = acc.at("componentType").get<int>();
      const std::size_t csize = component == 5126 || component == 5125 ? 4 : component == 5123 ? 2 : 1;
      const std::size_t count = acc.at("count").get<std::size_t>();
      const std::size_t start = bv.value("byteOffset", std::size_t{0}) + acc.value("byteOffset", std::size_t{0});
      const std::size_t stride = bv.value("byteStride", csize * comps);
      if (count > 0 && start + (count - 1) * stride + csize * comps > bin.size()) throw InputError("glb: accessor out of range");
      return View{bin.data() + start, count, stride, component, acc.value("normalized", false)};
    };
    auto read = [](const View& v, std::size_t i, int c) -> double {
      const std::uint8_t* p = v.data + i * v.stride;
      switch (v.component) {
        case 5126: return get_f32(p + 4 * c);
        case 5125: return get_u32(p + 4 * c);
        case 5123: return double(p[2 * c] | p[2 * c + 1] << 8) / (v.normalized ? 65535.0 : 1.0);
        case 5121: return double(p[c]) / (v.normalized ? 255.0 : 1.0);
        default: throw InputError("glb: unsupported component type");
      }
    };
    View pos = accessor(prim["attributes"]["POSITION"].get<int>(), 3);
    View col = accessor(prim["attributes"]["COLOR_0"].get<int>(), 3);
    if (pos.component != 5126 || col.count != pos.count) throw InputError("glb: unsupported vertex layout");
    mesh.vertices.resize(pos.count);
    auto q = [](double f) { return static_cast<std::uint8_t>(std::clamp(std::lround(f * 255.0), 0L, 255L)); };
    for (std::size_t i = 0; i < pos.count; ++i) {
      auto& v = mesh.vertices[i];
      v.position = {float(read(pos, i, 0)), -float(read(pos, i, 1)), -float(read(pos, i, 2))};
      v.color = {q(read(col, i, 0)), q(read(col, i, 1)), q(read(col, i, 2))};
    }
    View idx = accessor(prim.at("indices").get<int>(), 1);
    if (idx.count % 3) throw InputError("glb: index count not a multiple of 3");
    for (std::size_t i = 0; i < idx.count; i += 3) {
      std::array<std::uint32_t, 3> t{};
      for (int k = 0; k < 3; ++k) {
        double d = idx.component == 5125 ? get_u32(idx.data + (i + k) * idx.stride)
                                         : idx.component == 5123 ? double(idx.data[(i + k) * idx.stride] |
                                                                          idx.data[(i + k) * idx.stride + 1] << 8)
                                                                 : double(idx.data[(i + k) * idx.stride]);
        if (d >= pos.count) throw InputError("glb: index out of range");
        t[k] = static_cast<std::uint32_t>(d);
      }
      mesh.triangles.push_back(t);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("glb: ") + e.what());
  }
  return mesh;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(f), {});
}

void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw InputError("cannot write " + path.string());
}

void write_glb(const std::filesystem::path& path, const TexturedMesh& mesh) { write_file_bytes(path, encode_glb(mesh)); }

TexturedMesh read_glb(const std::filesystem::path& path) { return decode_glb(read_file_bytes(path)); }

void write_obj(const std::filesystem::path& path, const TexturedMesh& mesh) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path.string());
  char line[160];
  for (const auto& v : mesh.vertices) {
    std::snprintf(line, sizeof line, "v %.9g %.9g %.9g %.6f %.6f %.6f\n", v.position[0], v.position[1], v.position[2],
                  v.color.r / 255.0, v.color.g / 255.0, v.color.b / 255.0);
    f << line;
  }
  for (const auto& t : mesh.triangles) f << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  if (!f) throw InputError("cannot write " + path.string());
}

}  // namespace ldi3d
