#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ldi3d/mesh.hpp"

namespace ldi3d {

/// Binary glTF 2.0 with one triangle primitive: POSITION (float VEC3),
/// COLOR_0 (float VEC3 in [0,1]) and 32-bit indices. Positions are stored
/// in glTF axes (x right, y up, z toward the viewer), i.e. (x, -y, -z) of
/// the mesh frame. An empty mesh produces a scene without nodes.
std::vector<std::uint8_t> encode_glb(const TexturedMesh& mesh);
/// Reads files written by encode_glb (and other single-primitive files with
/// float positions, float or normalized unsigned colors and any index type).
/// Throws InputError on truncated or unsupported files.
TexturedMesh decode_glb(const std::vector<std::uint8_t>& bytes);

void write_glb(const std::filesystem::path& path, const TexturedMesh& mesh);
TexturedMesh read_glb(const std::filesystem::path& path);

/// Wavefront OBJ with per-vertex colors ("v x y z r g b"), mesh frame axes.
void write_obj(const std::filesystem::path& path, const TexturedMesh& mesh);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace ldi3d
