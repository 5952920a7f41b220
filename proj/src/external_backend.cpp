#include "ldi3d/external_backend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>

#include "ldi3d/image_io.hpp"

namespace ldi3d {
namespace fs = std::filesystem;
namespace {

PfmImage mask_pfm(const Mask& m) {
  PfmImage out{m.width, m.height, 1, std::vector<float>(m.size())};
  for (std::size_t i = 0; i < m.size(); ++i) out.data[i] = m.data[i] ? 1.f : 0.f;
  return out;
}

PfmImage color_pfm(const RgbImage& c) {
  PfmImage out{c.width, c.height, 3, std::vector<float>(c.size() * 3)};
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.data[3 * i] = c.data[i].r / 255.f;
    out.data[3 * i + 1] = c.data[i].g / 255.f;
    out.data[3 * i + 2] = c.data[i].b / 255.f;
  }
  return out;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

}  // namespace

ExternalBackend::ExternalBackend(std::string command, fs::path work_dir, bool keep_files)
    : command_(std::move(command)), work_dir_(std::move(work_dir)), keep_files_(keep_files) {
  if (command_.empty()) throw ConfigError("external backend command is empty");
}

PfmImage ExternalBackend::call(const std::string& stage, const InpaintRequest& req, const Mask* edges, int channels) {
  char name[32];
  std::snprintf(name, sizeof name, "call_%06d", counter_++);
  const fs::path dir = work_dir_ / name;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw BackendError(stage, "cannot create " + dir.string());

  write_pfm(dir / "color.pfm", color_pfm(req.color));
  write_pfm(dir / "disparity.pfm", to_pfm(req.disparity));
  write_pfm(dir / "edges.pfm", mask_pfm(req.edges));
  write_pfm(dir / "mask.pfm", mask_pfm(req.synthesis));
  write_pfm(dir / "excluded.pfm", mask_pfm(req.excluded));
  write_pfm(dir / "seed_color.pfm", color_pfm(req.seed_color));
  write_pfm(dir / "seed_disparity.pfm", to_pfm(req.seed_disparity));
  nlohmann::ordered_json j;
  j["stage"] = stage;
  j["bbox"] = {req.bbox.x, req.bbox.y, req.bbox.width, req.bbox.height};
  j["mask"] = "mask.pfm";
  j["excluded"] = "excluded.pfm";
  j["color"] = "color.pfm";
  j["disparity"] = "disparity.pfm";
  j["edges"] = "edges.pfm";
  j["seed_color"] = "seed_color.pfm";
  j["seed_disparity"] = "seed_disparity.pfm";
  if (edges) {
    write_pfm(dir / "inpainted_edges.pfm", mask_pfm(*edges));
    j["inpainted_edges"] = "inpainted_edges.pfm";
  }
  const std::string output = stage + "_out.pfm";
  j["output"] = output;
  {
    std::ofstream f(dir / "request.json");
    f << j.dump(2) << "\n";
    if (!f) throw BackendError(stage, "cannot write request.json");
  }

  const std::string cmd = command_ + " " + stage + " " + shell_quote(dir.string());
  std::fflush(nullptr);
  int rc = std::system(cmd.c_str());
  if (rc != 0) throw BackendError(stage, "external command failed with status " + std::to_string(rc));
  PfmImage out;
  try {
    out = read_pfm(dir / output);
  } catch (const std::exception& e) {
    throw BackendError(stage, std::string("bad output plane: ") + e.what());
  }
  if (out.width != req.width() || out.height != req.height() || out.channels != channels)
    throw BackendError(stage, "output plane has wrong shape");
  for (float v : out.data)
    if (!std::isfinite(v)) throw BackendError(stage, "output plane contains non-finite values");
  if (!keep_files_) fs::remove_all(dir, ec);
  return out;
}

Mask ExternalBackend::inpaint_edges(const InpaintRequest& req) {
  PfmImage p = call("edge", req, nullptr, 1);
  Mask m(p.width, p.height, 0);
  for (std::size_t i = 0; i < m.size(); ++i) m.data[i] = p.data[i] > 0.5f ? 1 : 0;
  return m;
}

RgbImage ExternalBackend::inpaint_color(const InpaintRequest& req, const Mask& edges) {
  PfmImage p = call("color", req, &edges, 3);
  RgbImage c(p.width, p.height);
  auto q = [](float v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.f, 1.f) * 255.f)); };
  for (std::size_t i = 0; i < c.size(); ++i) c.data[i] = {q(p.data[3 * i]), q(p.data[3 * i + 1]), q(p.data[3 * i + 2])};
  return c;
}

DisparityMap ExternalBackend::inpaint_depth(const InpaintRequest& req, const Mask& edges) {
  return pfm_to_plane(call("depth", req, &edges, 1));
}

}  // namespace ldi3d
