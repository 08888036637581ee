#include "tacchi/geo/point_cloud_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tacchi/errors.hpp"

namespace tacchi::geo {

namespace {

constexpr double kFileUnitToMeter = 1e-3;  // file coordinates are millimeters

bool parse_double(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_size(std::string_view tok, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line_no,
                       const std::string& what) {
  throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

ParticleSet load_ply(std::ifstream& in, const std::filesystem::path& path) {
  std::string line;
  std::size_t line_no = 1;  // "ply" was line 1
  bool ascii = false;
  std::size_t vertex_count = 0;
  bool in_vertex_element = false;
  int xi = -1, yi = -1, zi = -1;  // column of x/y/z among vertex properties
  int prop_count = 0;

  while (std::getline(in, line)) {
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "comment") continue;
    if (toks[0] == "format") {
      if (toks.size() < 2 || toks[1] != "ascii") fail(path, line_no, "only ascii PLY is supported");
      ascii = true;
    } else if (toks[0] == "element") {
      if (toks.size() < 3) fail(path, line_no, "malformed element line");
      in_vertex_element = (toks[1] == "vertex");
      if (in_vertex_element && !parse_size(toks[2], vertex_count))
        fail(path, line_no, "bad vertex count");
    } else if (toks[0] == "property") {
      if (!in_vertex_element) continue;
      if (toks.size() >= 3 && toks[1] == "list") fail(path, line_no, "list property in vertex element");
      const std::string_view name = toks.back();
      if (name == "x") xi = prop_count;
      else if (name == "y") yi = prop_count;
      else if (name == "z") zi = prop_count;
      ++prop_count;
    } else if (toks[0] == "end_header") {
      break;
    }
  }
  if (!ascii) fail(path, line_no, "missing 'format ascii 1.0' header");
  if (xi < 0 || yi < 0 || zi < 0) fail(path, line_no, "vertex element lacks x/y/z properties");

  ParticleSet set;
  set.source = path.string();
  set.positions.reserve(vertex_count);
  double coord[3];
  for (std::size_t v = 0; v < vertex_count; ++v) {
    if (!std::getline(in, line)) fail(path, line_no, "unexpected end of file in vertex data");
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty()) { --v; continue; }
    if (static_cast<int>(toks.size()) < prop_count) fail(path, line_no, "short vertex line");
    double val;
    for (int c = 0; c < 3; ++c) {
      const int col = c == 0 ? xi : (c == 1 ? yi : zi);
      if (!parse_double(toks[col], val)) fail(path, line_no, "bad coordinate");
      coord[c] = val;
    }
    set.positions.emplace_back(coord[0] * kFileUnitToMeter, coord[1] * kFileUnitToMeter,
                               coord[2] * kFileUnitToMeter);
  }
  if (set.positions.empty()) throw EmptyCloud(path.string() + ": no vertices");
  return set;
}

}  // namespace

ParticleSet load_point_cloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  std::string line;
  std::size_t line_no = 0;
  // Find the first non-empty line to detect the format.
  std::streampos first_pos = in.tellg();
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_ws(line).empty()) break;
    first_pos = in.tellg();
  }
  auto toks = split_ws(line);
  if (toks.empty()) throw EmptyCloud(path.string() + ": empty file");
  if (toks[0] == "ply") return load_ply(in, path);

  // Plain XYZ: rewind to the detected line and read every non-empty line.
  in.clear();
  in.seekg(first_pos);
  line_no -= 1;
  ParticleSet set;
  set.source = path.string();
  while (std::getline(in, line)) {
    ++line_no;
    auto t = split_ws(line);
    if (t.empty()) continue;
    if (t.size() < 3) fail(path, line_no, "expected 3 coordinates");
    double x, y, z;
    if (!parse_double(t[0], x) || !parse_double(t[1], y) || !parse_double(t[2], z))
      fail(path, line_no, "bad coordinate");
    set.positions.emplace_back(x * kFileUnitToMeter, y * kFileUnitToMeter,
                               z * kFileUnitToMeter);
  }
  if (set.positions.empty()) throw EmptyCloud(path.string() + ": no points");
  return set;
}

void save_point_cloud(const ParticleSet& cloud, const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw IoError("cannot write " + path.string());
  const double to_mm = 1.0 / kFileUnitToMeter;
  if (path.extension() == ".ply") {
    std::fprintf(f, "ply\nformat ascii 1.0\nelement vertex %zu\n", cloud.size());
    std::fprintf(f, "property double x\nproperty double y\nproperty double z\nend_header\n");
  }
  for (const Vec3& p : cloud.positions)
    std::fprintf(f, "%.12g %.12g %.12g\n", p.x() * to_mm, p.y() * to_mm, p.z() * to_mm);
  std::fclose(f);
}

}  // namespace tacchi::geo
