#include "tacchi/render/depth_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "tacchi/errors.hpp"

namespace tacchi::render {

double DepthMap::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : values) m = std::max(m, v);
  return m;
}

double DepthMap::max_abs_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void save_depth_map(const DepthMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  nlohmann::json header = {
      {"width", map.width}, {"height", map.height}, {"pixel_to_meter", map.pixel_to_meter}};
  out << header.dump() << '\n';
  std::vector<float> buf(map.values.size());
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = static_cast<float>(map.values[i]);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
}

DepthMap load_depth_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": missing header");
  nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
  if (header.is_discarded()) throw ParseError(path.string() + ": bad JSON header");
  DepthMap map;
  map.width = header.at("width").get<int>();
  map.height = header.at("height").get<int>();
  map.pixel_to_meter = header.at("pixel_to_meter").get<double>();
  if (map.width <= 0 || map.height <= 0)
    throw ParseError(path.string() + ": bad dimensions");
  const std::size_t n = static_cast<std::size_t>(map.width) * map.height;
  std::vector<float> buf(n);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * sizeof(float)));
  if (static_cast<std::size_t>(in.gcount()) != n * sizeof(float))
    throw ParseError(path.string() + ": truncated depth data");
  map.values.assign(buf.begin(), buf.end());
  return map;
}

DepthMap crop_align(const DepthMap& src, const CropAlignment& alignment, int out_width,
                    int out_height) {
  if (!(alignment.scale > 0.0)) throw ConfigError("crop_align: scale must be > 0");
  DepthMap out;
  out.width = out_width;
  out.height = out_height;
  out.pixel_to_meter = src.pixel_to_meter * alignment.scale;
  out.values.resize(static_cast<std::size_t>(out_width) * out_height);

  const double cx_src = 0.5 * (src.width - 1), cy_src = 0.5 * (src.height - 1);
  const double cx_out = 0.5 * (out_width - 1), cy_out = 0.5 * (out_height - 1);

  // Validate the window corners first so a bad alignment fails cleanly.
  for (int corner = 0; corner < 4; ++corner) {
    const double u = (corner & 1) ? out_width - 1 : 0;
    const double v = (corner & 2) ? out_height - 1 : 0;
    const double sx = cx_src + alignment.scale * (u - cx_out) + alignment.offset_x;
    const double sy = cy_src + alignment.scale * (v - cy_out) + alignment.offset_y;
    if (sx < -1e-9 || sx > src.width - 1 + 1e-9 || sy < -1e-9 || sy > src.height - 1 + 1e-9)
      throw CropOutOfBounds("crop window leaves the source depth map (source " +
                            std::to_string(src.width) + "x" + std::to_string(src.height) + ")");
  }

  for (int v = 0; v < out_height; ++v) {
    const double sy = std::clamp(cy_src + alignment.scale * (v - cy_out) + alignment.offset_y,
                                 0.0, static_cast<double>(src.height - 1));
    const int y0 = std::min(static_cast<int>(sy), src.height - 2);
    const double fy = sy - y0;
    for (int u = 0; u < out_width; ++u) {
      const double sx = std::clamp(cx_src + alignment.scale * (u - cx_out) + alignment.offset_x,
                                   0.0, static_cast<double>(src.width - 1));
      const int x0 = std::min(static_cast<int>(sx), src.width - 2);
      const double fx = sx - x0;
      const double d00 = src.at(y0, x0), d01 = src.at(y0, x0 + 1);
      const double d10 = src.at(y0 + 1, x0), d11 = src.at(y0 + 1, x0 + 1);
      out.at(v, u) = (1 - fy) * ((1 - fx) * d00 + fx * d01) + fy * ((1 - fx) * d10 + fx * d11);
    }
  }
  return out;
}

}  // namespace tacchi::render
