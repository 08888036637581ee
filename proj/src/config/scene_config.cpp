#include "tacchi/config/scene_config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "tacchi/errors.hpp"
#include "tacchi/geo/shapes.hpp"
#include "tacchi/mpm/sim_state.hpp"

namespace tacchi::config {

using nlohmann::json;

namespace {

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
json vec3i_to_json(const Vec3i& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}
Vec3i vec3i_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected a 3-element array");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}
void get_vec3(const json& j, const char* key, Vec3& out) {
  if (j.contains(key)) out = vec3_from_json(j.at(key));
}
void get_vec3i(const json& j, const char* key, Vec3i& out) {
  if (j.contains(key)) out = vec3i_from_json(j.at(key));
}

std::vector<render::LightSource> default_light_rig() {
  // GelSight-style rig: three tinted lights, 120 degrees apart in azimuth,
  // 45 degrees elevation, shining toward the surface (negative z).
  std::vector<render::LightSource> rig;
  const double e = std::sqrt(0.5);
  const Vec3 tints[3] = {{0.80, 0.12, 0.10}, {0.10, 0.80, 0.12}, {0.12, 0.10, 0.80}};
  for (int m = 0; m < 3; ++m) {
    const double az = 2.0 * M_PI * m / 3.0;
    render::LightSource l;
    l.direction = Vec3(e * std::cos(az), e * std::sin(az), -e);
    l.diffuse = tints[m];
    l.specular = 0.5 * tints[m];
    rig.push_back(l);
  }
  return rig;
}

}  // namespace

double SceneConfig::stable_dt_bound() const {
  return mpm::stable_dt_bound(material(), grid_dx());
}

render::CropAlignment SceneConfig::alignment_for(const std::string& object) const {
  auto it = alignment.find(object);
  return it == alignment.end() ? render::CropAlignment{} : it->second;
}

render::RenderParams SceneConfig::render_params_struct() const {
  render::RenderParams rp;
  rp.ambient_k = render_params.ambient_k;
  rp.diffuse_k = render_params.diffuse_k;
  rp.specular_k = render_params.specular_k;
  rp.shininess = render_params.shininess;
  rp.ambient_light = render_params.ambient_rgb;
  rp.view_dir = render_params.view_dir;
  if (!render_params.background_image.empty())
    rp.background = render::load_png(render_params.background_image);
  return rp;
}

void SceneConfig::validate() const {
  material().validate();
  if ((elastomer.particle_counts.array() < 2).any())
    throw ConfigError("elastomer.particle_counts must be >= 2 per axis");
  if ((elastomer.size_mm.array() <= 0.0).any())
    throw ConfigError("elastomer.size_mm must be positive");
  if ((grid.nodes_per_axis.array() < 8).any())
    throw ConfigError("grid.nodes_per_axis must be >= 8");
  if (!(grid.edge_mm > 0.0)) throw ConfigError("grid.edge_mm must be positive");
  if (!(time.dt_s > 0.0)) throw ConfigError("time.dt_s must be positive");
  if (time.substeps_per_control_step < 1)
    throw ConfigError("time.substeps_per_control_step must be >= 1");
  if (!(time.press_speed_mm_s > 0.0)) throw ConfigError("time.press_speed_mm_s must be positive");
  if (indenter.target_points < 1) throw ConfigError("indenter.target_points must be >= 1");
  if (indenter.cloud_path.empty() && !geo::is_known_shape(indenter.generated_shape))
    throw ConfigError("indenter: no cloud_path and unknown generated_shape '" +
                      indenter.generated_shape + "'");
  if (press.positions_x < 1 || press.positions_y < 1)
    throw ConfigError("press grid must have at least one position");
  if (press.depths_mm.empty()) throw ConfigError("press.depths_mm must not be empty");
  if (lights.empty()) throw ConfigError("at least one light source required");
  if (render_params.image_width < 2 || render_params.image_height < 2)
    throw ConfigError("render image size too small");
  if (!(render_params.pixel_to_meter > 0.0)) throw ConfigError("pixel_to_meter must be positive");
  if (elastomer.fixed_bottom_layers < 0 ||
      elastomer.fixed_bottom_layers >= elastomer.particle_counts.z())
    throw ConfigError("elastomer.fixed_bottom_layers out of range");

  const double bound = stable_dt_bound();
  if (time.dt_s > bound)
    std::cerr << "[tacchi] warning: dt_s = " << time.dt_s
              << " exceeds the stability bound 0.5*dx/sqrt(E/rho) = " << bound
              << "; explicit stepping may diverge at this grid resolution\n";
}

SceneConfig default_config() {
  SceneConfig cfg;
  cfg.lights = default_light_rig();
  return cfg;
}

std::string to_json_string(const SceneConfig& c) {
  json j;
  j["elastomer"] = {{"size_mm", vec3_to_json(c.elastomer.size_mm)},
                    {"particle_counts", vec3i_to_json(c.elastomer.particle_counts)},
                    {"youngs_modulus_pa", c.elastomer.youngs_modulus_pa},
                    {"poisson_ratio", c.elastomer.poisson_ratio},
                    {"density_kg_m3", c.elastomer.density_kg_m3},
                    {"fixed_bottom_layers", c.elastomer.fixed_bottom_layers}};
  j["grid"] = {{"nodes_per_axis", vec3i_to_json(c.grid.nodes_per_axis)},
               {"edge_mm", c.grid.edge_mm}};
  j["time"] = {{"dt_s", c.time.dt_s},
               {"substeps_per_control_step", c.time.substeps_per_control_step},
               {"press_speed_mm_s", c.time.press_speed_mm_s}};
  j["indenter"] = {{"cloud_path", c.indenter.cloud_path},
                   {"generated_shape", c.indenter.generated_shape},
                   {"source_points", c.indenter.source_points},
                   {"target_points", c.indenter.target_points},
                   {"seed", c.indenter.seed},
                   {"gap_mm", c.indenter.gap_mm},
                   {"z_rotation_rad", c.indenter.z_rotation_rad},
                   {"rigid_mass_scale", c.indenter.rigid_mass_scale}};
  j["press_grid"] = {{"positions_x", c.press.positions_x},
                     {"positions_y", c.press.positions_y},
                     {"step_mm", c.press.step_mm},
                     {"depths_mm", c.press.depths_mm}};
  j["lights"] = json::array();
  for (const auto& l : c.lights)
    j["lights"].push_back({{"direction", vec3_to_json(l.direction)},
                           {"diffuse_rgb", vec3_to_json(l.diffuse)},
                           {"specular_rgb", vec3_to_json(l.specular)}});
  j["render"] = {{"ambient_k", c.render_params.ambient_k},
                 {"diffuse_k", c.render_params.diffuse_k},
                 {"specular_k", c.render_params.specular_k},
                 {"shininess", c.render_params.shininess},
                 {"ambient_rgb", vec3_to_json(c.render_params.ambient_rgb)},
                 {"view_dir", vec3_to_json(c.render_params.view_dir)},
                 {"pixel_to_meter", c.render_params.pixel_to_meter},
                 {"image_width", c.render_params.image_width},
                 {"image_height", c.render_params.image_height},
                 {"background_image", c.render_params.background_image}};
  j["alignment"] = json::object();
  for (const auto& [name, a] : c.alignment)
    j["alignment"][name] = {{"offset_px", json::array({a.offset_x, a.offset_y})},
                            {"scale", a.scale}};
  j["objects"] = c.objects;
  j["output_dir"] = c.output_dir;
  j["deterministic"] = c.deterministic;
  j["workers"] = c.workers;
  j["gravity_mps2"] = c.gravity_mps2;
  return j.dump(2) + "\n";
}

SceneConfig from_json_string(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  SceneConfig c = default_config();
  if (j.contains("elastomer")) {
    const json& e = j["elastomer"];
    get_vec3(e, "size_mm", c.elastomer.size_mm);
    get_vec3i(e, "particle_counts", c.elastomer.particle_counts);
    get_if(e, "youngs_modulus_pa", c.elastomer.youngs_modulus_pa);
    get_if(e, "poisson_ratio", c.elastomer.poisson_ratio);
    get_if(e, "density_kg_m3", c.elastomer.density_kg_m3);
    get_if(e, "fixed_bottom_layers", c.elastomer.fixed_bottom_layers);
  }
  if (j.contains("grid")) {
    get_vec3i(j["grid"], "nodes_per_axis", c.grid.nodes_per_axis);
    get_if(j["grid"], "edge_mm", c.grid.edge_mm);
  }
  if (j.contains("time")) {
    get_if(j["time"], "dt_s", c.time.dt_s);
    get_if(j["time"], "substeps_per_control_step", c.time.substeps_per_control_step);
    get_if(j["time"], "press_speed_mm_s", c.time.press_speed_mm_s);
  }
  if (j.contains("indenter")) {
    const json& i = j["indenter"];
    get_if(i, "cloud_path", c.indenter.cloud_path);
    get_if(i, "generated_shape", c.indenter.generated_shape);
    get_if(i, "source_points", c.indenter.source_points);
    get_if(i, "target_points", c.indenter.target_points);
    get_if(i, "seed", c.indenter.seed);
    get_if(i, "gap_mm", c.indenter.gap_mm);
    get_if(i, "z_rotation_rad", c.indenter.z_rotation_rad);
    get_if(i, "rigid_mass_scale", c.indenter.rigid_mass_scale);
  }
  if (j.contains("press_grid")) {
    const json& p = j["press_grid"];
    get_if(p, "positions_x", c.press.positions_x);
    get_if(p, "positions_y", c.press.positions_y);
    get_if(p, "step_mm", c.press.step_mm);
    if (p.contains("depths_mm")) c.press.depths_mm = p["depths_mm"].get<std::vector<double>>();
  }
  if (j.contains("lights")) {
    c.lights.clear();
    for (const json& lj : j["lights"]) {
      render::LightSource l;
      l.direction = vec3_from_json(lj.at("direction")).normalized();
      if (lj.contains("diffuse_rgb")) l.diffuse = vec3_from_json(lj["diffuse_rgb"]);
      if (lj.contains("specular_rgb")) l.specular = vec3_from_json(lj["specular_rgb"]);
      c.lights.push_back(l);
    }
  }
  if (j.contains("render")) {
    const json& r = j["render"];
    get_if(r, "ambient_k", c.render_params.ambient_k);
    get_if(r, "diffuse_k", c.render_params.diffuse_k);
    get_if(r, "specular_k", c.render_params.specular_k);
    get_if(r, "shininess", c.render_params.shininess);
    get_vec3(r, "ambient_rgb", c.render_params.ambient_rgb);
    get_vec3(r, "view_dir", c.render_params.view_dir);
    get_if(r, "pixel_to_meter", c.render_params.pixel_to_meter);
    get_if(r, "image_width", c.render_params.image_width);
    get_if(r, "image_height", c.render_params.image_height);
    get_if(r, "background_image", c.render_params.background_image);
  }
  if (j.contains("alignment")) {
    for (auto it = j["alignment"].begin(); it != j["alignment"].end(); ++it) {
      render::CropAlignment a;
      const json& aj = it.value();
      if (aj.contains("offset_px")) {
        a.offset_x = aj["offset_px"][0].get<double>();
        a.offset_y = aj["offset_px"][1].get<double>();
      }
      get_if(aj, "scale", a.scale);
      c.alignment[it.key()] = a;
    }
  }
  if (j.contains("objects")) c.objects = j["objects"].get<std::vector<std::string>>();
  get_if(j, "output_dir", c.output_dir);
  get_if(j, "deterministic", c.deterministic);
  get_if(j, "workers", c.workers);
  get_if(j, "gravity_mps2", c.gravity_mps2);
  return c;
}

SceneConfig from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_string(text);
}

void to_json_file(const SceneConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config " + path.string());
  out << to_json_string(cfg);
}

}  // namespace tacchi::config
