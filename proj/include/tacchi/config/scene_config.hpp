#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tacchi/mpm/material.hpp"
#include "tacchi/render/depth_map.hpp"
#include "tacchi/render/phong.hpp"
#include "tacchi/types.hpp"

namespace tacchi::config {

/// All physical and numerical parameters of a run. Geometry fields are in
/// millimeters in the config file and converted where consumed; a loaded
/// config fully determines a run, so serializing it reproduces the run.
struct SceneConfig {
  struct Elastomer {
    Vec3 size_mm = Vec3(20.0, 20.0, 4.0);
    Vec3i particle_counts = Vec3i(101, 101, 21);
    double youngs_modulus_pa = 1.45e5;
    double poisson_ratio = 0.45;
    double density_kg_m3 = 1000.0;
    int fixed_bottom_layers = 2;
  } elastomer;

  struct GridCfg {
    Vec3i nodes_per_axis = Vec3i(256, 256, 256);
    double edge_mm = 33.0;
  } grid;

  struct Time {
    double dt_s = 1e-4;
    int substeps_per_control_step = 10;
    double press_speed_mm_s = 10.0;
  } time;

  struct Indenter {
    std::string cloud_path;           // empty -> use generated_shape
    std::string generated_shape = "sphere";
    std::uint64_t source_points = 1000000;  // generated cloud size before subsampling
    std::uint64_t target_points = 100000;
    std::uint64_t seed = 20230115;
    double gap_mm = 0.1;              // initial clearance above the elastomer
    double z_rotation_rad = 0.0;
    double rigid_mass_scale = 80.0;   // rigid-limit contact mass multiplier
  } indenter;

  struct PressGrid {
    int positions_x = 3, positions_y = 3;
    double step_mm = 1.0;
    std::vector<double> depths_mm = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                     0.6, 0.7, 0.8, 0.9, 1.0};
  } press;

  std::vector<render::LightSource> lights;

  struct Render {
    double ambient_k = 1.0;
    double diffuse_k = 0.55;
    double specular_k = 0.25;
    double shininess = 24.0;
    Vec3 ambient_rgb = Vec3(0.34, 0.37, 0.44);
    Vec3 view_dir = Vec3(0, 0, -1);
    double pixel_to_meter = 2.8125e-5;
    int image_width = 640;
    int image_height = 480;
    std::string background_image;  // optional PNG path
  } render_params;

  std::map<std::string, render::CropAlignment> alignment;  // per-object; else centered

  std::vector<std::string> objects = {"sphere"};  // dataset object list

  std::string output_dir = "tacchi_out";
  bool deterministic = true;
  int workers = 0;  // 0 = auto
  double gravity_mps2 = 0.0;  // along -z when nonzero

  // Derived quantities -------------------------------------------------
  double grid_dx() const { return grid.edge_mm * 1e-3 / grid.nodes_per_axis.x(); }
  mpm::MaterialParams material() const {
    return {elastomer.youngs_modulus_pa, elastomer.poisson_ratio, elastomer.density_kg_m3};
  }
  /// CFL-style bound on dt for the configured grid and material.
  double stable_dt_bound() const;
  render::CropAlignment alignment_for(const std::string& object) const;
  render::RenderParams render_params_struct() const;

  /// Structural validation; warns (stderr) when dt exceeds the CFL bound.
  void validate() const;
};

SceneConfig default_config();

SceneConfig from_json_file(const std::filesystem::path& path);
void to_json_file(const SceneConfig& cfg, const std::filesystem::path& path);
std::string to_json_string(const SceneConfig& cfg);
SceneConfig from_json_string(const std::string& text);

}  // namespace tacchi::config
