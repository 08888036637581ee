#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tacchi/bridge/server.hpp"
#include "tacchi/config/scene_config.hpp"
#include "tacchi/dataset/harness.hpp"
#include "tacchi/errors.hpp"
#include "tacchi/geo/point_cloud_io.hpp"
#include "tacchi/geo/shapes.hpp"
#include "tacchi/render/depth_map.hpp"
#include "tacchi/render/image.hpp"
#include "tacchi/render/phong.hpp"

namespace {

tacchi::config::SceneConfig load_or_default(const std::string& config_path) {
  if (config_path.empty()) return tacchi::config::default_config();
  return tacchi::config::from_json_file(config_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tacchi: soft-body tactile sensor simulator"};
  app.require_subcommand(1);

  // ---- print-defaults
  auto* cmd_defaults = app.add_subcommand("print-defaults", "emit the default scene config");
  std::string defaults_out;
  cmd_defaults->add_option("-o,--output", defaults_out, "write to a file instead of stdout");

  // ---- dataset
  auto* cmd_dataset = app.add_subcommand("dataset", "run the press-grid dataset protocol");
  std::string ds_config, ds_out, ds_objects;
  bool ds_all_objects = false;
  int ds_workers = -1;
  int ds_seed = -1;
  bool ds_deterministic = false;
  cmd_dataset->add_option("-c,--config", ds_config, "scene config JSON");
  cmd_dataset->add_option("-o,--output", ds_out, "dataset output directory");
  cmd_dataset->add_option("--objects", ds_objects, "comma-separated object list");
  cmd_dataset->add_flag("--all-objects", ds_all_objects, "run all built-in analytic indenters");
  cmd_dataset->add_option("--workers", ds_workers, "parallel position workers (0 = auto)");
  cmd_dataset->add_option("--seed", ds_seed, "override the indenter sampling seed");
  cmd_dataset->add_flag("--deterministic", ds_deterministic, "force deterministic mode");

  // ---- compare
  auto* cmd_compare = app.add_subcommand("compare", "pairwise image metrics of two datasets");
  std::string cmp_a, cmp_b, cmp_csv;
  cmd_compare->add_option("dir_a", cmp_a, "first dataset directory")->required();
  cmd_compare->add_option("dir_b", cmp_b, "second dataset directory")->required();
  cmd_compare->add_option("-o,--output", cmp_csv, "per-pair CSV output path");

  // ---- serve
  auto* cmd_serve = app.add_subcommand("serve", "run the coupling bridge");
  std::string sv_config, sv_root = "tacchi_sessions";
  int sv_port = -1;
  int sv_max_conn = 0;
  cmd_serve->add_option("-c,--config", sv_config, "scene config JSON");
  cmd_serve->add_option("-o,--output", sv_root, "session output root directory");
  cmd_serve->add_option("--tcp", sv_port, "listen on this TCP port (0 = ephemeral)");
  cmd_serve->add_option("--max-connections", sv_max_conn,
                        "serve this many connections then exit (0 = unlimited)");

  // ---- render
  auto* cmd_render = app.add_subcommand("render", "render a saved depth map to a PNG");
  std::string rd_config, rd_depth, rd_out = "render.png";
  cmd_render->add_option("-c,--config", rd_config, "scene config JSON (light rig)");
  cmd_render->add_option("--depth", rd_depth, "input .depth file")->required();
  cmd_render->add_option("-o,--output", rd_out, "output PNG path");

  // ---- gen-cloud
  auto* cmd_gen = app.add_subcommand("gen-cloud", "generate an analytic indenter point cloud");
  std::string gc_shape = "sphere", gc_out = "cloud.xyz";
  std::uint64_t gc_n = 1000000, gc_seed = 20230115;
  cmd_gen->add_option("--shape", gc_shape, "one of the built-in shape names");
  cmd_gen->add_option("-n,--points", gc_n, "number of points");
  cmd_gen->add_option("--seed", gc_seed, "sampling seed");
  cmd_gen->add_option("-o,--output", gc_out, "output .xyz or .ply path (millimeters)");
  bool gc_list = false;
  cmd_gen->add_flag("--list", gc_list, "list available shapes and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_defaults) {
      const auto cfg = tacchi::config::default_config();
      if (defaults_out.empty())
        std::cout << tacchi::config::to_json_string(cfg);
      else
        tacchi::config::to_json_file(cfg, defaults_out);
      return 0;
    }

    if (*cmd_dataset) {
      auto cfg = load_or_default(ds_config);
      if (!ds_out.empty()) cfg.output_dir = ds_out;
      if (ds_workers >= 0) cfg.workers = ds_workers;
      if (ds_seed >= 0) cfg.indenter.seed = static_cast<std::uint64_t>(ds_seed);
      if (ds_deterministic) cfg.deterministic = true;
      if (ds_all_objects) cfg.objects = tacchi::geo::shape_names();
      if (!ds_objects.empty()) {
        cfg.objects.clear();
        std::string token;
        std::stringstream ss(ds_objects);
        while (std::getline(ss, token, ','))
          if (!token.empty()) cfg.objects.push_back(token);
      }
      const auto result = tacchi::dataset::run_press_dataset(cfg, cfg.output_dir);
      std::cout << "dataset: " << result.rows << " rows in " << result.dir.string();
      if (result.skipped_positions > 0)
        std::cout << " (" << result.skipped_positions << " positions resumed)";
      std::cout << "\n";
      return 0;
    }

    if (*cmd_compare) {
      const auto agg = tacchi::dataset::compare_datasets(cmp_a, cmp_b, cmp_csv);
      std::printf("pairs: %zu\n", agg.pairs);
      std::printf("SSIM  %.3f +/- %.3f\n", agg.ssim_mean, agg.ssim_std);
      std::printf("PSNR  %.2f +/- %.2f dB\n", agg.psnr_mean, agg.psnr_std);
      std::printf("MAE   %.2f +/- %.2f %%\n", agg.mae_mean, agg.mae_std);
      return 0;
    }

    if (*cmd_serve) {
      const auto cfg = load_or_default(sv_config);
      if (sv_port >= 0)
        tacchi::bridge::serve_tcp(cfg, sv_root, sv_port, sv_max_conn);
      else
        tacchi::bridge::serve_stdio(cfg, sv_root);
      return 0;
    }

    if (*cmd_render) {
      const auto cfg = load_or_default(rd_config);
      const auto depth = tacchi::render::load_depth_map(rd_depth);
      const auto image =
          tacchi::render::phong_render(depth, cfg.lights, cfg.render_params_struct());
      tacchi::render::save_png(image, rd_out);
      std::cout << "wrote " << rd_out << "\n";
      return 0;
    }

    if (*cmd_gen) {
      if (gc_list) {
        for (const auto& name : tacchi::geo::shape_names()) std::cout << name << "\n";
        return 0;
      }
      const auto cloud = tacchi::geo::generate_shape_cloud(gc_shape, gc_n, gc_seed);
      tacchi::geo::save_point_cloud(cloud, gc_out);
      std::cout << "wrote " << cloud.size() << " points to " << gc_out << "\n";
      return 0;
    }
  } catch (const tacchi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
