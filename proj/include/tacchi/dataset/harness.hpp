#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tacchi/config/scene_config.hpp"
#include "tacchi/metrics/image_metrics.hpp"

namespace tacchi::dataset {

/// One manifest entry: a single (object, position, depth) capture.
struct ManifestRow {
  std::string object;
  int position_index = 0;       // row-major over the press grid
  double pos_x_mm = 0.0, pos_y_mm = 0.0;
  int depth_index = 0;
  double depth_mm = 0.0;
  bool contact = false;         // depth-0 presses carry no contact
  std::uint64_t particle_count = 0;  // indenter particles in the scene
  std::string image;            // paths relative to the dataset directory
  std::string depth_map;
};

std::vector<ManifestRow> read_manifest(const std::filesystem::path& csv_path);
void write_manifest(const std::vector<ManifestRow>& rows, const std::filesystem::path& csv_path);

struct DatasetResult {
  std::filesystem::path dir;
  std::size_t rows = 0;
  std::size_t skipped_positions = 0;  // already present via resume
};

/// Runs the press protocol for every configured object over the
/// positions_x x positions_y grid and the configured depth list: one
/// continuous press per (object, position), capturing image + depth map at
/// each depth level. Existing complete (object, position) groups in the
/// manifest are kept and skipped (resume). The manifest is rewritten sorted,
/// so deterministic runs produce byte-identical datasets.
DatasetResult run_press_dataset(const config::SceneConfig& cfg,
                                const std::filesystem::path& out_dir);

struct CompareAggregate {
  std::size_t pairs = 0;
  double ssim_mean = 0, ssim_std = 0;
  double psnr_mean = 0, psnr_std = 0;
  double mae_mean = 0, mae_std = 0;
};

/// Pairwise metrics over two dataset directories with matching manifests
/// (same key set object/position/depth); writes per-pair rows plus a summary
/// to `csv_out` when non-empty. Throws ManifestMismatch on key mismatch.
CompareAggregate compare_datasets(const std::filesystem::path& dir_a,
                                  const std::filesystem::path& dir_b,
                                  const std::filesystem::path& csv_out = {});

}  // namespace tacchi::dataset
