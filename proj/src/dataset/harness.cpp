#include "tacchi/dataset/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <omp.h>

#include "tacchi/errors.hpp"
#include "tacchi/geo/particle_set.hpp"
#include "tacchi/mpm/engine.hpp"
#include "tacchi/render/depth_map.hpp"
#include "tacchi/render/image.hpp"
#include "tacchi/sim/scene_builder.hpp"

namespace tacchi::dataset {

namespace {

std::string row_file_stem(const std::string& object, int position, int depth) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "_p%02d_d%02d", position, depth);
  return object + buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

bool row_key_less(const ManifestRow& a, const ManifestRow& b) {
  return std::tie(a.object, a.position_index, a.depth_index) <
         std::tie(b.object, b.position_index, b.depth_index);
}

struct PositionJob {
  std::string object;
  std::shared_ptr<const geo::ParticleSet> cloud;
  int position_index;
  double offset_x_m, offset_y_m;
};

std::vector<ManifestRow> run_position(const config::SceneConfig& cfg, const PositionJob& job,
                                      const std::filesystem::path& dir, int sim_threads) {
  const geo::ParticleSet placed =
      sim::place_for_press(cfg, *job.cloud, job.offset_x_m, job.offset_y_m);
  mpm::SimState state = sim::build_sim(cfg, placed, sim_threads);

  const double v = cfg.time.press_speed_mm_s * 1e-3;
  const double gap = cfg.indenter.gap_mm * 1e-3;
  const double per_step = v * cfg.time.dt_s;
  const Vec3 velocity(0.0, 0.0, -v);

  // Substep index at which the commanded depth crosses each configured level.
  std::map<std::int64_t, std::vector<int>> schedule;
  for (std::size_t k = 0; k < cfg.press.depths_mm.size(); ++k) {
    const double travel = gap + cfg.press.depths_mm[k] * 1e-3;
    schedule[static_cast<std::int64_t>(std::llround(travel / per_step))].push_back(
        static_cast<int>(k));
  }

  std::vector<ManifestRow> rows;
  auto capture_levels = [&](const std::vector<int>& levels) {
    const sim::Capture cap = sim::capture(state, cfg, job.object);
    for (int k : levels) {
      ManifestRow row;
      row.object = job.object;
      row.position_index = job.position_index;
      row.pos_x_mm = job.offset_x_m * 1e3;
      row.pos_y_mm = job.offset_y_m * 1e3;
      row.depth_index = k;
      row.depth_mm = cfg.press.depths_mm[k];
      row.contact = cfg.press.depths_mm[k] > 0.0;
      row.particle_count = job.cloud->size();
      const std::string stem = row_file_stem(job.object, job.position_index, k);
      row.image = "images/" + stem + ".png";
      row.depth_map = "depth/" + stem + ".depth";
      render::save_png(cap.image, dir / row.image);
      render::save_depth_map(cap.depth, dir / row.depth_map);
      rows.push_back(std::move(row));
    }
  };

  const std::int64_t last_step = schedule.empty() ? 0 : schedule.rbegin()->first;
  if (auto it = schedule.find(0); it != schedule.end()) capture_levels(it->second);
  for (std::int64_t s = 1; s <= last_step; ++s) {
    mpm::step(state, velocity, 1);
    if (auto it = schedule.find(s); it != schedule.end()) capture_levels(it->second);
  }
  return rows;
}

double aggregate_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<ManifestRow> read_manifest(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw IoError("cannot open manifest " + csv_path.string());
  std::vector<ManifestRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 10) throw ParseError(csv_path.string() + ": malformed manifest row");
    ManifestRow r;
    r.object = f[0];
    r.position_index = std::stoi(f[1]);
    r.pos_x_mm = std::stod(f[2]);
    r.pos_y_mm = std::stod(f[3]);
    r.depth_index = std::stoi(f[4]);
    r.depth_mm = std::stod(f[5]);
    r.contact = f[6] == "1" || f[6] == "true";
    r.particle_count = std::stoull(f[7]);
    r.image = f[8];
    r.depth_map = f[9];
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_manifest(const std::vector<ManifestRow>& rows,
                    const std::filesystem::path& csv_path) {
  std::FILE* f = std::fopen(csv_path.string().c_str(), "w");
  if (!f) throw IoError("cannot write manifest " + csv_path.string());
  std::fprintf(f,
               "object,position_index,pos_x_mm,pos_y_mm,depth_index,depth_mm,contact,"
               "particle_count,image,depth_map\n");
  for (const ManifestRow& r : rows)
    std::fprintf(f, "%s,%d,%.6g,%.6g,%d,%.6g,%d,%llu,%s,%s\n", r.object.c_str(),
                 r.position_index, r.pos_x_mm, r.pos_y_mm, r.depth_index, r.depth_mm,
                 r.contact ? 1 : 0, static_cast<unsigned long long>(r.particle_count),
                 r.image.c_str(), r.depth_map.c_str());
  std::fclose(f);
}

DatasetResult run_press_dataset(const config::SceneConfig& cfg,
                                const std::filesystem::path& out_dir) {
  cfg.validate();
  std::filesystem::create_directories(out_dir / "images");
  std::filesystem::create_directories(out_dir / "depth");
  config::to_json_file(cfg, out_dir / "config.json");

  // Resume: keep rows of (object, position) groups that are already complete.
  std::vector<ManifestRow> kept;
  std::set<std::pair<std::string, int>> done;
  const auto manifest_path = out_dir / "manifest.csv";
  if (std::filesystem::exists(manifest_path)) {
    std::map<std::pair<std::string, int>, std::set<int>> seen;
    const auto existing = read_manifest(manifest_path);
    for (const ManifestRow& r : existing)
      seen[{r.object, r.position_index}].insert(r.depth_index);
    for (const auto& [key, depths] : seen)
      if (depths.size() == cfg.press.depths_mm.size()) done.insert(key);
    for (const ManifestRow& r : existing)
      if (done.count({r.object, r.position_index})) kept.push_back(r);
  }

  // Build the job list: every object at every press-grid position.
  const double step_m = cfg.press.step_mm * 1e-3;
  std::vector<PositionJob> jobs;
  std::size_t skipped = 0;
  for (const std::string& object : cfg.objects) {
    std::shared_ptr<const geo::ParticleSet> cloud;
    for (int py = 0; py < cfg.press.positions_y; ++py)
      for (int px = 0; px < cfg.press.positions_x; ++px) {
        const int index = py * cfg.press.positions_x + px;
        if (done.count({object, index})) {
          ++skipped;
          continue;
        }
        if (!cloud)
          cloud = std::make_shared<geo::ParticleSet>(sim::indenter_cloud_for(cfg, object));
        PositionJob job;
        job.object = object;
        job.cloud = cloud;
        job.position_index = index;
        job.offset_x_m = (px - 0.5 * (cfg.press.positions_x - 1)) * step_m;
        job.offset_y_m = (py - 0.5 * (cfg.press.positions_y - 1)) * step_m;
        jobs.push_back(std::move(job));
      }
  }

  int workers = cfg.workers > 0 ? cfg.workers
                                : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  const int sim_threads = workers > 1 ? 1 : 0;  // avoid nested oversubscription

  std::vector<ManifestRow> fresh;
  std::mutex rows_mutex;
  std::exception_ptr first_error = nullptr;
  std::atomic<std::size_t> next{0};
  auto worker_fn = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        auto rows = run_position(cfg, jobs[i], out_dir, sim_threads);
        std::lock_guard lock(rows_mutex);
        for (auto& r : rows) fresh.push_back(std::move(r));
      } catch (...) {
        std::lock_guard lock(rows_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };
  if (workers == 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<ManifestRow> all = std::move(kept);
  for (auto& r : fresh) all.push_back(std::move(r));
  std::sort(all.begin(), all.end(), row_key_less);
  write_manifest(all, manifest_path);
  return {out_dir, all.size(), skipped};
}

CompareAggregate compare_datasets(const std::filesystem::path& dir_a,
                                  const std::filesystem::path& dir_b,
                                  const std::filesystem::path& csv_out) {
  const auto rows_a = read_manifest(dir_a / "manifest.csv");
  const auto rows_b = read_manifest(dir_b / "manifest.csv");

  using Key = std::tuple<std::string, int, int>;
  std::map<Key, const ManifestRow*> map_b;
  for (const auto& r : rows_b) map_b[{r.object, r.position_index, r.depth_index}] = &r;
  std::map<Key, const ManifestRow*> map_a;
  for (const auto& r : rows_a) map_a[{r.object, r.position_index, r.depth_index}] = &r;

  std::string missing;
  int missing_count = 0;
  auto note_missing = [&](const Key& k, const char* side) {
    if (missing_count++ < 8)
      missing += std::string(missing.empty() ? "" : "; ") + std::get<0>(k) + "/p" +
                 std::to_string(std::get<1>(k)) + "/d" + std::to_string(std::get<2>(k)) +
                 " missing in " + side;
  };
  for (const auto& [k, r] : map_a)
    if (!map_b.count(k)) note_missing(k, "B");
  for (const auto& [k, r] : map_b)
    if (!map_a.count(k)) note_missing(k, "A");
  if (missing_count > 0)
    throw ManifestMismatch("manifests differ (" + std::to_string(missing_count) +
                           " keys): " + missing);

  std::vector<double> ssims, psnrs, maes;
  std::FILE* csv = nullptr;
  if (!csv_out.empty()) {
    csv = std::fopen(csv_out.string().c_str(), "w");
    if (!csv) throw IoError("cannot write " + csv_out.string());
    std::fprintf(csv, "object,position_index,depth_index,ssim,psnr_db,mae_pct\n");
  }
  for (const auto& [k, ra] : map_a) {
    const ManifestRow* rb = map_b.at(k);
    const render::Image8 a = render::load_png(dir_a / ra->image);
    const render::Image8 b = render::load_png(dir_b / rb->image);
    const metrics::MetricReport m = metrics::compare(a, b);
    ssims.push_back(m.ssim);
    psnrs.push_back(m.psnr_db);
    maes.push_back(m.mae_pct);
    if (csv)
      std::fprintf(csv, "%s,%d,%d,%.6f,%.4f,%.4f\n", std::get<0>(k).c_str(), std::get<1>(k),
                   std::get<2>(k), m.ssim, m.psnr_db, m.mae_pct);
  }

  CompareAggregate agg;
  agg.pairs = ssims.size();
  auto mean = [](const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
  };
  agg.ssim_mean = mean(ssims);
  agg.psnr_mean = mean(psnrs);
  agg.mae_mean = mean(maes);
  agg.ssim_std = aggregate_std(ssims, agg.ssim_mean);
  agg.psnr_std = aggregate_std(psnrs, agg.psnr_mean);
  agg.mae_std = aggregate_std(maes, agg.mae_mean);
  if (csv) {
    std::fprintf(csv, "mean,,,%.6f,%.4f,%.4f\n", agg.ssim_mean, agg.psnr_mean, agg.mae_mean);
    std::fprintf(csv, "std,,,%.6f,%.4f,%.4f\n", agg.ssim_std, agg.psnr_std, agg.mae_std);
    std::fclose(csv);
  }
  return agg;
}

}  // namespace tacchi::dataset
