#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>

#include "tacchi/config/scene_config.hpp"
#include "tacchi/mpm/sim_state.hpp"

namespace tacchi::bridge {

enum class CommandMode { Velocity, Position };

/// One external control step. `vector` is a rigid velocity (m/s) in Velocity
/// mode or a target displacement of the indenter from its initial placement
/// (m) in Position mode. `sim_time` must be non-decreasing across commands.
struct StepCommand {
  CommandMode mode = CommandMode::Velocity;
  Vec3 vector = Vec3::Zero();
  double sim_time = std::numeric_limits<double>::quiet_NaN();  // optional
  bool request_image = false;
};

struct StepReply {
  std::int64_t step_index = 0;
  double depth_m = 0.0;       // commanded indentation depth
  bool terminal = false;
  std::string image_path;     // empty unless an image was requested
  std::string depth_map_path;
};

struct TerminalCondition {
  double max_depth_m = std::numeric_limits<double>::infinity();
  std::int64_t max_steps = 0;  // 0 = unbounded

  bool any_bound() const {
    return max_depth_m < std::numeric_limits<double>::infinity() || max_steps > 0;
  }
};

/// Owns one coupled simulation: scene built from the config, driven by
/// per-step commands from a single control thread. One control step advances
/// the physics by substeps_per_control_step internal steps. Once a terminal
/// condition is hit the physics freezes and replies repeat the terminal state.
class Session {
 public:
  Session(const config::SceneConfig& cfg, std::filesystem::path session_dir,
          std::string object = "", TerminalCondition terminal = {});

  StepReply handle_command(const StepCommand& cmd);

  const mpm::SimState& state() const { return state_; }
  const config::SceneConfig& scene_config() const { return cfg_; }
  double control_dt() const { return cfg_.time.dt_s * cfg_.time.substeps_per_control_step; }
  double depth() const;
  bool terminal() const { return terminal_; }
  std::int64_t control_steps() const { return control_steps_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  StepReply make_reply(bool request_image);

  config::SceneConfig cfg_;
  std::filesystem::path dir_;
  std::string object_;
  TerminalCondition term_;
  mpm::SimState state_;
  Vec3 offset_ = Vec3::Zero();  // accumulated commanded displacement
  double gap_m_ = 0.0;
  double last_sim_time_ = -std::numeric_limits<double>::infinity();
  std::int64_t control_steps_ = 0;
  bool terminal_ = false;
  StepReply last_reply_;
};

}  // namespace tacchi::bridge
