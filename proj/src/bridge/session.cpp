#include "tacchi/bridge/session.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "tacchi/errors.hpp"
#include "tacchi/mpm/engine.hpp"
#include "tacchi/render/depth_map.hpp"
#include "tacchi/sim/scene_builder.hpp"

namespace tacchi::bridge {

Session::Session(const config::SceneConfig& cfg, std::filesystem::path session_dir,
                 std::string object, TerminalCondition terminal)
    : cfg_(cfg), dir_(std::move(session_dir)), object_(std::move(object)), term_(terminal) {
  cfg_.validate();
  if (!term_.any_bound()) {
    // Default bound: the deepest configured press level.
    double deepest = 0.0;
    for (double d : cfg_.press.depths_mm) deepest = std::max(deepest, d);
    term_.max_depth_m = deepest * 1e-3;
  }
  gap_m_ = cfg_.indenter.gap_mm * 1e-3;
  const geo::ParticleSet cloud = sim::indenter_cloud_for(cfg_, object_);
  const geo::ParticleSet placed = sim::place_for_press(cfg_, cloud, 0.0, 0.0);
  state_ = sim::build_sim(cfg_, placed);
  std::filesystem::create_directories(dir_);
}

double Session::depth() const {
  return std::max(0.0, -offset_.z() - gap_m_);
}

StepReply Session::make_reply(bool request_image) {
  StepReply reply;
  reply.step_index = control_steps_;
  reply.depth_m = depth();
  reply.terminal = terminal_;
  if (request_image) {
    const sim::Capture cap = sim::capture(state_, cfg_, object_);
    char name[64];
    std::snprintf(name, sizeof(name), "step_%06lld", static_cast<long long>(control_steps_));
    reply.image_path = (dir_ / (std::string(name) + ".png")).string();
    reply.depth_map_path = (dir_ / (std::string(name) + ".depth")).string();
    render::save_png(cap.image, reply.image_path);
    render::save_depth_map(cap.depth, reply.depth_map_path);
  }

  std::ofstream log(dir_ / "steps.jsonl", std::ios::app);
  nlohmann::json j = {{"step", reply.step_index},
                      {"depth_m", reply.depth_m},
                      {"terminal", reply.terminal},
                      {"image", reply.image_path},
                      {"depth_map", reply.depth_map_path}};
  log << j.dump() << '\n';
  return reply;
}

StepReply Session::handle_command(const StepCommand& cmd) {
  if (state_.particles.size() == 0) throw SessionNotInitialized("session has no scene");
  if (!cmd.vector.allFinite()) throw ProtocolError("step vector must be finite");
  if (!std::isnan(cmd.sim_time)) {
    if (cmd.sim_time < last_sim_time_ - 1e-12)
      throw NonMonotonicTime("sim_time " + std::to_string(cmd.sim_time) +
                             " decreased (last " + std::to_string(last_sim_time_) + ")");
    last_sim_time_ = cmd.sim_time;
  }

  if (terminal_) {
    // Physics frozen: repeat the terminal state.
    StepReply reply = last_reply_;
    reply.terminal = true;
    return reply;
  }

  const double dt_control = control_dt();
  Vec3 velocity;
  if (cmd.mode == CommandMode::Velocity) {
    velocity = cmd.vector;
  } else {
    velocity = (cmd.vector - offset_) / dt_control;
  }

  mpm::step(state_, velocity, cfg_.time.substeps_per_control_step);
  if (cmd.mode == CommandMode::Position)
    offset_ = cmd.vector;
  else
    offset_ += velocity * dt_control;
  ++control_steps_;

  if (depth() >= term_.max_depth_m - 1e-12) terminal_ = true;
  if (term_.max_steps > 0 && control_steps_ >= term_.max_steps) terminal_ = true;

  last_reply_ = make_reply(cmd.request_image);
  return last_reply_;
}

}  // namespace tacchi::bridge
