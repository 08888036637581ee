#include "tacchi/bridge/server.hpp"

#include <cstring>
#include <iostream>
#include <memory>
#include <optional>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "tacchi/bridge/session.hpp"
#include "tacchi/errors.hpp"

namespace tacchi::bridge {

using nlohmann::json;

namespace {

constexpr const char* kProtocolVersion = "tacchi/1";

json error_reply(const std::string& error, const std::string& message, const std::string& echo) {
  return {{"type", "error"}, {"error", error}, {"message", message}, {"echo", echo}};
}

StepCommand parse_step(const json& j) {
  StepCommand cmd;
  const std::string mode = j.value("mode", "velocity");
  if (mode == "velocity")
    cmd.mode = CommandMode::Velocity;
  else if (mode == "position")
    cmd.mode = CommandMode::Position;
  else
    throw ProtocolError("unknown step mode '" + mode + "'");
  if (!j.contains("vector") || !j["vector"].is_array() || j["vector"].size() != 3)
    throw ProtocolError("step requires a 3-element 'vector'");
  for (int a = 0; a < 3; ++a) cmd.vector[a] = j["vector"][a].get<double>();
  if (j.contains("sim_time")) cmd.sim_time = j["sim_time"].get<double>();
  cmd.request_image = j.value("request_image", false);
  return cmd;
}

}  // namespace

void run_protocol(const LineReader& read_line, const LineWriter& write_line,
                  const config::SceneConfig& base, const std::string& session_root) {
  std::unique_ptr<Session> session;
  int session_counter = 0;
  std::string line;
  while (read_line(line)) {
    if (line.empty()) continue;
    json msg = json::parse(line, nullptr, false);
    if (msg.is_discarded()) {
      write_line(error_reply("ProtocolError", "not valid JSON", line).dump());
      continue;
    }
    const std::string type = msg.value("type", "");
    try {
      if (type == "init") {
        config::SceneConfig cfg = base;
        if (msg.contains("config_path"))
          cfg = config::from_json_file(msg["config_path"].get<std::string>());
        if (msg.contains("config"))
          cfg = config::from_json_string(msg["config"].dump());
        const std::string object = msg.value("object", "");
        TerminalCondition term;
        if (msg.contains("max_depth_m")) term.max_depth_m = msg["max_depth_m"].get<double>();
        if (msg.contains("max_steps")) term.max_steps = msg["max_steps"].get<std::int64_t>();
        std::string dir = msg.value("session_dir", "");
        if (dir.empty())
          dir = session_root + "/session_" + std::to_string(session_counter++);
        session = std::make_unique<Session>(cfg, dir, object, term);
        write_line(json{{"type", "ready"},
                        {"version", kProtocolVersion},
                        {"particles", session->state().particles.size()},
                        {"dt_s", cfg.time.dt_s},
                        {"substeps_per_control_step", cfg.time.substeps_per_control_step},
                        {"session_dir", session->dir().string()}}
                       .dump());
      } else if (type == "step") {
        if (!session) throw SessionNotInitialized("step before init");
        const StepReply reply = session->handle_command(parse_step(msg));
        write_line(json{{"type", "reply"},
                        {"step", reply.step_index},
                        {"depth_m", reply.depth_m},
                        {"terminal", reply.terminal},
                        {"image", reply.image_path},
                        {"depth_map", reply.depth_map_path}}
                       .dump());
      } else if (type == "end") {
        const std::int64_t steps = session ? session->control_steps() : 0;
        session.reset();
        write_line(json{{"type", "done"}, {"steps", steps}}.dump());
        return;
      } else {
        throw ProtocolError("unknown message type '" + type + "'");
      }
    } catch (const SessionNotInitialized& e) {
      write_line(error_reply("SessionNotInitialized", e.what(), line).dump());
    } catch (const NonMonotonicTime& e) {
      write_line(error_reply("NonMonotonicTime", e.what(), line).dump());
    } catch (const ProtocolError& e) {
      write_line(error_reply("ProtocolError", e.what(), line).dump());
    } catch (const Error& e) {
      // Physics or configuration fault: report and keep serving.
      write_line(error_reply("PhysicsFault", e.what(), line).dump());
    }
  }
}

void serve_stdio(const config::SceneConfig& base, const std::string& session_root) {
  run_protocol(
      [](std::string& line) { return static_cast<bool>(std::getline(std::cin, line)); },
      [](const std::string& line) {
        std::cout << line << '\n';
        std::cout.flush();
      },
      base, session_root);
}

int serve_tcp(const config::SceneConfig& base, const std::string& session_root, int port,
              int max_connections) {
  const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener < 0) throw IoError("socket() failed");
  int yes = 1;
  ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(listener);
    throw IoError("bind() failed on port " + std::to_string(port));
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listener, reinterpret_cast<sockaddr*>(&addr), &len);
  const int bound_port = ntohs(addr.sin_port);
  if (::listen(listener, 1) != 0) {
    ::close(listener);
    throw IoError("listen() failed");
  }
  std::cerr << "[tacchi] bridge listening on 127.0.0.1:" << bound_port << "\n";

  int served = 0;
  while (max_connections == 0 || served < max_connections) {
    const int client = ::accept(listener, nullptr, nullptr);
    if (client < 0) break;
    std::string buffer;
    auto read_line = [client, &buffer](std::string& line) {
      for (;;) {
        const std::size_t pos = buffer.find('\n');
        if (pos != std::string::npos) {
          line = buffer.substr(0, pos);
          buffer.erase(0, pos + 1);
          return true;
        }
        char chunk[4096];
        const ssize_t n = ::read(client, chunk, sizeof(chunk));
        if (n <= 0) return false;
        buffer.append(chunk, static_cast<std::size_t>(n));
      }
    };
    auto write_line = [client](const std::string& line) {
      std::string out = line + "\n";
      std::size_t sent = 0;
      while (sent < out.size()) {
        const ssize_t n = ::write(client, out.data() + sent, out.size() - sent);
        if (n <= 0) return;
        sent += static_cast<std::size_t>(n);
      }
    };
    run_protocol(read_line, write_line, base, session_root);
    ::close(client);
    ++served;
  }
  ::close(listener);
  return bound_port;
}

}  // namespace tacchi::bridge
