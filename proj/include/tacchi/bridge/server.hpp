#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "tacchi/config/scene_config.hpp"

namespace tacchi::bridge {

/// Line transport callbacks: the reader returns false on end of stream.
using LineReader = std::function<bool(std::string&)>;
using LineWriter = std::function<void(const std::string&)>;

/// Serves one newline-delimited-JSON session ("tacchi/1"):
///   {"type":"init", ...} -> {"type":"ready", ...}
///   {"type":"step", ...} -> {"type":"reply", ...}
///   {"type":"end"}       -> {"type":"done", ...}
/// Malformed or out-of-order messages yield {"type":"error", ...} with the
/// offending line echoed; the session keeps running. `base` supplies defaults
/// that an init message may override; `session_root` hosts session output
/// directories.
void run_protocol(const LineReader& read_line, const LineWriter& write_line,
                  const config::SceneConfig& base, const std::string& session_root);

/// stdin/stdout transport.
void serve_stdio(const config::SceneConfig& base, const std::string& session_root);

/// TCP transport: accepts `max_connections` sequential connections on the
/// port (0 = unlimited), one session per connection. Returns the bound port.
int serve_tcp(const config::SceneConfig& base, const std::string& session_root, int port,
              int max_connections = 0);

}  // namespace tacchi::bridge
