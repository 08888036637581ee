#pragma once

#include <filesystem>

#include "tacchi/geo/particle_set.hpp"

namespace tacchi::geo {

/// Loads an ASCII point cloud. Supported formats, chosen by content:
///  - ASCII PLY with float/double vertex properties x y z
///  - plain whitespace-separated XYZ text, one point per line
/// File coordinates are millimeters; positions are returned in meters.
ParticleSet load_point_cloud(const std::filesystem::path& path);

/// Writes a cloud as XYZ or ASCII PLY depending on the file extension
/// (".ply" selects PLY). Coordinates are written in millimeters.
void save_point_cloud(const ParticleSet& cloud, const std::filesystem::path& path);

}  // namespace tacchi::geo
