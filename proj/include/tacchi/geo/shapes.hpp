#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tacchi/geo/particle_set.hpp"

namespace tacchi::geo {

/// Names of the analytic indenter shapes shipped for tests and dataset runs.
const std::vector<std::string>& shape_names();

bool is_known_shape(const std::string& name);

/// Samples `n_points` uniformly inside the named solid (rejection sampling,
/// deterministic for a fixed seed). The contact feature faces -z with the
/// lowest point at z = 0; positions are in meters.
ParticleSet generate_shape_cloud(const std::string& name, std::size_t n_points,
                                 std::uint64_t seed);

}  // namespace tacchi::geo
