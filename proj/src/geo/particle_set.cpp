#include "tacchi/geo/particle_set.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>

#include "tacchi/errors.hpp"

namespace tacchi::geo {

std::pair<Vec3, Vec3> ParticleSet::bounding_box() const {
  if (positions.empty()) throw EmptyCloud("bounding_box: empty particle set");
  Vec3 lo = positions.front(), hi = positions.front();
  for (const Vec3& p : positions) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return {lo, hi};
}

ParticleSet make_elastomer_lattice(const Vec3& dims, const Vec3i& counts,
                                   const Vec3& origin) {
  if ((counts.array() < 2).any())
    throw ConfigError("make_elastomer_lattice: counts must be >= 2 per axis");
  LatticeMeta meta{counts, dims, origin};
  const Vec3 h = meta.spacing();

  ParticleSet set;
  set.tag = Tag::Elastomer;
  set.source = "lattice";
  set.positions.reserve(static_cast<std::size_t>(counts.x()) * counts.y() * counts.z());
  for (int i = 0; i < counts.x(); ++i)
    for (int j = 0; j < counts.y(); ++j)
      for (int k = 0; k < counts.z(); ++k)
        set.positions.emplace_back(origin.x() + i * h.x(), origin.y() + j * h.y(),
                                   origin.z() + k * h.z());
  set.lattice = meta;
  return set;
}

namespace {

// Bounded draw with rejection; stable across standard library versions,
// unlike std::uniform_int_distribution.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

ParticleSet subsample(const ParticleSet& cloud, std::size_t target_count,
                      std::uint64_t seed) {
  if (target_count < 1) target_count = 1;
  const std::size_t n = cloud.size();
  if (n == 0) throw EmptyCloud("subsample: empty cloud");
  if (target_count >= n) {
    if (target_count > n)
      std::cerr << "[tacchi] subsample: target " << target_count << " exceeds cloud size "
                << n << ", using the full cloud\n";
    return cloud;
  }

  // Partial Fisher-Yates over an index array; the chosen indices are then
  // sorted so the output keeps the input's point order.
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < target_count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(draw_below(rng, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(target_count);
  std::sort(idx.begin(), idx.end());

  ParticleSet out;
  out.tag = cloud.tag;
  out.source = cloud.source;
  out.positions.reserve(target_count);
  for (std::uint32_t i : idx) out.positions.push_back(cloud.positions[i]);
  return out;
}

ParticleSet place_indenter(const ParticleSet& cloud, const Vec3& translation,
                           double z_rotation_rad) {
  ParticleSet out = cloud;
  const double c = std::cos(z_rotation_rad), s = std::sin(z_rotation_rad);
  for (Vec3& p : out.positions) {
    const double x = c * p.x() - s * p.y();
    const double y = s * p.x() + c * p.y();
    p = Vec3(x, y, p.z()) + translation;
  }
  return out;
}

}  // namespace tacchi::geo
