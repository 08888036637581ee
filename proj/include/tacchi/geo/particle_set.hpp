#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tacchi/types.hpp"

namespace tacchi::geo {

enum class Tag : std::uint8_t { Elastomer = 0, ElastomerBottom = 1, Indenter = 2 };

/// Regular-lattice metadata kept alongside a lattice-built particle set.
/// Index layout is x-major: particle (i,j,k) lives at (i*counts.y + j)*counts.z + k,
/// with k the vertical axis. The top surface layer is k == counts.z - 1.
struct LatticeMeta {
  Vec3i counts;   // particles per axis, >= 2 each
  Vec3 dims;      // physical extent spanned by the lattice, meters
  Vec3 origin;    // position of particle (0,0,0), meters

  Vec3 spacing() const {
    return {dims.x() / (counts.x() - 1), dims.y() / (counts.y() - 1),
            dims.z() / (counts.z() - 1)};
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * counts.y() + j) * counts.z() + k;
  }
};

/// A bag of material points with a shared tag. Positions are in meters.
struct ParticleSet {
  std::vector<Vec3> positions;
  Tag tag = Tag::Elastomer;
  std::string source;                 // "lattice" or the originating file path
  std::optional<LatticeMeta> lattice; // present only for lattice-built sets

  std::size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }

  /// Axis-aligned bounding box (min, max). Requires a non-empty set.
  std::pair<Vec3, Vec3> bounding_box() const;
};

/// Builds the elastomer particle lattice: counts.x*counts.y*counts.z points
/// spanning dims, with particle (0,0,0) at the origin.
ParticleSet make_elastomer_lattice(const Vec3& dims, const Vec3i& counts,
                                   const Vec3& origin = Vec3::Zero());

/// Uniform random sampling without replacement. Deterministic for a fixed
/// seed; clamps to the available count (warns when the cloud is smaller than
/// the target). Output preserves the input point order.
ParticleSet subsample(const ParticleSet& cloud, std::size_t target_count,
                      std::uint64_t seed);

/// Rigid transform: rotate about the z axis through the coordinate origin,
/// then translate.
ParticleSet place_indenter(const ParticleSet& cloud, const Vec3& translation,
                           double z_rotation_rad = 0.0);

}  // namespace tacchi::geo
