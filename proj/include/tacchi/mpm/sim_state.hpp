#pragma once

#include <cstdint>
#include <vector>

#include "tacchi/geo/particle_set.hpp"
#include "tacchi/mpm/grid.hpp"
#include "tacchi/mpm/material.hpp"
#include "tacchi/types.hpp"

namespace tacchi::mpm {

using geo::Tag;

/// Material point state, structure-of-arrays. Elastomer particles occupy
/// [0, elastomer_count) of every array, indenter particles the rest.
struct ParticleStore {
  std::vector<Vec3> x;        // position, m
  std::vector<Vec3> v;        // velocity, m/s
  std::vector<Mat3> C;        // affine velocity, 1/s
  std::vector<Mat3> F;        // deformation gradient
  std::vector<double> mass;   // kg
  std::vector<double> volume0;  // rest volume, m^3
  std::vector<Tag> tag;

  std::size_t size() const { return x.size(); }

  void append(const Vec3& position, const Vec3& velocity, double m, double vol0, Tag t) {
    x.push_back(position);
    v.push_back(velocity);
    C.push_back(Mat3::Zero());
    F.push_back(Mat3::Identity());
    mass.push_back(m);
    volume0.push_back(vol0);
    tag.push_back(t);
  }
};

/// Map from the elastomer's top-surface lattice to particle indices, used for
/// depth extraction. Coordinates are the undeformed (reference) lattice.
struct SurfaceLattice {
  int nx = 0, ny = 0;     // lattice counts in x and y
  double x0 = 0, y0 = 0;  // reference position of lattice point (0,0), m
  double sx = 0, sy = 0;  // lattice spacing, m
  double z0 = 0;          // rest height of the top surface, m
  std::vector<std::uint32_t> particle;  // nx*ny indices, x-major

  bool valid() const { return nx >= 2 && ny >= 2 && !particle.empty(); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * ny + j;
  }
};

struct StepDiagnostics {
  double min_det_f = 1.0;   // over elastomer particles, last substep
  double max_speed = 0.0;   // m/s over all particles, last substep
};

struct SimState {
  ParticleStore particles;
  Grid grid;
  MaterialParams material;
  double dt = 1e-4;          // physics timestep, s
  std::int64_t step_count = 0;
  std::size_t elastomer_count = 0;

  SurfaceLattice surface;
  Vec3 indenter_velocity = Vec3::Zero();  // last commanded rigid velocity
  Vec3 gravity = Vec3::Zero();            // m/s^2, default off

  /// 0 = use the OpenMP default; engine parallel regions honor this so
  /// scene-level workers can pin their sims to one thread each.
  int num_threads = 0;

  StepDiagnostics diag;

  // Scatter binning scratch, rebuilt every substep (see engine.cpp).
  std::vector<std::uint32_t> bin_order;
  std::vector<std::uint32_t> bin_offsets;
};

/// Engine-level scene parameters (the configuration subset the solver needs).
struct SceneParams {
  Vec3i grid_resolution = Vec3i(256, 256, 256);
  double grid_edge = 0.033;  // m; node spacing = edge / resolution
  Vec3 grid_origin = Vec3::Zero();
  MaterialParams material;
  double dt = 1e-4;
  int fixed_bottom_layers = 2;
  Vec3 gravity = Vec3::Zero();
  /// Multiplier on the bounding-box-derived indenter particle mass. The
  /// indenter is velocity-pinned, so large values approximate the rigid
  /// (infinite-impedance) limit; the transmitted contact force scales with
  /// the indenter's node mass.
  double indenter_mass_scale = 80.0;
};

/// Assembles a simulation state: margin checks, F = I / C = 0, rest volumes
/// and masses, bottom-layer tagging, surface lattice capture, initial
/// velocities (zero for the elastomer, `indenter_velocity` for the indenter).
/// Throws EmptyScene / GridTooSmall / ConfigError.
SimState init_scene(const SceneParams& params, const geo::ParticleSet& elastomer,
                    const geo::ParticleSet& indenter,
                    const Vec3& indenter_velocity = Vec3::Zero());

/// CFL-style stability bound dt <= 0.5 dx / sqrt(E / rho).
double stable_dt_bound(const MaterialParams& material, double dx);

}  // namespace tacchi::mpm
