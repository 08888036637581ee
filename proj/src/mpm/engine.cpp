#include "tacchi/mpm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include <omp.h>

#include <Eigen/Dense>

#include "tacchi/errors.hpp"

namespace tacchi::mpm {

namespace {

// Width (in base-node indices along x) of one scatter chunk. Chunks of the
// same parity write disjoint node slabs for any width >= 2, which makes the
// two-phase scatter race-free and gives a fixed accumulation order.
constexpr int kChunkWidth = 4;

int thread_count(const SimState& state) {
  return state.num_threads > 0 ? state.num_threads : omp_get_max_threads();
}

struct BBox {
  Vec3 lo, hi;
};

BBox particle_bbox(const SimState& state, int nt) {
  const auto& xs = state.particles.x;
  const std::int64_t n = static_cast<std::int64_t>(xs.size());
  double lx = xs[0].x(), ly = xs[0].y(), lz = xs[0].z();
  double hx = lx, hy = ly, hz = lz;
#pragma omp parallel for num_threads(nt) schedule(static) \
    reduction(min : lx, ly, lz) reduction(max : hx, hy, hz)
  for (std::int64_t p = 0; p < n; ++p) {
    const Vec3& q = xs[p];
    lx = std::min(lx, q.x()); hx = std::max(hx, q.x());
    ly = std::min(ly, q.y()); hy = std::max(hy, q.y());
    lz = std::min(lz, q.z()); hz = std::max(hz, q.z());
  }
  return {Vec3(lx, ly, lz), Vec3(hx, hy, hz)};
}

int base_index(double x, double origin, double inv_dx) {
  return static_cast<int>(std::floor((x - origin) * inv_dx - 0.5));
}

}  // namespace

void zero_grid(SimState& state) {
  if (state.particles.size() == 0) throw EmptyScene("zero_grid: no particles");
  Grid& g = state.grid;
  const int nt = thread_count(state);
  const BBox bb = particle_bbox(state, nt);
  const double inv_dx = 1.0 / g.dx;

  Vec3i lo, hi;  // active node window [lo, hi)
  for (int a = 0; a < 3; ++a) {
    const int b0 = base_index(bb.lo[a], g.origin[a], inv_dx);
    const int b1 = base_index(bb.hi[a], g.origin[a], inv_dx);
    if (b0 < 0 || b1 + 2 >= g.res[a])
      throw OutOfGrid("particle range leaves the grid on axis " + std::to_string(a));
    lo[a] = b0;
    hi[a] = b1 + 3;
  }

  // Clear the union of the previous and the new window so stale values can
  // never be read, then record the new window.
  Vec3i zlo = lo.cwiseMin(g.prev_lo), zhi = hi.cwiseMax(g.prev_hi);
  if ((g.prev_hi - g.prev_lo).minCoeff() <= 0) { zlo = lo; zhi = hi; }
#pragma omp parallel for num_threads(nt) schedule(static) collapse(2)
  for (int i = zlo.x(); i < zhi.x(); ++i)
    for (int j = zlo.y(); j < zhi.y(); ++j) {
      const std::size_t row = g.index(i, j, zlo.z());
      std::fill(g.mass.begin() + row, g.mass.begin() + row + (zhi.z() - zlo.z()), 0.0);
      std::fill(g.momentum.begin() + row, g.momentum.begin() + row + (zhi.z() - zlo.z()),
                Vec3::Zero());
      std::fill(g.velocity.begin() + row, g.velocity.begin() + row + (zhi.z() - zlo.z()),
                Vec3::Zero());
    }
  g.active_lo = g.prev_lo = lo;
  g.active_hi = g.prev_hi = hi;

  // Bin particles by base-x chunk (stable counting sort by particle index).
  const std::size_t n = state.particles.size();
  const int span = hi.x() - lo.x();
  const int n_chunks = (span + kChunkWidth - 1) / kChunkWidth;
  state.bin_offsets.assign(n_chunks + 1, 0);
  state.bin_order.resize(n);
  std::vector<std::uint32_t> cursor(n_chunks, 0);
  for (std::size_t p = 0; p < n; ++p) {
    const int c = (base_index(state.particles.x[p].x(), g.origin.x(), inv_dx) - lo.x()) /
                  kChunkWidth;
    ++state.bin_offsets[c + 1];
  }
  for (int c = 0; c < n_chunks; ++c) state.bin_offsets[c + 1] += state.bin_offsets[c];
  for (std::size_t p = 0; p < n; ++p) {
    const int c = (base_index(state.particles.x[p].x(), g.origin.x(), inv_dx) - lo.x()) /
                  kChunkWidth;
    state.bin_order[state.bin_offsets[c] + cursor[c]++] = static_cast<std::uint32_t>(p);
  }
}

void particle_to_grid(SimState& state) {
  Grid& g = state.grid;
  ParticleStore& ps = state.particles;
  const double inv_dx = 1.0 / g.dx;
  const double dx = g.dx;
  const double mu = state.material.mu();
  const double lambda = state.material.lambda();
  const double stress_scale = -state.dt * 4.0 * inv_dx * inv_dx;
  const int ny = g.res.y(), nz = g.res.z();
  const int nt = thread_count(state);
  const int n_chunks = static_cast<int>(state.bin_offsets.size()) - 1;

  double min_detf = 1.0;
  std::exception_ptr err = nullptr;

  for (int phase = 0; phase < 2; ++phase) {
#pragma omp parallel for num_threads(nt) schedule(dynamic, 1) reduction(min : min_detf)
    for (int c = phase; c < n_chunks; c += 2) {
      try {
        for (std::uint32_t s = state.bin_offsets[c]; s < state.bin_offsets[c + 1]; ++s) {
          const std::uint32_t p = state.bin_order[s];
          const BSplineStencil st = make_stencil(ps.x[p], g.origin, inv_dx);
          const double m = ps.mass[p];
          Mat3 affine = m * ps.C[p];
          if (ps.tag[p] != Tag::Indenter) {
            const Mat3& F = ps.F[p];
            const double J = F.determinant();
            if (!(J > 0.0)) throw DegenerateF("particle_to_grid: det(F) <= 0");
            min_detf = std::min(min_detf, J);
            const Mat3 R = polar_rotation(F);
            const Mat3 S = 2.0 * mu * (F - R) * F.transpose() +
                           lambda * (J - 1.0) * J * Mat3::Identity();
            affine += (stress_scale * ps.volume0[p]) * S;
          }
          const double a00 = affine(0, 0), a01 = affine(0, 1), a02 = affine(0, 2);
          const double a10 = affine(1, 0), a11 = affine(1, 1), a12 = affine(1, 2);
          const double a20 = affine(2, 0), a21 = affine(2, 1), a22 = affine(2, 2);
          const double mv0 = m * ps.v[p].x(), mv1 = m * ps.v[p].y(), mv2 = m * ps.v[p].z();
          const std::size_t base_flat =
              (static_cast<std::size_t>(st.base.x()) * ny + st.base.y()) * nz + st.base.z();
          for (int a = 0; a < 3; ++a) {
            const double wa = st.w[0][a];
            const double dxa = (a - st.fx[0]) * dx;
            for (int b = 0; b < 3; ++b) {
              const double wab = wa * st.w[1][b];
              const double dxb = (b - st.fx[1]) * dx;
              const std::size_t row = base_flat + (static_cast<std::size_t>(a) * ny + b) * nz;
              const double m0 = mv0 + a00 * dxa + a01 * dxb;
              const double m1 = mv1 + a10 * dxa + a11 * dxb;
              const double m2 = mv2 + a20 * dxa + a21 * dxb;
              double* mass_row = g.mass.data() + row;
              double* mom_row = g.momentum[row].data();
              for (int cc = 0; cc < 3; ++cc) {
                const double w = wab * st.w[2][cc];
                const double dxc = (cc - st.fx[2]) * dx;
                mass_row[cc] += w * m;
                mom_row[3 * cc + 0] += w * (m0 + a02 * dxc);
                mom_row[3 * cc + 1] += w * (m1 + a12 * dxc);
                mom_row[3 * cc + 2] += w * (m2 + a22 * dxc);
              }
            }
          }
        }
      } catch (...) {
#pragma omp critical(tacchi_p2g_err)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  }
  state.diag.min_det_f = min_detf;
}

void grid_update(SimState& state) {
  Grid& g = state.grid;
  const Vec3i lo = g.active_lo, hi = g.active_hi;
  const Vec3 g_dt = state.gravity * state.dt;
  const bool with_gravity = state.gravity.squaredNorm() > 0.0;
  const int nt = thread_count(state);
#pragma omp parallel for num_threads(nt) schedule(static) collapse(2)
  for (int i = lo.x(); i < hi.x(); ++i)
    for (int j = lo.y(); j < hi.y(); ++j) {
      const std::size_t row = g.index(i, j, 0);
      for (int k = lo.z(); k < hi.z(); ++k) {
        const std::size_t n = row + k;
        if (g.mass[n] > 0.0) {
          Vec3 v = g.momentum[n] / g.mass[n];
          if (with_gravity) v += g_dt;
          // Zero normal velocity on the domain faces.
          if (i == 0 || i == g.res.x() - 1) v.x() = 0.0;
          if (j == 0 || j == g.res.y() - 1) v.y() = 0.0;
          if (k == 0 || k == g.res.z() - 1) v.z() = 0.0;
          g.velocity[n] = v;
        } else {
          g.velocity[n] = Vec3::Zero();
        }
      }
    }
}

void grid_to_particle(SimState& state) {
  Grid& g = state.grid;
  ParticleStore& ps = state.particles;
  const double inv_dx = 1.0 / g.dx;
  const double dt = state.dt;
  const int ny = g.res.y(), nz = g.res.z();
  const std::int64_t n = static_cast<std::int64_t>(ps.size());
  const int nt = thread_count(state);

#pragma omp parallel for num_threads(nt) schedule(static)
  for (std::int64_t p = 0; p < n; ++p) {
    if (ps.tag[p] == Tag::Indenter) continue;  // rigid: velocity comes from apply_boundary
    const BSplineStencil st = make_stencil(ps.x[p], g.origin, inv_dx);
    const std::size_t base_flat =
        (static_cast<std::size_t>(st.base.x()) * ny + st.base.y()) * nz + st.base.z();
    // v = sum w V;  B = sum w V dpos^T accumulated in node-spacing units.
    double v0 = 0, v1 = 0, v2 = 0;
    double b00 = 0, b01 = 0, b02 = 0, b10 = 0, b11 = 0, b12 = 0, b20 = 0, b21 = 0, b22 = 0;
    for (int a = 0; a < 3; ++a) {
      const double wa = st.w[0][a];
      const double da = a - st.fx[0];
      for (int b = 0; b < 3; ++b) {
        const double wab = wa * st.w[1][b];
        const double db = b - st.fx[1];
        const std::size_t row = base_flat + (static_cast<std::size_t>(a) * ny + b) * nz;
        const double* vel_row = g.velocity[row].data();
        for (int c = 0; c < 3; ++c) {
          const double w = wab * st.w[2][c];
          const double dc = c - st.fx[2];
          const double wv0 = w * vel_row[3 * c + 0];
          const double wv1 = w * vel_row[3 * c + 1];
          const double wv2 = w * vel_row[3 * c + 2];
          v0 += wv0; v1 += wv1; v2 += wv2;
          b00 += wv0 * da; b01 += wv0 * db; b02 += wv0 * dc;
          b10 += wv1 * da; b11 += wv1 * db; b12 += wv1 * dc;
          b20 += wv2 * da; b21 += wv2 * db; b22 += wv2 * dc;
        }
      }
    }
    ps.v[p] = Vec3(v0, v1, v2);
    Mat3& C = ps.C[p];
    const double k = 4.0 * inv_dx;
    C << k * b00, k * b01, k * b02, k * b10, k * b11, k * b12, k * b20, k * b21, k * b22;
    ps.F[p] = (Mat3::Identity() + dt * C) * ps.F[p];
  }
}

void apply_boundary(SimState& state, const Vec3& indenter_velocity) {
  ParticleStore& ps = state.particles;
  const std::int64_t n = static_cast<std::int64_t>(ps.size());
  const int nt = thread_count(state);
#pragma omp parallel for num_threads(nt) schedule(static)
  for (std::int64_t p = 0; p < n; ++p) {
    if (ps.tag[p] == Tag::Indenter)
      ps.v[p] = indenter_velocity;
    else if (ps.tag[p] == Tag::ElastomerBottom)
      ps.v[p] = Vec3::Zero();
  }
  state.indenter_velocity = indenter_velocity;
}

void advect(SimState& state) {
  ParticleStore& ps = state.particles;
  const double dt = state.dt;
  const std::int64_t n = static_cast<std::int64_t>(ps.size());
  const int nt = thread_count(state);
  double max_v2 = 0.0;
#pragma omp parallel for num_threads(nt) schedule(static) reduction(max : max_v2)
  for (std::int64_t p = 0; p < n; ++p) {
    ps.x[p] += dt * ps.v[p];
    max_v2 = std::max(max_v2, ps.v[p].squaredNorm());
  }
  state.diag.max_speed = std::sqrt(max_v2);
  ++state.step_count;

  const BBox bb = particle_bbox(state, nt);
  const Grid& g = state.grid;
  if (!g.in_range(bb.lo) || !g.in_range(bb.hi))
    throw OutOfGrid("advect: particles left the stencil-safe margin (check dt and scene size)");
}

void step(SimState& state, const Vec3& indenter_velocity, int n_substeps) {
  for (int s = 0; s < n_substeps; ++s) {
    zero_grid(state);
    particle_to_grid(state);
    grid_update(state);
    grid_to_particle(state);
    apply_boundary(state, indenter_velocity);
    advect(state);
  }
}

}  // namespace tacchi::mpm
