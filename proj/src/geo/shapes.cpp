#include "tacchi/geo/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "tacchi/errors.hpp"

namespace tacchi::geo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// All shape definitions work in millimeters; sampled points are converted to
// meters on output. A shape is an implicit solid inside a bounding box, with
// its contact feature facing -z and the lowest material at z = 0.
struct ShapeDef {
  Vec3 bbox_lo, bbox_hi;                               // mm
  std::function<bool(double, double, double)> inside;  // mm coordinates
};

double sq(double v) { return v * v; }
double rad2(double x, double y) { return x * x + y * y; }

// 2-D profile helpers (xy plane, mm).
bool in_disk(double x, double y, double r) { return rad2(x, y) <= r * r; }
bool in_rect(double x, double y, double hx, double hy) {
  return std::abs(x) <= hx && std::abs(y) <= hy;
}
bool in_regular_polygon(double x, double y, int sides, double circumradius) {
  // Inside iff within every half-plane through the polygon edges.
  const double apothem = circumradius * std::cos(kPi / sides);
  for (int s = 0; s < sides; ++s) {
    const double a = (2.0 * kPi * s + kPi) / sides;  // edge normal angle
    if (x * std::cos(a) + y * std::sin(a) > apothem) return false;
  }
  return true;
}
bool in_triangle(double x, double y, double side) {
  // Equilateral triangle, centroid at the origin, one vertex on +y.
  const double r = side / std::sqrt(3.0);
  const double apothem = r / 2.0;
  for (int s = 0; s < 3; ++s) {
    const double a = -kPi / 2.0 + 2.0 * kPi * s / 3.0;
    if (x * std::cos(a) + y * std::sin(a) > apothem) return false;
  }
  return true;
}

// Pseudo-random bump field for the "random" shape; the layout is part of the
// shape definition, so its seed is fixed.
struct BumpField {
  std::vector<double> cx, cy, amp, inv_s2;
  BumpField() {
    std::mt19937_64 rng(0x7ac371u);
    auto u = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 28; ++i) {
      cx.push_back(-3.2 + 6.4 * u());
      cy.push_back(-3.2 + 6.4 * u());
      amp.push_back(0.25 + 0.85 * u());
      const double s = 0.45 + 0.75 * u();
      inv_s2.push_back(1.0 / (2.0 * s * s));
    }
  }
  double height(double x, double y) const {
    double h = 0.0;
    for (std::size_t i = 0; i < cx.size(); ++i)
      h += amp[i] * std::exp(-(sq(x - cx[i]) + sq(y - cy[i])) * inv_s2[i]);
    return std::min(h, 1.4);
  }
};

ShapeDef make_shape(const std::string& name) {
  if (name == "sphere") {
    return {{-3, -3, 0}, {3, 3, 6}, [](double x, double y, double z) {
              return rad2(x, y) + sq(z - 3.0) <= 9.0;
            }};
  }
  if (name == "sphere2") {
    return {{-2, -2, 0}, {2, 2, 4}, [](double x, double y, double z) {
              return rad2(x, y) + sq(z - 2.0) <= 4.0;
            }};
  }
  if (name == "cone") {
    // Apex down, 45 degree half-angle, base radius 3.5.
    return {{-3.5, -3.5, 0}, {3.5, 3.5, 3.5}, [](double x, double y, double z) {
              return rad2(x, y) <= z * z && z <= 3.5;
            }};
  }
  if (name == "cylinder") {
    return {{-3, -3, 0}, {3, 3, 3}, [](double x, double y, double z) {
              (void)z;
              return in_disk(x, y, 3.0);
            }};
  }
  if (name == "cylinder_shell") {
    return {{-3, -3, 0}, {3, 3, 3}, [](double x, double y, double z) {
              (void)z;
              const double r2 = rad2(x, y);
              return r2 <= 9.0 && r2 >= sq(2.1);
            }};
  }
  if (name == "cylinder_side") {
    // Horizontal cylinder, axis along y at height z = 2, line contact.
    return {{-2, -4, 0}, {2, 4, 4}, [](double x, double y, double z) {
              (void)y;
              return sq(x) + sq(z - 2.0) <= 4.0;
            }};
  }
  if (name == "curved_surface") {
    // Shallow spherical cap as the bottom of an 8x8 slab.
    return {{-4, -4, 0}, {4, 4, 3}, [](double x, double y, double z) {
              return z >= rad2(x, y) / 24.0;
            }};
  }
  if (name == "flat_slab") {
    return {{-4, -4, 0}, {4, 4, 3}, [](double, double, double) { return true; }};
  }
  if (name == "dot_in") {
    // Flat disk with a recessed central dot.
    return {{-3.5, -3.5, 0}, {3.5, 3.5, 3}, [](double x, double y, double z) {
              if (!in_disk(x, y, 3.5)) return false;
              return !(in_disk(x, y, 0.7) && z < 0.9);
            }};
  }
  if (name == "dots") {
    // 3x3 grid of studs under a carrier plate.
    return {{-3.5, -3.5, 0}, {3.5, 3.5, 3}, [](double x, double y, double z) {
              if (z >= 1.0) return in_rect(x, y, 3.5, 3.5);
              const double gx = std::round(x / 2.2) * 2.2;
              const double gy = std::round(y / 2.2) * 2.2;
              return std::abs(gx) <= 2.3 && std::abs(gy) <= 2.3 &&
                     in_disk(x - gx, y - gy, 0.55);
            }};
  }
  if (name == "hexagon") {
    return {{-3.5, -3.5, 0}, {3.5, 3.5, 3}, [](double x, double y, double z) {
              (void)z;
              return in_regular_polygon(x, y, 6, 3.5);
            }};
  }
  if (name == "triangle") {
    return {{-4, -4, 0}, {4, 4, 3}, [](double x, double y, double z) {
              (void)z;
              return in_triangle(x, y, 6.5);
            }};
  }
  if (name == "prism") {
    // Triangular prism on its edge: a ridge along y.
    return {{-3, -4, 0}, {3, 4, 3}, [](double x, double y, double z) {
              (void)y;
              return std::abs(x) <= z && z <= 3.0;
            }};
  }
  if (name == "line") {
    return {{-0.6, -4, 0}, {0.6, 4, 2}, [](double x, double y, double z) {
              (void)z;
              return in_rect(x, y, 0.6, 4.0);
            }};
  }
  if (name == "parallel_lines") {
    return {{-3.4, -4, 0}, {3.4, 4, 3}, [](double x, double y, double z) {
              if (z >= 1.5) return in_rect(x, y, 3.4, 4.0);
              const double gx = std::round(x / 2.4) * 2.4;
              return std::abs(gx) <= 2.5 && std::abs(x - gx) <= 0.45 && std::abs(y) <= 4.0;
            }};
  }
  if (name == "cross_lines") {
    return {{-4, -4, 0}, {4, 4, 3}, [](double x, double y, double z) {
              if (z >= 1.5) return in_rect(x, y, 4.0, 4.0);
              return (std::abs(x) <= 0.45 || std::abs(y) <= 0.45) && in_rect(x, y, 4.0, 4.0);
            }};
  }
  if (name == "moon") {
    // Crescent: disk minus an offset disk.
    return {{-3, -3, 0}, {3, 3, 2}, [](double x, double y, double z) {
              (void)z;
              return in_disk(x, y, 3.0) && !in_disk(x - 1.4, y, 2.4);
            }};
  }
  if (name == "pacman") {
    // Disk minus a 60 degree wedge opening toward +x.
    return {{-3, -3, 0}, {3, 3, 2}, [](double x, double y, double z) {
              (void)z;
              if (!in_disk(x, y, 3.0)) return false;
              const double ang = std::atan2(y, x);
              return std::abs(ang) > kPi / 6.0;
            }};
  }
  if (name == "torus") {
    return {{-3.2, -3.2, 0}, {3.2, 3.2, 1.8}, [](double x, double y, double z) {
              const double rho = std::sqrt(rad2(x, y));
              return sq(rho - 2.3) + sq(z - 0.9) <= sq(0.9);
            }};
  }
  if (name == "wave1") {
    // Parallel sinusoidal ridges as the bottom of a slab.
    return {{-4, -4, 0}, {4, 4, 3}, [](double x, double y, double z) {
              (void)y;
              const double floor_z = 0.5 * (1.0 + std::sin(2.0 * kPi * x / 2.7));
              return z >= floor_z;
            }};
  }
  if (name == "random") {
    static const BumpField field;
    return {{-4, -4, 0}, {4, 4, 3}, [](double x, double y, double z) {
              return z >= field.height(x, y);
            }};
  }
  throw ConfigError("unknown shape: " + name);
}

}  // namespace

const std::vector<std::string>& shape_names() {
  static const std::vector<std::string> names = {
      "cone",   "cross_lines", "curved_surface", "cylinder", "cylinder_shell",
      "cylinder_side", "dot_in", "dots",  "flat_slab", "hexagon", "line",
      "moon",   "pacman", "parallel_lines", "prism", "random", "sphere",
      "sphere2", "torus", "triangle", "wave1"};
  return names;
}

bool is_known_shape(const std::string& name) {
  const auto& names = shape_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

ParticleSet generate_shape_cloud(const std::string& name, std::size_t n_points,
                                 std::uint64_t seed) {
  const ShapeDef def = make_shape(name);
  std::mt19937_64 rng(seed);
  auto u = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  const Vec3 span = def.bbox_hi - def.bbox_lo;

  ParticleSet set;
  set.tag = Tag::Indenter;
  set.source = "shape:" + name;
  set.positions.reserve(n_points);
  while (set.positions.size() < n_points) {
    const double x = def.bbox_lo.x() + span.x() * u();
    const double y = def.bbox_lo.y() + span.y() * u();
    const double z = def.bbox_lo.z() + span.z() * u();
    if (def.inside(x, y, z)) set.positions.emplace_back(x * 1e-3, y * 1e-3, z * 1e-3);
  }
  return set;
}

}  // namespace tacchi::geo
