#pragma once

#include <optional>
#include <vector>

#include "tacchi/render/depth_map.hpp"
#include "tacchi/render/image.hpp"
#include "tacchi/types.hpp"

namespace tacchi::render {

struct LightSource {
  Vec3 direction = Vec3(0, 0, -1);  // normalized on construction/load
  Vec3 diffuse = Vec3(1, 1, 1);     // per-channel intensity, [0,1]
  Vec3 specular = Vec3(0, 0, 0);
};

struct RenderParams {
  double ambient_k = 1.0;
  double diffuse_k = 0.6;
  double specular_k = 0.3;
  double shininess = 24.0;
  Vec3 ambient_light = Vec3(0.35, 0.38, 0.45);
  Vec3 view_dir = Vec3(0, 0, -1);
  std::optional<Image8> background;  // replaces the ambient light per pixel
};

/// Per-pixel unit surface normals of a depth map. The height field is
/// H = -depth; gradients use [-1, 0, 1]/(2r) central differences with
/// one-sided differences at the borders, and N = normalize(dH/dx, dH/dy, -1).
struct NormalMap {
  int width = 0, height = 0;
  std::vector<Vec3> normals;

  const Vec3& at(int row, int col) const {
    return normals[static_cast<std::size_t>(row) * width + col];
  }
};

NormalMap surface_normals(const DepthMap& depth);

/// Phong shading of a depth map: per channel
///   I = k_a*i_a + sum_m [ k_d (L.N) i_d + k_s (R.V)^alpha i_s ],
/// with R = 2(L.N)N - L, both dot products clamped at zero and the specular
/// term gated on a lit surface. Clamped to [0,1], quantized to 8 bits.
Image8 phong_render(const DepthMap& depth, const std::vector<LightSource>& lights,
                    const RenderParams& params);

}  // namespace tacchi::render
