#include "tacchi/render/phong.hpp"

#include <algorithm>
#include <cmath>

#include "tacchi/errors.hpp"

namespace tacchi::render {

NormalMap surface_normals(const DepthMap& depth) {
  if (!(depth.pixel_to_meter > 0.0)) throw ConfigError("surface_normals: pixel_to_meter <= 0");
  NormalMap nm;
  nm.width = depth.width;
  nm.height = depth.height;
  nm.normals.resize(static_cast<std::size_t>(depth.width) * depth.height);

  const double inv_2r = 1.0 / (2.0 * depth.pixel_to_meter);
  const double inv_r = 1.0 / depth.pixel_to_meter;
  auto H = [&depth](int row, int col) { return -depth.at(row, col); };

  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      double gx, gy;
      if (u == 0)
        gx = (H(v, 1) - H(v, 0)) * inv_r;
      else if (u == depth.width - 1)
        gx = (H(v, u) - H(v, u - 1)) * inv_r;
      else
        gx = (H(v, u + 1) - H(v, u - 1)) * inv_2r;
      if (v == 0)
        gy = (H(1, u) - H(0, u)) * inv_r;
      else if (v == depth.height - 1)
        gy = (H(v, u) - H(v - 1, u)) * inv_r;
      else
        gy = (H(v + 1, u) - H(v - 1, u)) * inv_2r;
      Vec3 n(gx, gy, -1.0);
      nm.normals[static_cast<std::size_t>(v) * depth.width + u] = n / n.norm();
    }
  }
  return nm;
}

Image8 phong_render(const DepthMap& depth, const std::vector<LightSource>& lights,
                    const RenderParams& params) {
  if (lights.empty()) throw ConfigError("phong_render: at least one light source required");
  if (params.background &&
      (params.background->width != depth.width || params.background->height != depth.height))
    throw ShapeMismatch("phong_render: background image size differs from the depth map");

  const NormalMap nm = surface_normals(depth);
  const Vec3 view = params.view_dir.normalized();

  std::vector<LightSource> rig = lights;
  for (LightSource& l : rig) l.direction.normalize();

  Image8 image(depth.width, depth.height);
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      const Vec3& n = nm.at(v, u);
      Vec3 color;
      if (params.background) {
        color = params.ambient_k * Vec3(params.background->at(v, u, 0) / 255.0,
                                        params.background->at(v, u, 1) / 255.0,
                                        params.background->at(v, u, 2) / 255.0);
      } else {
        color = params.ambient_k * params.ambient_light;
      }
      for (const LightSource& l : rig) {
        const double ln = l.direction.dot(n);
        if (ln <= 0.0) continue;  // unlit from this source
        color += params.diffuse_k * ln * l.diffuse;
        const Vec3 r = 2.0 * ln * n - l.direction;
        const double rv = r.dot(view);
        if (rv > 0.0)
          color += params.specular_k * std::pow(rv, params.shininess) * l.specular;
      }
      for (int ch = 0; ch < 3; ++ch) {
        const double c = std::clamp(color[ch], 0.0, 1.0);
        image.at(v, u, ch) = static_cast<std::uint8_t>(std::lround(c * 255.0));
      }
    }
  }
  return image;
}

}  // namespace tacchi::render
