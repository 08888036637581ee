#pragma once

#include <filesystem>
#include <vector>

namespace tacchi::render {

/// Scalar field of elastomer surface displacement below the rest plane,
/// meters, row-major (row = image y, column = image x). Positive values are
/// indentation; bulges above the rest plane stay negative.
struct DepthMap {
  int width = 0, height = 0;
  double pixel_to_meter = 0.0;
  std::vector<double> values;

  double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
  double at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * width + col];
  }
  double max_value() const;
  double max_abs_value() const;
};

/// File format: one JSON header line {"width":..,"height":..,"pixel_to_meter":..}
/// followed by width*height little-endian float32 values, row-major.
void save_depth_map(const DepthMap& map, const std::filesystem::path& path);
DepthMap load_depth_map(const std::filesystem::path& path);

/// Per-object crop alignment: pixel offset of the crop window relative to the
/// centered position, and a resampling scale (source pixels per output pixel).
struct CropAlignment {
  double offset_x = 0.0, offset_y = 0.0;
  double scale = 1.0;
};

/// Crops (and optionally rescales) a source depth map to out_width x out_height.
/// Output pixel (u,v) samples the source at
///   center_src + scale*(pixel - center_out) + offset.
/// Throws CropOutOfBounds when the window leaves the source.
DepthMap crop_align(const DepthMap& src, const CropAlignment& alignment,
                    int out_width = 640, int out_height = 480);

}  // namespace tacchi::render
