#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace tacchi::render {

/// 8-bit RGB image, row-major, interleaved channels.
struct Image8 {
  int width = 0, height = 0;
  std::vector<std::uint8_t> data;  // width*height*3

  Image8() = default;
  Image8(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

  std::uint8_t& at(int row, int col, int ch) {
    return data[(static_cast<std::size_t>(row) * width + col) * 3 + ch];
  }
  std::uint8_t at(int row, int col, int ch) const {
    return data[(static_cast<std::size_t>(row) * width + col) * 3 + ch];
  }
};

void save_png(const Image8& image, const std::filesystem::path& path);

/// Reads an 8-bit PNG (grayscale, gray+alpha, RGB, RGBA, or palette) into RGB.
Image8 load_png(const std::filesystem::path& path);

}  // namespace tacchi::render
