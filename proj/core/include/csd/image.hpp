#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csd/error.hpp"

namespace csd {

struct RgbPixel {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const RgbPixel&) const = default;
};

/// Dense row-major pixel grid. Immutable-by-convention after it is filled:
/// everything downstream takes images by const reference.
template <typename Pixel>
class Image {
 public:
  Image(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      raise(ErrorCode::invalid_input, "image dimensions must be >= 1, got " +
                                          std::to_string(width) + "x" +
                                          std::to_string(height));
    }
    pixels_.resize(static_cast<std::size_t>(width) * height);
  }

  Image(int width, int height, Pixel fill) : Image(width, height) {
    pixels_.assign(pixels_.size(), fill);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  Pixel& at(int x, int y) { return pixels_[idx(x, y)]; }
  const Pixel& at(int x, int y) const { return pixels_[idx(x, y)]; }

  std::vector<Pixel>& pixels() noexcept { return pixels_; }
  const std::vector<Pixel>& pixels() const noexcept { return pixels_; }

  bool operator==(const Image&) const = default;

 private:
  std::size_t idx(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_;
  int height_;
  std::vector<Pixel> pixels_;
};

using RgbImage = Image<RgbPixel>;

}  // namespace csd
