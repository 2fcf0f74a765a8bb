#pragma once

#include <cstdint>

#include "csd/image.hpp"

namespace csd {

/// One pixel in the HMMD color space. max/min/diff/sum are exact integers;
/// hue is kept in real degrees [0, 360) so the quantizer is free to choose
/// its own level granularity. hue is 0 whenever diff is 0 (achromatic).
struct HmmdPixel {
  float hue = 0.0f;
  std::uint8_t max = 0;
  std::uint8_t min = 0;
  std::uint8_t diff = 0;  // max - min
  std::uint8_t sum = 0;   // floor((max + min) / 2)

  bool operator==(const HmmdPixel&) const = default;
};

using HmmdImage = Image<HmmdPixel>;

/// Hexagonal hue, floor-divided sum. Pure, total over all RGB inputs.
HmmdPixel rgb_to_hmmd(RgbPixel p);

/// Pointwise rgb_to_hmmd over the whole grid; output dimensions match.
HmmdImage convert_image(const RgbImage& img);

}  // namespace csd
