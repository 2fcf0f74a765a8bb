#include "csd/hmmd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace csd {

HmmdPixel rgb_to_hmmd(RgbPixel p) {
  const int r = p.r, g = p.g, b = p.b;
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const int diff = mx - mn;
  const int sum = (mx + mn) / 2;

  float hue = 0.0f;
  if (diff != 0) {
    float sector;
    if (mx == r) {
      sector = std::fmod(static_cast<float>(g - b) / diff, 6.0f);
    } else if (mx == g) {
      sector = static_cast<float>(b - r) / diff + 2.0f;
    } else {
      sector = static_cast<float>(r - g) / diff + 4.0f;
    }
    hue = 60.0f * sector;
    if (hue < 0.0f) hue += 360.0f;
    if (hue >= 360.0f) hue -= 360.0f;
  }

  return HmmdPixel{hue, static_cast<std::uint8_t>(mx), static_cast<std::uint8_t>(mn),
                   static_cast<std::uint8_t>(diff), static_cast<std::uint8_t>(sum)};
}

HmmdImage convert_image(const RgbImage& img) {
  HmmdImage out(img.width(), img.height());
  const auto& src = img.pixels();
  auto& dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = rgb_to_hmmd(src[i]);
  return out;
}

}  // namespace csd
