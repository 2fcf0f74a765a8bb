#pragma once

#include <cstdint>
#include <vector>

#include "csd/descriptor.hpp"
#include "csd/quant.hpp"

namespace csd {

/// Geometry of the 8x8 structuring element at one scale: samples are K
/// pixels apart (K = 2^p), the window spans E = 8K pixels, anchors step
/// by K and windows lie fully inside the image.
struct StructuringParams {
  int subsample_exp = 0;  // p
  int step = 1;           // K = 2^p
  int extent = 8;         // E = 8K
  int positions_x = 0;
  int positions_y = 0;

  long long total_positions() const noexcept {
    return static_cast<long long>(positions_x) * positions_y;
  }

  bool operator==(const StructuringParams&) const = default;
};

/// Scale rule: p = max(0, round(0.5 * log2(width * height)) - 8), half-up.
/// Throws ErrorCode::image_too_small below 8x8.
StructuringParams scale_params(int width, int height);

/// Same geometry with a caller-forced exponent (the window must still fit).
StructuringParams scale_params_for_exponent(int width, int height, int p);

/// Per-bin presence counts: counts[m] = number of window positions whose
/// 64 samples contain bin m at least once.
struct RawHistogram {
  std::vector<std::uint32_t> counts;

  bool operator==(const RawHistogram&) const = default;
};

/// Straight per-window evaluation; the readable baseline every other
/// accumulation path must match bit-exactly.
RawHistogram accumulate_reference(const BinImage& bi, const StructuringParams& sp);

/// Sliding-window accumulation with per-bin occupancy counters: stepping
/// one anchor right retires the exiting sample column and admits the
/// entering one. Output is bit-identical to accumulate_reference.
RawHistogram accumulate_incremental(const BinImage& bi, const StructuringParams& sp);

/// Folds a fine histogram through a unify_map, saturating each coarse
/// count at saturate_at (the window-position total), which keeps
/// normalized amplitudes inside [0,1].
RawHistogram unify_histogram(const RawHistogram& fine, const std::vector<int>& map,
                             int coarse_bins, std::uint32_t saturate_at);

/// Piecewise-uniform non-linear 8-bit amplitude quantizer over [0,1].
/// bounds has one more entry than levels; levels sum to 256. code(0) = 0
/// and code(1) = 255 by construction.
class AmplitudeQuantizer {
 public:
  AmplitudeQuantizer(std::vector<double> bounds, std::vector<int> levels);

  static const AmplitudeQuantizer& defaults();

  std::uint8_t code(double a) const;

  const std::vector<double>& bounds() const noexcept { return bounds_; }
  const std::vector<int>& levels() const noexcept { return levels_; }

  bool operator==(const AmplitudeQuantizer&) const = default;

 private:
  std::vector<double> bounds_;
  std::vector<int> levels_;
  std::vector<int> offsets_;
};

/// counts[m] / total_positions through the amplitude quantizer.
/// Throws ErrorCode::corrupt_histogram if any count exceeds the total.
Descriptor normalize_and_quantize(const RawHistogram& h, const StructuringParams& sp,
                                  const AmplitudeQuantizer& aq);

}  // namespace csd
