#include "csd/quant.hpp"

#include <algorithm>
#include <string>

#include "csd/error.hpp"

namespace csd {

namespace {

bool valid_operating_point(int bins) {
  return bins == 256 || bins == 128 || bins == 64 || bins == 32;
}

}  // namespace

QuantTable validate_table(QuantTable t) {
  if (!valid_operating_point(t.bins)) {
    raise(ErrorCode::invalid_input,
          "bin count must be one of 256/128/64/32, got " + std::to_string(t.bins));
  }

  int prev = 0;
  for (int c : t.cutpoints) {
    if (c <= prev || c > 255) {
      raise(ErrorCode::invalid_cutpoints,
            "cutpoints must be strictly increasing within (0, 255], got " +
                std::to_string(t.cutpoints[0]) + "," + std::to_string(t.cutpoints[1]) +
                "," + std::to_string(t.cutpoints[2]) + "," + std::to_string(t.cutpoints[3]));
    }
    prev = c;
  }

  int total = 0;
  std::string cell_totals;
  for (std::size_t s = 0; s < t.levels.size(); ++s) {
    const auto& lv = t.levels[s];
    if (lv.hue < 1 || lv.sum < 1) {
      raise(ErrorCode::table_inconsistent,
            "subspace " + std::to_string(s) + " has non-positive level counts");
    }
    const int cells = lv.hue * lv.sum;
    total += cells;
    if (s > 0) cell_totals += "+";
    cell_totals += std::to_string(cells);
  }
  if (total != t.bins) {
    raise(ErrorCode::table_inconsistent,
          "subspace cell totals " + cell_totals + " sum to " + std::to_string(total) +
              ", expected " + std::to_string(t.bins));
  }

  t.offsets[0] = 0;
  for (std::size_t s = 1; s < t.offsets.size(); ++s) {
    t.offsets[s] = t.offsets[s - 1] + t.levels[s - 1].hue * t.levels[s - 1].sum;
  }
  return t;
}

const QuantTable& default_table(int bins) {
  static const std::array<int, 4> kCutpoints{6, 20, 60, 110};
  static const QuantTable k256 = validate_table(
      {256, kCutpoints, {{{1, 32}, {4, 8}, {16, 4}, {16, 4}, {16, 4}}}, {}});
  static const QuantTable k128 = validate_table(
      {128, kCutpoints, {{{1, 16}, {4, 4}, {8, 4}, {8, 4}, {8, 4}}}, {}});
  // Non-normative corrections; the published 64/32 level tables fail the
  // cell-total check (104 and 48 cells).
  static const QuantTable k64 = validate_table(
      {64, kCutpoints, {{{1, 8}, {4, 4}, {4, 4}, {8, 2}, {8, 1}}}, {}});
  static const QuantTable k32 = validate_table(
      {32, kCutpoints, {{{1, 8}, {4, 2}, {4, 2}, {4, 1}, {4, 1}}}, {}});

  switch (bins) {
    case 256:
      return k256;
    case 128:
      return k128;
    case 64:
      return k64;
    case 32:
      return k32;
    default:
      raise(ErrorCode::invalid_input,
            "no default table for " + std::to_string(bins) + " bins");
  }
}

int subspace_of(int diff, const QuantTable& t) {
  for (std::size_t s = 0; s < t.cutpoints.size(); ++s) {
    if (diff < t.cutpoints[s]) return static_cast<int>(s);
  }
  return 4;
}

int bin_index(const HmmdPixel& p, const QuantTable& t) {
  const int s = subspace_of(p.diff, t);
  const auto& lv = t.levels[s];
  int hue_idx = static_cast<int>(static_cast<double>(p.hue) * lv.hue / 360.0);
  hue_idx = std::clamp(hue_idx, 0, lv.hue - 1);
  int sum_idx = p.sum * lv.sum / 256;
  sum_idx = std::clamp(sum_idx, 0, lv.sum - 1);
  return t.offsets[s] + hue_idx * lv.sum + sum_idx;
}

std::vector<int> unify_map(const QuantTable& fine, const QuantTable& coarse) {
  if (coarse.bins > fine.bins) {
    raise(ErrorCode::unification_impossible,
          "cannot unify " + std::to_string(fine.bins) + " bins onto " +
              std::to_string(coarse.bins));
  }
  if (fine.cutpoints != coarse.cutpoints) {
    raise(ErrorCode::unification_impossible,
          "tables partition the diff axis differently");
  }
  for (std::size_t s = 0; s < fine.levels.size(); ++s) {
    const auto& f = fine.levels[s];
    const auto& c = coarse.levels[s];
    if (f.hue % c.hue != 0 || f.sum % c.sum != 0) {
      raise(ErrorCode::unification_impossible,
            "subspace " + std::to_string(s) + " levels (" + std::to_string(f.hue) +
                "," + std::to_string(f.sum) + ") are not divisible by (" +
                std::to_string(c.hue) + "," + std::to_string(c.sum) + ")");
    }
  }

  std::vector<int> map(static_cast<std::size_t>(fine.bins));
  for (std::size_t s = 0; s < fine.levels.size(); ++s) {
    const auto& f = fine.levels[s];
    const auto& c = coarse.levels[s];
    for (int h = 0; h < f.hue; ++h) {
      for (int m = 0; m < f.sum; ++m) {
        const int i = fine.offsets[s] + h * f.sum + m;
        const int hc = h * c.hue / f.hue;
        const int mc = m * c.sum / f.sum;
        map[i] = coarse.offsets[s] + hc * c.sum + mc;
      }
    }
  }
  return map;
}

BinImage quantize_image(const HmmdImage& img, const QuantTable& t) {
  BinImage out(img.width(), img.height(), t);
  const auto& src = img.pixels();
  auto& dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = static_cast<std::uint8_t>(bin_index(src[i], t));
  }
  return out;
}

}  // namespace csd
