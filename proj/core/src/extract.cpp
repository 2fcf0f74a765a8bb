#include "csd/extract.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "accumulate_detail.hpp"
#include "csd/error.hpp"

namespace csd {

namespace {

StructuringParams params_for(int width, int height, int p) {
  StructuringParams sp;
  sp.subsample_exp = p;
  sp.step = 1 << p;
  sp.extent = 8 * sp.step;
  sp.positions_x = (width - sp.extent) / sp.step + 1;
  sp.positions_y = (height - sp.extent) / sp.step + 1;
  return sp;
}

}  // namespace

StructuringParams scale_params(int width, int height) {
  if (width < 8 || height < 8) {
    raise(ErrorCode::image_too_small, "image " + std::to_string(width) + "x" +
                                          std::to_string(height) +
                                          " cannot fit an 8x8 structuring element");
  }
  const double area = static_cast<double>(width) * height;
  int p = static_cast<int>(std::floor(0.5 * std::log2(area) + 0.5)) - 8;
  p = std::max(0, p);
  // Extreme aspect ratios: the area rule may pick an extent larger than
  // the short side; shrink until one window fits.
  while (p > 0 && 8 * (1 << p) > std::min(width, height)) --p;
  return params_for(width, height, p);
}

StructuringParams scale_params_for_exponent(int width, int height, int p) {
  if (p < 0) raise(ErrorCode::invalid_input, "subsample exponent must be >= 0");
  if (width < 8 || height < 8 || 8 * (1 << p) > std::min(width, height)) {
    raise(ErrorCode::image_too_small,
          "image " + std::to_string(width) + "x" + std::to_string(height) +
              " cannot fit a structuring element with extent " +
              std::to_string(8 * (1 << p)));
  }
  return params_for(width, height, p);
}

RawHistogram accumulate_reference(const BinImage& bi, const StructuringParams& sp) {
  const int bins = bi.table().bins;
  RawHistogram h;
  h.counts.assign(static_cast<std::size_t>(bins), 0);

  const int k = sp.step;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(bins));
  for (int ay = 0; ay < sp.positions_y; ++ay) {
    for (int ax = 0; ax < sp.positions_x; ++ax) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
          const std::uint8_t m = bi.at(ax * k + i * k, ay * k + j * k);
          if (!seen[m]) {
            seen[m] = 1;
            ++h.counts[m];
          }
        }
      }
    }
  }
  return h;
}

namespace detail {

void accumulate_anchor_rows(const BinImage& bi, const StructuringParams& sp,
                            int row_begin, int row_end, std::uint32_t* hist) {
  const int bins = bi.table().bins;
  const int k = sp.step;
  const int extent = sp.extent;
  const int nx = sp.positions_x;

  std::vector<std::uint16_t> occupancy(static_cast<std::size_t>(bins));
  std::vector<std::int32_t> run_start(static_cast<std::size_t>(bins));

  for (int ay = row_begin; ay < row_end; ++ay) {
    std::fill(occupancy.begin(), occupancy.end(), 0);
    const int py = ay * k;

    for (int j = 0; j < 8; ++j) {
      for (int i = 0; i < 8; ++i) {
        const std::uint8_t m = bi.at(i * k, py + j * k);
        if (occupancy[m]++ == 0) run_start[m] = 0;
      }
    }

    for (int ax = 1; ax < nx; ++ax) {
      const int x_out = (ax - 1) * k;
      const int x_in = x_out + extent;
      for (int j = 0; j < 8; ++j) {
        const std::uint8_t m = bi.at(x_out, py + j * k);
        if (--occupancy[m] == 0) hist[m] += static_cast<std::uint32_t>(ax - run_start[m]);
      }
      for (int j = 0; j < 8; ++j) {
        const std::uint8_t m = bi.at(x_in, py + j * k);
        if (occupancy[m]++ == 0) run_start[m] = ax;
      }
    }

    for (int m = 0; m < bins; ++m) {
      if (occupancy[m] > 0) hist[m] += static_cast<std::uint32_t>(nx - run_start[m]);
    }
  }
}

}  // namespace detail

RawHistogram accumulate_incremental(const BinImage& bi, const StructuringParams& sp) {
  RawHistogram h;
  h.counts.assign(static_cast<std::size_t>(bi.table().bins), 0);
  detail::accumulate_anchor_rows(bi, sp, 0, sp.positions_y, h.counts.data());
  return h;
}

RawHistogram unify_histogram(const RawHistogram& fine, const std::vector<int>& map,
                             int coarse_bins, std::uint32_t saturate_at) {
  if (fine.counts.size() != map.size()) {
    raise(ErrorCode::invalid_input, "unify map does not match histogram size");
  }
  std::vector<std::uint64_t> sums(static_cast<std::size_t>(coarse_bins), 0);
  for (std::size_t i = 0; i < map.size(); ++i) sums[map[i]] += fine.counts[i];

  RawHistogram out;
  out.counts.resize(static_cast<std::size_t>(coarse_bins));
  for (std::size_t j = 0; j < sums.size(); ++j) {
    out.counts[j] = static_cast<std::uint32_t>(std::min<std::uint64_t>(sums[j], saturate_at));
  }
  return out;
}

AmplitudeQuantizer::AmplitudeQuantizer(std::vector<double> bounds, std::vector<int> levels)
    : bounds_(std::move(bounds)), levels_(std::move(levels)) {
  if (bounds_.size() != levels_.size() + 1 || levels_.empty()) {
    raise(ErrorCode::invalid_input, "amplitude quantizer needs one more bound than regions");
  }
  if (bounds_.front() != 0.0 || bounds_.back() != 1.0) {
    raise(ErrorCode::invalid_input, "amplitude regions must span [0, 1]");
  }
  for (std::size_t i = 1; i < bounds_.size(); ++i) {
    if (!(bounds_[i] > bounds_[i - 1])) {
      raise(ErrorCode::invalid_input, "amplitude region bounds must be strictly ascending");
    }
  }
  int total = 0;
  offsets_.resize(levels_.size());
  for (std::size_t r = 0; r < levels_.size(); ++r) {
    if (levels_[r] < 1) raise(ErrorCode::invalid_input, "amplitude region levels must be positive");
    offsets_[r] = total;
    total += levels_[r];
  }
  if (total != 256) {
    raise(ErrorCode::invalid_input,
          "amplitude region levels must sum to 256, got " + std::to_string(total));
  }
}

const AmplitudeQuantizer& AmplitudeQuantizer::defaults() {
  static const AmplitudeQuantizer aq({0.0, 1e-9, 0.037, 0.08, 0.195, 0.32, 1.0},
                                     {1, 25, 20, 35, 35, 140});
  return aq;
}

std::uint8_t AmplitudeQuantizer::code(double a) const {
  if (a <= 0.0) return 0;
  if (a >= 1.0) return 255;
  std::size_t r = levels_.size() - 1;
  while (r > 0 && a < bounds_[r]) --r;
  const double width = bounds_[r + 1] - bounds_[r];
  int c = static_cast<int>((a - bounds_[r]) / width * levels_[r]);
  c = std::min(c, levels_[r] - 1);
  return static_cast<std::uint8_t>(offsets_[r] + c);
}

Descriptor normalize_and_quantize(const RawHistogram& h, const StructuringParams& sp,
                                  const AmplitudeQuantizer& aq) {
  const auto total = sp.total_positions();
  Descriptor d;
  d.bins = static_cast<int>(h.counts.size());
  d.subsample_exp = sp.subsample_exp;
  d.values.resize(h.counts.size());
  for (std::size_t m = 0; m < h.counts.size(); ++m) {
    if (h.counts[m] > static_cast<std::uint64_t>(total)) {
      raise(ErrorCode::corrupt_histogram,
            "bin " + std::to_string(m) + " count " + std::to_string(h.counts[m]) +
                " exceeds " + std::to_string(total) + " window positions");
    }
    d.values[m] = aq.code(static_cast<double>(h.counts[m]) / static_cast<double>(total));
  }
  return d;
}

}  // namespace csd
