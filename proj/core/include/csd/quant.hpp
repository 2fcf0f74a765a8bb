#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "csd/hmmd.hpp"
#include "csd/image.hpp"

namespace csd {

struct SubspaceLevels {
  int hue = 0;
  int sum = 0;

  bool operator==(const SubspaceLevels&) const = default;
};

/// Quantization table for one operating point (256/128/64/32 bins).
/// The four cutpoints partition the diff axis [0,255] into 5 subspaces;
/// each subspace gets a (hue levels x sum levels) grid of cells. offsets
/// are derived by validate_table; every operation below assumes the table
/// has been through validate_table.
struct QuantTable {
  int bins = 0;
  std::array<int, 4> cutpoints{};
  std::array<SubspaceLevels, 5> levels{};
  std::array<int, 5> offsets{};

  bool operator==(const QuantTable&) const = default;
};

/// Checks all table invariants and fills offsets. Throws
/// ErrorCode::invalid_cutpoints for a bad diff-axis partition and
/// ErrorCode::table_inconsistent (naming the per-subspace cell totals)
/// when the levels do not sum to bins.
QuantTable validate_table(QuantTable t);

/// The shipped table for an operating point in {256, 128, 64, 32},
/// already validated. The 64- and 32-bin level tables are non-normative
/// corrections; see README.
const QuantTable& default_table(int bins);

/// Subspace id 0..4 for a diff value; half-open intervals, the last one
/// right-closed at 255.
int subspace_of(int diff, const QuantTable& t);

/// Cell -> bin bijection: offsets[s] + hue_idx * sum_levels + sum_idx.
int bin_index(const HmmdPixel& p, const QuantTable& t);

/// Total surjective map from fine bins onto coarse bins, built by
/// coarsening hue/sum levels per subspace. Requires identical cutpoints
/// and subspace-wise level divisibility, else ErrorCode::unification_impossible.
std::vector<int> unify_map(const QuantTable& fine, const QuantTable& coarse);

/// Grid of bin indices plus the table that produced them.
struct BinImage {
  BinImage(int width, int height, QuantTable table)
      : width_(width), height_(height), table_(std::move(table)) {
    bins_.resize(static_cast<std::size_t>(width) * height);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  const QuantTable& table() const noexcept { return table_; }

  std::uint8_t& at(int x, int y) {
    return bins_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t at(int x, int y) const {
    return bins_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::vector<std::uint8_t>& values() noexcept { return bins_; }
  const std::vector<std::uint8_t>& values() const noexcept { return bins_; }

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bins_;
  QuantTable table_;
};

/// Pointwise bin_index over all pixels.
BinImage quantize_image(const HmmdImage& img, const QuantTable& t);

}  // namespace csd
