#pragma once

#include <cstdint>
#include <vector>

#include "csd/extract.hpp"
#include "csd/quant.hpp"

namespace csd {

/// One bank's share of the work: a contiguous run of anchor rows on the
/// window-position grid, plus the pixel rows it must read (its anchor
/// rows scaled by K and extended by the E-1 halo).
struct BankStripe {
  int row_begin = 0;  // anchor rows, half-open
  int row_end = 0;
  int pixel_begin = 0;  // pixel rows, half-open
  int pixel_end = 0;

  int owned_rows() const noexcept { return row_end - row_begin; }
  int pixel_rows() const noexcept { return pixel_end - pixel_begin; }

  bool operator==(const BankStripe&) const = default;
};

/// Stripe partition of the anchor-row grid across n banks. Stripes are
/// disjoint, cover [0, positions_y), and differ in size by at most one
/// row; banks beyond positions_y own zero rows.
struct BankPlan {
  int n_banks = 0;
  int image_height = 0;
  StructuringParams params;
  std::vector<BankStripe> stripes;

  int active_banks() const noexcept {
    int n = 0;
    for (const auto& s : stripes) n += s.owned_rows() > 0 ? 1 : 0;
    return n;
  }
};

BankPlan make_plan(const StructuringParams& sp, int height, int n_banks);

/// Runs each bank's stripe through the incremental accumulator into a
/// bank-private histogram, concurrently, then merges by elementwise sum.
/// The merged result is bit-identical to accumulate_reference on the
/// whole image. workers = 0 means one worker per hardware thread.
RawHistogram accumulate_banked(const BinImage& bi, const BankPlan& plan, int workers = 0);

struct BankStats {
  int bank = 0;
  long long owned_positions = 0;
  int pixel_rows_read = 0;
  unsigned long long increments = 0;  // histogram increments issued
};

struct BankReport {
  std::vector<BankStats> banks;
  long long total_positions = 0;
  long long total_rows_read = 0;  // >= image height when banks overlap halos
  unsigned long long total_increments = 0;
};

BankReport bank_stats(const BinImage& bi, const BankPlan& plan, int workers = 0);

}  // namespace csd
