#pragma once

#include <cstdint>

#include "csd/extract.hpp"
#include "csd/quant.hpp"

namespace csd::detail {

// Incremental presence accumulation restricted to anchor rows
// [row_begin, row_end). hist must hold bi.table().bins zeroed-or-partial
// counts; counts are added, not assigned. Shared by the serial
// incremental path (full row range) and the banked engine (one stripe
// per bank).
void accumulate_anchor_rows(const BinImage& bi, const StructuringParams& sp,
                            int row_begin, int row_end, std::uint32_t* hist);

}  // namespace csd::detail
