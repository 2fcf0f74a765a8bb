#pragma once

#include <string>
#include <utility>
#include <vector>

#include "csd/descriptor.hpp"
#include "csd/quant.hpp"

namespace csd {

struct MatchResult {
  int distance = 0;
  int bins_compared = 0;
  bool resized = false;
};

/// L1 (city-block) distance over the quantized values. Both descriptors
/// must share a bin count; throws ErrorCode::bins_mismatch otherwise.
MatchResult l1_distance(const Descriptor& a, const Descriptor& b);

/// Folds a descriptor down to target_bins by summing each coarse bin's
/// fine preimages, saturating at 255. Resizing to the own size is a
/// no-op; upsizing throws ErrorCode::unsupported_direction.
Descriptor resize_descriptor(const Descriptor& d, int target_bins,
                             const QuantTable& fine, const QuantTable& coarse);

struct RankedHit {
  std::string id;
  int distance = 0;

  bool operator==(const RankedHit&) const = default;
};

/// Ascending by distance, ties broken by ascending id; at most k hits.
std::vector<RankedHit> rank(const Descriptor& query,
                            const std::vector<std::pair<std::string, Descriptor>>& corpus,
                            std::size_t k);

}  // namespace csd
