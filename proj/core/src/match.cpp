#include "csd/match.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "csd/error.hpp"

namespace csd {

MatchResult l1_distance(const Descriptor& a, const Descriptor& b) {
  if (a.bins != b.bins) {
    raise(ErrorCode::bins_mismatch,
          "descriptors have " + std::to_string(a.bins) + " and " + std::to_string(b.bins) +
              " bins; resize one side first");
  }
  int distance = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    distance += std::abs(static_cast<int>(a.values[i]) - static_cast<int>(b.values[i]));
  }
  return MatchResult{distance, a.bins, false};
}

Descriptor resize_descriptor(const Descriptor& d, int target_bins,
                             const QuantTable& fine, const QuantTable& coarse) {
  if (target_bins == d.bins) return d;
  if (target_bins > d.bins) {
    raise(ErrorCode::unsupported_direction,
          "cannot resize " + std::to_string(d.bins) + " bins up to " +
              std::to_string(target_bins) + "; unification discards information");
  }
  if (fine.bins != d.bins || coarse.bins != target_bins) {
    raise(ErrorCode::invalid_input, "tables do not match the requested resize");
  }

  const auto map = unify_map(fine, coarse);
  Descriptor out;
  out.bins = target_bins;
  out.subsample_exp = d.subsample_exp;
  out.values.assign(static_cast<std::size_t>(target_bins), 0);
  std::vector<int> sums(static_cast<std::size_t>(target_bins), 0);
  for (std::size_t i = 0; i < d.values.size(); ++i) sums[map[i]] += d.values[i];
  for (std::size_t j = 0; j < sums.size(); ++j) {
    out.values[j] = static_cast<std::uint8_t>(std::min(sums[j], 255));
  }
  return out;
}

std::vector<RankedHit> rank(const Descriptor& query,
                            const std::vector<std::pair<std::string, Descriptor>>& corpus,
                            std::size_t k) {
  std::vector<RankedHit> hits;
  hits.reserve(corpus.size());
  for (const auto& [id, d] : corpus) {
    hits.push_back(RankedHit{id, l1_distance(query, d).distance});
  }
  std::sort(hits.begin(), hits.end(), [](const RankedHit& a, const RankedHit& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.id < b.id;
  });
  if (hits.size() > k) hits.resize(k);
  return hits;
}

}  // namespace csd
