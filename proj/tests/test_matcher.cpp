#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <random>
#include <vector>

#include "csd/config.hpp"
#include "csd/error.hpp"
#include "csd/extract.hpp"
#include "csd/match.hpp"
#include "csd/quant.hpp"

using csd::Descriptor;

namespace {

Descriptor random_descriptor(int bins, std::mt19937& rng) {
  Descriptor d;
  d.bins = bins;
  d.values.resize(static_cast<std::size_t>(bins));
  std::uniform_int_distribution<int> byte(0, 255);
  for (auto& v : d.values) v = static_cast<std::uint8_t>(byte(rng));
  return d;
}

int l1_oracle(const Descriptor& a, const Descriptor& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    d += std::abs(int(a.values[i]) - int(b.values[i]));
  }
  return d;
}

// Preimage-sum oracle built from the subspace arithmetic directly, not
// from unify_map.
Descriptor resize_oracle(const Descriptor& d, const csd::QuantTable& fine,
                         const csd::QuantTable& coarse) {
  std::vector<int> sums(static_cast<std::size_t>(coarse.bins), 0);
  for (int s = 0; s < 5; ++s) {
    for (int h = 0; h < fine.levels[s].hue; ++h) {
      for (int m = 0; m < fine.levels[s].sum; ++m) {
        const int i = fine.offsets[s] + h * fine.levels[s].sum + m;
        const int hc = h * coarse.levels[s].hue / fine.levels[s].hue;
        const int mc = m * coarse.levels[s].sum / fine.levels[s].sum;
        sums[coarse.offsets[s] + hc * coarse.levels[s].sum + mc] += d.values[i];
      }
    }
  }
  Descriptor out;
  out.bins = coarse.bins;
  out.subsample_exp = d.subsample_exp;
  out.values.resize(sums.size());
  for (std::size_t j = 0; j < sums.size(); ++j) {
    out.values[j] = static_cast<std::uint8_t>(std::min(sums[j], 255));
  }
  return out;
}

}  // namespace

TEST_CASE("distance identity and the full-range pair") {
  std::mt19937 rng(11);
  const auto x = random_descriptor(256, rng);
  CHECK(csd::l1_distance(x, x).distance == 0);

  Descriptor zeros, full;
  zeros.bins = full.bins = 256;
  zeros.values.assign(256, 0);
  full.values.assign(256, 255);
  const auto r = csd::l1_distance(zeros, full);
  CHECK(r.distance == 65280);  // 256 * 255
  CHECK(r.bins_compared == 256);
}

TEST_CASE("distance equals the scalar oracle and behaves like a metric") {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const int bins = trial % 2 ? 256 : 64;
    const auto a = random_descriptor(bins, rng);
    const auto b = random_descriptor(bins, rng);
    const auto c = random_descriptor(bins, rng);

    const int ab = csd::l1_distance(a, b).distance;
    const int ba = csd::l1_distance(b, a).distance;
    const int ac = csd::l1_distance(a, c).distance;
    const int cb = csd::l1_distance(c, b).distance;

    REQUIRE(ab == l1_oracle(a, b));
    REQUIRE(ab == ba);
    REQUIRE(ab >= 0);
    REQUIRE(ab <= ac + cb);
    if (a.values == b.values) REQUIRE(ab == 0);
    if (ab == 0) REQUIRE(a.values == b.values);
  }
}

TEST_CASE("bin mismatch is refused with advice to resize") {
  std::mt19937 rng(33);
  const auto a = random_descriptor(256, rng);
  const auto b = random_descriptor(128, rng);
  try {
    csd::l1_distance(a, b);
    FAIL("expected bins_mismatch");
  } catch (const csd::Error& e) {
    CHECK(e.code() == csd::ErrorCode::bins_mismatch);
    CHECK(std::string(e.what()).find("resize") != std::string::npos);
  }
}

TEST_CASE("resize folds preimages with saturation") {
  const auto& fine = csd::default_table(256);
  const auto& coarse = csd::default_table(128);

  Descriptor lone;
  lone.bins = 256;
  lone.values.assign(256, 0);
  lone.values[37] = 123;
  const auto folded = csd::resize_descriptor(lone, 128, fine, coarse);
  int nonzero = 0;
  for (auto v : folded.values) {
    if (v != 0) {
      ++nonzero;
      REQUIRE(v == 123);
    }
  }
  CHECK(nonzero == 1);

  std::mt19937 rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = random_descriptor(256, rng);
    REQUIRE(csd::resize_descriptor(d, 128, fine, coarse) == resize_oracle(d, fine, coarse));
    REQUIRE(csd::resize_descriptor(d, 32, fine, csd::default_table(32)) ==
            resize_oracle(d, fine, csd::default_table(32)));
  }
}

TEST_CASE("resize to own size is the identity, upsizing is refused") {
  std::mt19937 rng(55);
  const auto d = random_descriptor(128, rng);
  CHECK(csd::resize_descriptor(d, 128, csd::default_table(128), csd::default_table(128)) == d);
  try {
    csd::resize_descriptor(d, 256, csd::default_table(128), csd::default_table(256));
    FAIL("expected unsupported_direction");
  } catch (const csd::Error& e) {
    CHECK(e.code() == csd::ErrorCode::unsupported_direction);
  }
}

TEST_CASE("direct coarse extraction vs resized 256 extraction stay close") {
  // Amplitude quantization does not commute with preimage summation, but
  // the resized path can undershoot the direct one by at most its nonzero
  // preimage count, and both agree exactly on zero bins.
  std::mt19937 rng(66);
  std::uniform_int_distribution<int> byte(0, 255);
  const auto& cfg = csd::ExtractionConfig::defaults();

  for (int trial = 0; trial < 6; ++trial) {
    csd::RgbImage img(40, 32);
    std::uniform_int_distribution<int> palette(0, 5);
    const csd::RgbPixel colors[6] = {{250, 10, 10}, {10, 250, 10}, {10, 10, 250},
                                     {200, 200, 20}, {30, 30, 30}, {240, 240, 240}};
    for (auto& p : img.pixels()) p = colors[palette(rng)];

    for (int bins : {128, 64, 32}) {
      const auto direct = csd::extract(img, bins);
      const auto resized = csd::resize_descriptor(csd::extract(img, 256), bins,
                                                  cfg.table256, cfg.table_for(bins));
      const auto map = csd::unify_map(cfg.table256, cfg.table_for(bins));
      const auto fine = csd::extract(img, 256);

      for (int j = 0; j < bins; ++j) {
        int nonzero_preimages = 0;
        for (int i = 0; i < 256; ++i) {
          if (map[i] == j && fine.values[i] != 0) ++nonzero_preimages;
        }
        REQUIRE((resized.values[j] == 0) == (direct.values[j] == 0));
        REQUIRE(direct.values[j] - resized.values[j] <= nonzero_preimages);
      }
    }
  }
}

TEST_CASE("rank orders by distance with id tie-breaking") {
  std::mt19937 rng(77);
  const auto q = random_descriptor(256, rng);

  std::vector<std::pair<std::string, Descriptor>> corpus;
  for (int i = 0; i < 20; ++i) {
    corpus.emplace_back("img" + std::to_string(i), random_descriptor(256, rng));
  }
  corpus.emplace_back("the-query", q);

  const auto hits = csd::rank(q, corpus, corpus.size());
  REQUIRE(hits.size() == corpus.size());
  CHECK(hits[0].id == "the-query");
  CHECK(hits[0].distance == 0);

  // full-sort oracle
  std::vector<csd::RankedHit> expected;
  for (const auto& [id, d] : corpus) expected.push_back({id, l1_oracle(q, d)});
  std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
  });
  REQUIRE(hits == expected);

  CHECK(csd::rank(q, corpus, 0).empty());
  CHECK(csd::rank(q, {}, 5).empty());
  CHECK(csd::rank(q, corpus, 3).size() == 3);

  // exact ties resolve by ascending id
  std::vector<std::pair<std::string, Descriptor>> tied{{"b", q}, {"a", q}};
  const auto tie_hits = csd::rank(q, tied, 2);
  CHECK(tie_hits[0].id == "a");
  CHECK(tie_hits[1].id == "b");
}
