#include "csd/banked.hpp"

#include <atomic>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "accumulate_detail.hpp"
#include "csd/error.hpp"

namespace csd {

namespace {

void check_plan_matches(const BinImage& bi, const BankPlan& plan) {
  if (bi.height() != plan.image_height) {
    raise(ErrorCode::plan_mismatch, "plan built for height " +
                                        std::to_string(plan.image_height) +
                                        ", image has " + std::to_string(bi.height()));
  }
  const auto& sp = plan.params;
  const int px = (bi.width() - sp.extent) / sp.step + 1;
  const int py = (bi.height() - sp.extent) / sp.step + 1;
  if (px != sp.positions_x || py != sp.positions_y) {
    raise(ErrorCode::plan_mismatch, "plan position grid " +
                                        std::to_string(sp.positions_x) + "x" +
                                        std::to_string(sp.positions_y) +
                                        " does not fit image " + std::to_string(bi.width()) +
                                        "x" + std::to_string(bi.height()));
  }
}

// One private histogram per bank, banks processed by a small worker pool.
std::vector<std::vector<std::uint32_t>> per_bank_histograms(const BinImage& bi,
                                                            const BankPlan& plan,
                                                            int workers) {
  const int bins = bi.table().bins;
  std::vector<std::vector<std::uint32_t>> hists(plan.stripes.size());
  for (auto& h : hists) h.assign(static_cast<std::size_t>(bins), 0);

  if (workers <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = hw > 0 ? static_cast<int>(hw) : 1;
  }
  workers = std::min<int>(workers, plan.active_banks());

  const auto run_bank = [&](std::size_t b) {
    const auto& stripe = plan.stripes[b];
    if (stripe.owned_rows() > 0) {
      detail::accumulate_anchor_rows(bi, plan.params, stripe.row_begin, stripe.row_end,
                                     hists[b].data());
    }
  };

  if (workers <= 1) {
    for (std::size_t b = 0; b < plan.stripes.size(); ++b) run_bank(b);
    return hists;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t b = next.fetch_add(1); b < plan.stripes.size();
           b = next.fetch_add(1)) {
        run_bank(b);
      }
    });
  }
  for (auto& t : pool) t.join();
  return hists;
}

}  // namespace

BankPlan make_plan(const StructuringParams& sp, int height, int n_banks) {
  if (n_banks < 1) raise(ErrorCode::invalid_input, "bank count must be >= 1");
  if (sp.positions_y < 1 || (sp.positions_y - 1) * sp.step + sp.extent > height) {
    raise(ErrorCode::invalid_input, "structuring parameters do not fit image height " +
                                        std::to_string(height));
  }

  BankPlan plan;
  plan.n_banks = n_banks;
  plan.image_height = height;
  plan.params = sp;
  plan.stripes.reserve(static_cast<std::size_t>(n_banks));

  // Balanced contiguous runs differing by at most one anchor row; when
  // n_banks exceeds the row count the tail banks own zero rows.
  const int base = sp.positions_y / n_banks;
  const int remainder = sp.positions_y % n_banks;
  int row = 0;
  for (int b = 0; b < n_banks; ++b) {
    const int rows = base + (b < remainder ? 1 : 0);
    BankStripe s;
    s.row_begin = row;
    s.row_end = row + rows;
    if (rows > 0) {
      s.pixel_begin = s.row_begin * sp.step;
      s.pixel_end = (s.row_end - 1) * sp.step + sp.extent;  // E-1 halo past the last anchor
    }
    plan.stripes.push_back(s);
    row += rows;
  }
  return plan;
}

RawHistogram accumulate_banked(const BinImage& bi, const BankPlan& plan, int workers) {
  check_plan_matches(bi, plan);
  const auto hists = per_bank_histograms(bi, plan, workers);

  RawHistogram merged;
  merged.counts.assign(static_cast<std::size_t>(bi.table().bins), 0);
  for (const auto& h : hists) {
    for (std::size_t m = 0; m < h.size(); ++m) merged.counts[m] += h[m];
  }
  return merged;
}

BankReport bank_stats(const BinImage& bi, const BankPlan& plan, int workers) {
  check_plan_matches(bi, plan);
  const auto hists = per_bank_histograms(bi, plan, workers);

  BankReport report;
  report.banks.reserve(plan.stripes.size());
  for (std::size_t b = 0; b < plan.stripes.size(); ++b) {
    const auto& stripe = plan.stripes[b];
    BankStats stats;
    stats.bank = static_cast<int>(b);
    stats.owned_positions =
        static_cast<long long>(stripe.owned_rows()) * plan.params.positions_x;
    stats.pixel_rows_read = stripe.pixel_rows();
    stats.increments = std::accumulate(hists[b].begin(), hists[b].end(),
                                       static_cast<unsigned long long>(0));
    report.banks.push_back(stats);
    report.total_positions += stats.owned_positions;
    report.total_rows_read += stats.pixel_rows_read;
    report.total_increments += stats.increments;
  }
  return report;
}

}  // namespace csd
