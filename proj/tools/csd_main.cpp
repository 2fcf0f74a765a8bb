// csd: extract, store and match MPEG-7 Color Structure Descriptors.
//
// Exit codes: 0 success, 1 usage error, 2 data/format error, 3 internal error.
// Data output goes to stdout and is deterministic for fixed arguments and
// seed; timings and warnings go to stderr.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "csd/banked.hpp"
#include "csd/config.hpp"
#include "csd/descriptor.hpp"
#include "csd/error.hpp"
#include "csd/hash.hpp"
#include "csd/index.hpp"
#include "csd/match.hpp"
#include "csd/ppm.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

csd::ExtractionConfig resolve_config(const std::string& config_path) {
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("CSD_CONFIG")) path = env;
  }
  if (path.empty()) return csd::ExtractionConfig::defaults();
  return csd::load_config(path);
}

int count_nonzero(const csd::Descriptor& d) {
  int n = 0;
  for (auto v : d.values) n += v != 0 ? 1 : 0;
  return n;
}

csd::RgbImage random_frame(int width, int height, std::mt19937& rng) {
  csd::RgbImage img(width, height);
  std::uniform_int_distribution<int> byte(0, 255);
  for (auto& p : img.pixels()) {
    p.r = static_cast<std::uint8_t>(byte(rng));
    p.g = static_cast<std::uint8_t>(byte(rng));
    p.b = static_cast<std::uint8_t>(byte(rng));
  }
  return img;
}

struct CommonOpts {
  std::string config_path;
  int workers = 0;
};

int run_extract(const std::string& in_path, int bins, const std::string& out_path,
                bool as_json, const CommonOpts& common) {
  const auto cfg = resolve_config(common.config_path);
  const csd::RgbImage img = csd::load_ppm(in_path);
  csd::ExtractOptions opt;
  opt.workers = common.workers;
  const csd::Descriptor d = csd::extract(img, bins, cfg, opt);

  if (as_json) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) csd::raise(csd::ErrorCode::io_error, "cannot open " + out_path + " for writing");
    out << csd::descriptor_to_json(d);
  } else {
    csd::save_descriptor(d, out_path);
  }
  std::cout << "bins=" << d.bins << " p=" << d.subsample_exp
            << " nonzero=" << count_nonzero(d) << "\n";
  return 0;
}

int run_match(const std::string& a_path, const std::string& b_path, int resize_to,
              const CommonOpts& common) {
  const auto cfg = resolve_config(common.config_path);
  csd::Descriptor a = csd::load_descriptor(a_path);
  csd::Descriptor b = csd::load_descriptor(b_path);

  bool resized = false;
  if (resize_to > 0) {
    if (a.bins < resize_to || b.bins < resize_to) {
      csd::raise(csd::ErrorCode::unsupported_direction,
                 "--resize-to " + std::to_string(resize_to) +
                     " would upsize a descriptor; pick the smaller bin count");
    }
    if (a.bins > resize_to) {
      a = csd::resize_descriptor(a, resize_to, cfg.table_for(a.bins), cfg.table_for(resize_to));
      resized = true;
    }
    if (b.bins > resize_to) {
      b = csd::resize_descriptor(b, resize_to, cfg.table_for(b.bins), cfg.table_for(resize_to));
      resized = true;
    }
  }
  if (a.bins != b.bins) {
    csd::raise(csd::ErrorCode::bins_mismatch,
               "descriptors have " + std::to_string(a.bins) + " and " +
                   std::to_string(b.bins) + " bins; pass --resize-to " +
                   std::to_string(std::min(a.bins, b.bins)));
  }
  if (a.subsample_exp != b.subsample_exp) {
    std::cerr << "warning: descriptors were extracted at different scales (p="
              << a.subsample_exp << " vs p=" << b.subsample_exp << ")\n";
  }

  csd::MatchResult r = csd::l1_distance(a, b);
  r.resized = resized;
  std::cout << "distance=" << r.distance << " bins=" << r.bins_compared
            << " resized=" << (r.resized ? "yes" : "no") << "\n";
  return 0;
}

int run_index_build(const std::string& dir, const std::string& out_path, int bins,
                    const CommonOpts& common) {
  const auto cfg = resolve_config(common.config_path);
  const csd::CorpusIndex index = csd::build_index(dir, bins, cfg, &std::cerr);
  csd::save_index(index, out_path);
  std::cout << "indexed=" << index.records.size() << " bins=" << index.bins
            << " fp=" << index.fingerprint << "\n";
  return 0;
}

int run_index_query(const std::string& index_path, const std::string& image_path,
                    std::size_t top, const CommonOpts& common) {
  const auto cfg = resolve_config(common.config_path);
  const csd::CorpusIndex index = csd::load_index(index_path);
  const csd::RgbImage img = csd::load_ppm(image_path);
  const auto hits = csd::query(index, img, top, cfg);

  std::size_t rank = 1;
  for (const auto& hit : hits) {
    std::cout << rank++ << "\t" << hit.id << "\t" << hit.distance << "\n";
  }
  return 0;
}

int run_bench(int width, int height, int frames, int banks, const std::string& mode,
              int bins, double target_fps, std::uint32_t seed, const CommonOpts& common) {
  const auto cfg = resolve_config(common.config_path);
  csd::ExtractOptions opt;
  opt.banks = banks;
  opt.workers = common.workers;
  if (mode == "serial") {
    opt.mode = csd::AccumMode::reference;
  } else if (mode == "incremental") {
    opt.mode = csd::AccumMode::incremental;
  } else {
    opt.mode = csd::AccumMode::banked;
  }

  std::mt19937 rng(seed);
  std::uint64_t digest = csd::kFnvOffsetBasis;
  double total_ms = 0, min_ms = 0, max_ms = 0;
  for (int f = 0; f < frames; ++f) {
    const csd::RgbImage frame = random_frame(width, height, rng);
    const auto start = Clock::now();
    const csd::Descriptor d = csd::extract(frame, bins, cfg, opt);
    const double ms = ms_since(start);
    total_ms += ms;
    min_ms = f == 0 ? ms : std::min(min_ms, ms);
    max_ms = f == 0 ? ms : std::max(max_ms, ms);
    digest = csd::fnv1a64(d.values, digest);
  }

  const double mean_ms = total_ms / frames;
  const double fps = 1000.0 / mean_ms;

  std::cout << "frames=" << frames << " size=" << width << "x" << height
            << " bins=" << bins << " mode=" << mode << " banks=" << banks
            << " seed=" << seed << " digest=" << csd::to_hex(digest) << "\n";
  std::cerr << "mean_ms=" << mean_ms << " min_ms=" << min_ms << " max_ms=" << max_ms
            << " fps=" << fps << " target_fps=" << target_fps << " "
            << (fps >= target_fps ? "PASS" : "FAIL") << "\n";
  return 0;
}

int run_simulate(int width, int height, int banks, bool as_json, std::uint32_t seed,
                 const CommonOpts& common) {
  const auto cfg = resolve_config(common.config_path);
  const auto sp = csd::scale_params(width, height);
  const auto plan = csd::make_plan(sp, height, banks);

  std::mt19937 rng(seed);
  const csd::RgbImage frame = random_frame(width, height, rng);
  const csd::BinImage bi = csd::quantize_image(csd::convert_image(frame), cfg.table256);
  const auto report = csd::bank_stats(bi, plan, common.workers);

  if (as_json) {
    nlohmann::json j;
    j["width"] = width;
    j["height"] = height;
    j["banks"] = banks;
    j["subsample_exp"] = sp.subsample_exp;
    j["positions"] = {{"x", sp.positions_x}, {"y", sp.positions_y}};
    j["bank_table"] = nlohmann::json::array();
    for (std::size_t b = 0; b < report.banks.size(); ++b) {
      const auto& stats = report.banks[b];
      const auto& stripe = plan.stripes[b];
      j["bank_table"].push_back({{"bank", stats.bank},
                                 {"anchor_rows", {stripe.row_begin, stripe.row_end}},
                                 {"pixel_rows_read", stats.pixel_rows_read},
                                 {"owned_positions", stats.owned_positions},
                                 {"increments", stats.increments}});
    }
    j["totals"] = {{"owned_positions", report.total_positions},
                   {"rows_read", report.total_rows_read},
                   {"increments", report.total_increments}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::printf("%-5s %-14s %-10s %-10s %-12s\n", "bank", "anchor_rows", "rows_read",
              "positions", "increments");
  for (std::size_t b = 0; b < report.banks.size(); ++b) {
    const auto& stats = report.banks[b];
    const auto& stripe = plan.stripes[b];
    std::printf("%-5d [%4d,%4d)    %-10d %-10lld %-12llu\n", stats.bank, stripe.row_begin,
                stripe.row_end, stats.pixel_rows_read, stats.owned_positions,
                stats.increments);
  }
  std::printf("total %-14s %-10lld %-10lld %-12llu\n", "", report.total_rows_read,
              report.total_positions, report.total_increments);
  if (sp.step == 1) {
    const long long overlap = report.total_rows_read - height;
    const long long expected = 7LL * (plan.active_banks() - 1);
    std::printf("halo check: rows_read - height = %lld, 7*(active_banks-1) = %lld -> %s\n",
                overlap, expected, overlap == expected ? "ok" : "MISMATCH");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MPEG-7 Color Structure Descriptor toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // --config/--workers may follow the subcommand

  CommonOpts common;
  app.add_option("--config", common.config_path,
                 "quantization config file (default: $CSD_CONFIG or built-ins)");
  app.add_option("--workers", common.workers, "worker threads for parallel paths (0 = auto)");

  // extract
  std::string in_path, out_path;
  int bins = 256;
  bool as_json = false;
  auto* extract_cmd = app.add_subcommand("extract", "extract a descriptor from a PPM image");
  extract_cmd->add_option("--in", in_path, "input image (binary PPM)")->required();
  extract_cmd->add_option("--bins", bins, "descriptor size (256/128/64/32)")
      ->check(CLI::IsMember({256, 128, 64, 32}));
  extract_cmd->add_option("--out", out_path, "output descriptor file")->required();
  extract_cmd->add_flag("--json", as_json, "write the structured-text export instead of binary");

  // match
  std::string match_a, match_b;
  int resize_to = 0;
  auto* match_cmd = app.add_subcommand("match", "L1 distance between two descriptor files");
  match_cmd->add_option("a", match_a, "first descriptor")->required();
  match_cmd->add_option("b", match_b, "second descriptor")->required();
  match_cmd->add_option("--resize-to", resize_to, "unify both sides down to this bin count")
      ->check(CLI::IsMember({256, 128, 64, 32}));

  // index build / query
  auto* index_cmd = app.add_subcommand("index", "build or query a descriptor index");
  index_cmd->require_subcommand(1);
  std::string index_dir, index_out;
  int index_bins = 256;
  auto* build_cmd = index_cmd->add_subcommand("build", "index every PPM under a directory");
  build_cmd->add_option("--dir", index_dir, "corpus directory")->required();
  build_cmd->add_option("--out", index_out, "index file to write")->required();
  build_cmd->add_option("--bins", index_bins, "descriptor size")
      ->check(CLI::IsMember({256, 128, 64, 32}));

  std::string query_index, query_image;
  std::size_t query_top = 10;
  auto* query_cmd = index_cmd->add_subcommand("query", "rank corpus images against a query image");
  query_cmd->add_option("--index", query_index, "index file")->required();
  query_cmd->add_option("--image", query_image, "query image (binary PPM)")->required();
  query_cmd->add_option("--top", query_top, "number of results");

  // bench
  int bench_w = 120, bench_h = 80, bench_frames = 100, bench_banks = 10;
  int bench_bins = 256;
  double target_fps = 25.0;
  std::uint32_t bench_seed = 42;
  std::string bench_mode = "incremental";
  auto* bench_cmd = app.add_subcommand("bench", "time extraction over synthetic frames");
  bench_cmd->add_option("--width", bench_w, "frame width")->check(CLI::Range(8, 65536));
  bench_cmd->add_option("--height", bench_h, "frame height")->check(CLI::Range(8, 65536));
  bench_cmd->add_option("--frames", bench_frames, "frame count")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--banks", bench_banks, "bank count for banked mode")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--mode", bench_mode, "serial | incremental | banked")
      ->check(CLI::IsMember({"serial", "incremental", "banked"}));
  bench_cmd->add_option("--bins", bench_bins, "descriptor size")
      ->check(CLI::IsMember({256, 128, 64, 32}));
  bench_cmd->add_option("--target-fps", target_fps, "frame rate to judge PASS/FAIL against");
  bench_cmd->add_option("--seed", bench_seed, "frame generator seed");

  // simulate
  int sim_w = 120, sim_h = 80, sim_banks = 10;
  bool sim_json = false;
  std::uint32_t sim_seed = 42;
  auto* sim_cmd = app.add_subcommand("simulate", "show the bank plan and access schedule");
  sim_cmd->add_option("--width", sim_w, "frame width")->check(CLI::Range(8, 65536));
  sim_cmd->add_option("--height", sim_h, "frame height")->check(CLI::Range(8, 65536));
  sim_cmd->add_option("--banks", sim_banks, "bank count")->check(CLI::PositiveNumber);
  sim_cmd->add_flag("--json", sim_json, "machine-readable output");
  sim_cmd->add_option("--seed", sim_seed, "synthetic frame seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*extract_cmd) return run_extract(in_path, bins, out_path, as_json, common);
    if (*match_cmd) return run_match(match_a, match_b, resize_to, common);
    if (*build_cmd) return run_index_build(index_dir, index_out, index_bins, common);
    if (*query_cmd) return run_index_query(query_index, query_image, query_top, common);
    if (*bench_cmd)
      return run_bench(bench_w, bench_h, bench_frames, bench_banks, bench_mode, bench_bins,
                       target_fps, bench_seed, common);
    if (*sim_cmd) return run_simulate(sim_w, sim_h, sim_banks, sim_json, sim_seed, common);
  } catch (const csd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
