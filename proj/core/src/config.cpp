#include "csd/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "csd/banked.hpp"
#include "csd/error.hpp"
#include "csd/hash.hpp"
#include "csd/hmmd.hpp"

namespace csd {

std::string to_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return std::string(buf);
}

const ExtractionConfig& ExtractionConfig::defaults() {
  static const ExtractionConfig cfg{default_table(256), default_table(128),
                                    default_table(64), default_table(32),
                                    AmplitudeQuantizer::defaults()};
  return cfg;
}

const QuantTable& ExtractionConfig::table_for(int bins) const {
  switch (bins) {
    case 256:
      return table256;
    case 128:
      return table128;
    case 64:
      return table64;
    case 32:
      return table32;
    default:
      raise(ErrorCode::invalid_input,
            "bin count must be one of 256/128/64/32, got " + std::to_string(bins));
  }
}

std::string ExtractionConfig::fingerprint() const {
  std::ostringstream canon;
  canon << "cut:";
  for (int c : table256.cutpoints) canon << c << ",";
  for (const QuantTable* t : {&table256, &table128, &table64, &table32}) {
    canon << ";t" << t->bins << ":";
    for (const auto& lv : t->levels) canon << lv.hue << "x" << lv.sum << ",";
  }
  canon << ";aq:";
  for (double b : amplitude.bounds()) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", b);
    canon << buf << ",";
  }
  canon << "/";
  for (int l : amplitude.levels()) canon << l << ",";
  return to_hex(fnv1a64(canon.str()));
}

ExtractionConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::io_error, "cannot open config " + path.string());

  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::parse_error, "config " + path.string() + ": " + e.what());
  }

  ExtractionConfig cfg = ExtractionConfig::defaults();
  try {
    if (j.contains("cutpoints")) {
      const auto cuts = j["cutpoints"].get<std::vector<int>>();
      if (cuts.size() != 4) {
        raise(ErrorCode::invalid_cutpoints, "config needs exactly 4 cutpoints");
      }
      for (QuantTable* t : {&cfg.table256, &cfg.table128, &cfg.table64, &cfg.table32}) {
        std::copy(cuts.begin(), cuts.end(), t->cutpoints.begin());
      }
    }
    if (j.contains("levels")) {
      const int bins = j.value("bins", 256);
      QuantTable table;
      table.bins = bins;
      table.cutpoints = cfg.table256.cutpoints;
      const auto pairs = j["levels"].get<std::vector<std::vector<int>>>();
      if (pairs.size() != 5) {
        raise(ErrorCode::table_inconsistent, "config needs exactly 5 level pairs");
      }
      for (std::size_t s = 0; s < pairs.size(); ++s) {
        if (pairs[s].size() != 2) {
          raise(ErrorCode::table_inconsistent,
                "level pair " + std::to_string(s) + " must be [hue, sum]");
        }
        table.levels[s] = SubspaceLevels{pairs[s][0], pairs[s][1]};
      }
      switch (bins) {
        case 256:
          cfg.table256 = table;
          break;
        case 128:
          cfg.table128 = table;
          break;
        case 64:
          cfg.table64 = table;
          break;
        case 32:
          cfg.table32 = table;
          break;
        default:
          raise(ErrorCode::invalid_input,
                "config bins must be one of 256/128/64/32, got " + std::to_string(bins));
      }
    }
    if (j.contains("amplitude")) {
      const auto& amp = j["amplitude"];
      cfg.amplitude = AmplitudeQuantizer(amp.at("bounds").get<std::vector<double>>(),
                                         amp.at("levels").get<std::vector<int>>());
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::parse_error, "config " + path.string() + ": " + e.what());
  }

  // Every table must pass validation, modified or not (cutpoint overrides
  // touch all four).
  cfg.table256 = validate_table(cfg.table256);
  cfg.table128 = validate_table(cfg.table128);
  cfg.table64 = validate_table(cfg.table64);
  cfg.table32 = validate_table(cfg.table32);
  return cfg;
}

Descriptor extract(const RgbImage& img, int bins, const ExtractionConfig& cfg,
                   const ExtractOptions& opt) {
  const QuantTable& target = cfg.table_for(bins);  // validates the bin count
  const StructuringParams sp = scale_params(img.width(), img.height());

  const HmmdImage hmmd = convert_image(img);
  const BinImage bi = quantize_image(hmmd, cfg.table256);

  RawHistogram h;
  switch (opt.mode) {
    case AccumMode::reference:
      h = accumulate_reference(bi, sp);
      break;
    case AccumMode::incremental:
      h = accumulate_incremental(bi, sp);
      break;
    case AccumMode::banked:
      h = accumulate_banked(bi, make_plan(sp, img.height(), opt.banks), opt.workers);
      break;
  }

  if (bins < 256) {
    h = unify_histogram(h, unify_map(cfg.table256, target), target.bins,
                        static_cast<std::uint32_t>(sp.total_positions()));
  }
  return normalize_and_quantize(h, sp, cfg.amplitude);
}

}  // namespace csd
