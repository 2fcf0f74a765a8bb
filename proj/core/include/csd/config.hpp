#pragma once

#include <filesystem>
#include <string>

#include "csd/extract.hpp"
#include "csd/quant.hpp"

namespace csd {

/// Everything that influences descriptor values: the four quantization
/// tables (all sharing one set of cutpoints) and the amplitude quantizer.
/// Indexes store fingerprint() so a query with drifted configuration is
/// refused instead of silently comparing incompatible descriptors.
struct ExtractionConfig {
  QuantTable table256;
  QuantTable table128;
  QuantTable table64;
  QuantTable table32;
  AmplitudeQuantizer amplitude;

  static const ExtractionConfig& defaults();

  const QuantTable& table_for(int bins) const;

  /// FNV-1a 64 over the canonical serialization of cutpoints, level
  /// tables and amplitude regions, as a 16-digit hex string.
  std::string fingerprint() const;

  bool operator==(const ExtractionConfig&) const = default;
};

/// Loads a JSON config file and overlays it on the defaults. Recognized
/// fields: "bins", "cutpoints" (4 ints, applied to all tables), "levels"
/// (5 [hue, sum] pairs for the table named by "bins"), and optionally
/// "amplitude": {"bounds": [...], "levels": [...]}. The resulting tables
/// must pass validate_table; inconsistent ones are rejected with the
/// subspace sums in the message.
ExtractionConfig load_config(const std::filesystem::path& path);

enum class AccumMode { reference, incremental, banked };

struct ExtractOptions {
  AccumMode mode = AccumMode::incremental;
  int banks = 10;
  int workers = 0;  // 0 = hardware default
};

/// Full pipeline: convert -> quantize at 256 bins -> accumulate ->
/// (unify when bins < 256) -> normalize and amplitude-quantize.
Descriptor extract(const RgbImage& img, int bins,
                   const ExtractionConfig& cfg = ExtractionConfig::defaults(),
                   const ExtractOptions& opt = {});

}  // namespace csd
