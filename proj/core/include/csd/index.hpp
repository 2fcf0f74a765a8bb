#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "csd/config.hpp"
#include "csd/descriptor.hpp"
#include "csd/image.hpp"
#include "csd/match.hpp"

namespace csd {

struct IndexRecord {
  std::string id;  // path relative to the indexed directory
  int image_width = 0;
  int image_height = 0;
  Descriptor descriptor;

  bool operator==(const IndexRecord&) const = default;
};

/// Linear-scan descriptor index over one corpus directory. All records
/// share a bin count; the config fingerprint pins the quantization setup
/// the descriptors were extracted with.
struct CorpusIndex {
  int bins = 0;
  std::string fingerprint;
  std::vector<IndexRecord> records;

  bool operator==(const CorpusIndex&) const = default;
};

/// Extracts every decodable image under dir (recursively), in simplified
/// lexicographic id order. Undecodable files are skipped with a warning
/// on `warnings` when given. Throws ErrorCode::empty_corpus when nothing
/// decodes.
CorpusIndex build_index(const std::filesystem::path& dir, int bins,
                        const ExtractionConfig& cfg, std::ostream* warnings = nullptr);

// Text format, one record per line:
//   csd-index v1 bins=<M> fp=<hex>
//   <id>\t<width>x<height>\t<p>\t<comma-separated values>
void save_index(const CorpusIndex& index, const std::filesystem::path& path);
CorpusIndex load_index(const std::filesystem::path& path);

/// Extracts a descriptor from the query image with cfg and ranks the
/// corpus by L1 distance. Throws ErrorCode::stale_index when cfg does
/// not match the index fingerprint.
std::vector<RankedHit> query(const CorpusIndex& index, const RgbImage& image,
                             std::size_t k, const ExtractionConfig& cfg);

}  // namespace csd
