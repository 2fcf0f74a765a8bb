#include "csd/index.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "csd/error.hpp"
#include "csd/ppm.hpp"

namespace csd {

namespace {

constexpr char kHeaderTag[] = "csd-index v1";

std::string join_values(const std::vector<std::uint8_t>& values) {
  std::string out;
  out.reserve(values.size() * 4);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

CorpusIndex build_index(const std::filesystem::path& dir, int bins,
                        const ExtractionConfig& cfg, std::ostream* warnings) {
  if (!std::filesystem::is_directory(dir)) {
    raise(ErrorCode::io_error, dir.string() + " is not a directory");
  }

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::vector<std::pair<std::string, std::filesystem::path>> ids;
  ids.reserve(files.size());
  for (const auto& f : files) {
    ids.emplace_back(f.lexically_relative(dir).generic_string(), f);
  }
  std::sort(ids.begin(), ids.end());

  CorpusIndex index;
  index.bins = bins;
  index.fingerprint = cfg.fingerprint();
  for (const auto& [id, path] : ids) {
    if (id.find('\t') != std::string::npos || id.find('\n') != std::string::npos) {
      if (warnings) *warnings << "skipping " << id << ": tab/newline in file name\n";
      continue;
    }
    try {
      const RgbImage img = load_ppm(path);
      IndexRecord rec;
      rec.id = id;
      rec.image_width = img.width();
      rec.image_height = img.height();
      rec.descriptor = extract(img, bins, cfg);
      index.records.push_back(std::move(rec));
    } catch (const Error& e) {
      if (warnings) *warnings << "skipping " << id << ": " << e.what() << "\n";
    }
  }

  if (index.records.empty()) {
    raise(ErrorCode::empty_corpus, "no decodable images under " + dir.string());
  }
  return index;
}

void save_index(const CorpusIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::io_error, "cannot open " + path.string() + " for writing");

  out << kHeaderTag << " bins=" << index.bins << " fp=" << index.fingerprint << "\n";
  for (const auto& rec : index.records) {
    out << rec.id << "\t" << rec.image_width << "x" << rec.image_height << "\t"
        << rec.descriptor.subsample_exp << "\t" << join_values(rec.descriptor.values)
        << "\n";
  }
  if (!out) raise(ErrorCode::io_error, "short write to " + path.string());
}

CorpusIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::io_error, "cannot open " + path.string());

  std::string header;
  if (!std::getline(in, header)) {
    raise(ErrorCode::parse_error, path.string() + ": empty index file");
  }

  CorpusIndex index;
  {
    std::istringstream hs(header);
    std::string tag, version, bins_field, fp_field;
    hs >> tag >> version >> bins_field >> fp_field;
    if (tag + " " + version != kHeaderTag) {
      raise(ErrorCode::parse_error, path.string() + ": line 1: unrecognized index header");
    }
    if (bins_field.rfind("bins=", 0) != 0 || fp_field.rfind("fp=", 0) != 0) {
      raise(ErrorCode::parse_error, path.string() + ": line 1: malformed index header");
    }
    try {
      index.bins = std::stoi(bins_field.substr(5));
    } catch (const std::exception&) {
      raise(ErrorCode::parse_error, path.string() + ": line 1: non-numeric bin count");
    }
    index.fingerprint = fp_field.substr(3);
  }

  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto where = [&] { return path.string() + ": line " + std::to_string(lineno); };

    std::array<std::string, 4> fields;
    std::size_t start = 0;
    for (int f = 0; f < 3; ++f) {
      const auto tab = line.find('\t', start);
      if (tab == std::string::npos) raise(ErrorCode::parse_error, where() + ": expected 4 fields");
      fields[f] = line.substr(start, tab - start);
      start = tab + 1;
    }
    fields[3] = line.substr(start);

    IndexRecord rec;
    rec.id = fields[0];
    try {
      const auto x = fields[1].find('x');
      if (x == std::string::npos) throw std::invalid_argument("missing 'x'");
      rec.image_width = std::stoi(fields[1].substr(0, x));
      rec.image_height = std::stoi(fields[1].substr(x + 1));
      rec.descriptor.subsample_exp = std::stoi(fields[2]);

      std::istringstream vs(fields[3]);
      std::string item;
      while (std::getline(vs, item, ',')) {
        const int v = std::stoi(item);
        if (v < 0 || v > 255) throw std::out_of_range("value outside [0,255]");
        rec.descriptor.values.push_back(static_cast<std::uint8_t>(v));
      }
    } catch (const std::exception& e) {
      raise(ErrorCode::parse_error, where() + ": " + e.what());
    }
    rec.descriptor.bins = static_cast<int>(rec.descriptor.values.size());
    if (rec.descriptor.bins != index.bins) {
      raise(ErrorCode::parse_error, where() + ": record has " +
                                        std::to_string(rec.descriptor.bins) +
                                        " values, index declares " +
                                        std::to_string(index.bins));
    }
    index.records.push_back(std::move(rec));
  }
  return index;
}

std::vector<RankedHit> query(const CorpusIndex& index, const RgbImage& image,
                             std::size_t k, const ExtractionConfig& cfg) {
  if (cfg.fingerprint() != index.fingerprint) {
    raise(ErrorCode::stale_index,
          "index was built with config fingerprint " + index.fingerprint +
              ", current config is " + cfg.fingerprint() + "; rebuild the index");
  }
  const Descriptor q = extract(image, index.bins, cfg);

  std::vector<std::pair<std::string, Descriptor>> corpus;
  corpus.reserve(index.records.size());
  for (const auto& rec : index.records) corpus.emplace_back(rec.id, rec.descriptor);
  return rank(q, corpus, k);
}

}  // namespace csd
