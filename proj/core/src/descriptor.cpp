#include "csd/descriptor.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "csd/error.hpp"

namespace csd {

namespace {

constexpr char kMagic[4] = {'C', 'S', 'D', '1'};
constexpr std::uint8_t kVersion = 1;

bool valid_bins(int bins) {
  return bins == 256 || bins == 128 || bins == 64 || bins == 32;
}

}  // namespace

std::vector<std::uint8_t> encode_descriptor(const Descriptor& d) {
  if (!valid_bins(d.bins) || d.values.size() != static_cast<std::size_t>(d.bins)) {
    raise(ErrorCode::invalid_input, "descriptor has " + std::to_string(d.values.size()) +
                                        " values for " + std::to_string(d.bins) + " bins");
  }
  if (d.subsample_exp < 0 || d.subsample_exp > 255) {
    raise(ErrorCode::invalid_input, "subsample exponent out of byte range");
  }
  std::vector<std::uint8_t> out;
  out.reserve(8 + d.values.size());
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(d.bins & 0xFF));
  out.push_back(static_cast<std::uint8_t>((d.bins >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>(d.subsample_exp));
  out.insert(out.end(), d.values.begin(), d.values.end());
  return out;
}

Descriptor decode_descriptor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) {
    raise(ErrorCode::parse_error, "descriptor truncated at byte offset " +
                                      std::to_string(bytes.size()) + ", header needs 8 bytes");
  }
  for (int i = 0; i < 4; ++i) {
    if (bytes[i] != static_cast<std::uint8_t>(kMagic[i])) {
      raise(ErrorCode::parse_error,
            "bad descriptor magic at byte offset " + std::to_string(i));
    }
  }
  if (bytes[4] != kVersion) {
    raise(ErrorCode::parse_error, "unsupported descriptor version " +
                                      std::to_string(bytes[4]) + " at byte offset 4");
  }
  const int bins = static_cast<int>(bytes[5]) | (static_cast<int>(bytes[6]) << 8);
  if (!valid_bins(bins)) {
    raise(ErrorCode::parse_error,
          "invalid bin count " + std::to_string(bins) + " at byte offset 5");
  }
  if (bytes.size() != static_cast<std::size_t>(bins) + 8) {
    raise(ErrorCode::parse_error, "descriptor payload ends at byte offset " +
                                      std::to_string(bytes.size()) + ", expected " +
                                      std::to_string(8 + bins));
  }
  Descriptor d;
  d.bins = bins;
  d.subsample_exp = bytes[7];
  d.values.assign(bytes.begin() + 8, bytes.end());
  return d;
}

void save_descriptor(const Descriptor& d, const std::filesystem::path& path) {
  const auto bytes = encode_descriptor(d);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(ErrorCode::io_error, "short write to " + path.string());
}

Descriptor load_descriptor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::io_error, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_descriptor(bytes);
}

std::string descriptor_to_json(const Descriptor& d) {
  nlohmann::json j;
  j["format"] = "mpeg7-csd";
  j["bins"] = d.bins;
  j["subsample_exp"] = d.subsample_exp;
  j["values"] = d.values;
  return j.dump(2) + "\n";
}

Descriptor descriptor_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::parse_error, std::string("invalid descriptor JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "mpeg7-csd") {
      raise(ErrorCode::parse_error, "descriptor JSON has unknown format tag");
    }
    Descriptor d;
    d.bins = j.at("bins").get<int>();
    d.subsample_exp = j.at("subsample_exp").get<int>();
    d.values = j.at("values").get<std::vector<std::uint8_t>>();
    if (!valid_bins(d.bins) || d.values.size() != static_cast<std::size_t>(d.bins)) {
      raise(ErrorCode::parse_error, "descriptor JSON bins/values mismatch");
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::parse_error, std::string("descriptor JSON missing field: ") + e.what());
  }
}

}  // namespace csd
