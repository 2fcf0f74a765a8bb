#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace csd {

/// Final color structure descriptor: M 8-bit values plus the subsample
/// exponent recorded at extraction time so matchers can flag scale
/// mismatches.
struct Descriptor {
  int bins = 0;
  int subsample_exp = 0;
  std::vector<std::uint8_t> values;

  bool operator==(const Descriptor&) const = default;
};

// Binary layout (bit-exact):
//   bytes 0-3  magic "CSD1"
//   byte  4    version (1)
//   bytes 5-6  bins, little-endian uint16
//   byte  7    subsample exponent
//   bytes 8..  bins quantized values
std::vector<std::uint8_t> encode_descriptor(const Descriptor& d);

/// Parse errors name the offending byte offset.
Descriptor decode_descriptor(std::span<const std::uint8_t> bytes);

void save_descriptor(const Descriptor& d, const std::filesystem::path& path);
Descriptor load_descriptor(const std::filesystem::path& path);

/// {"format":"mpeg7-csd","bins":M,"subsample_exp":p,"values":[...]}
std::string descriptor_to_json(const Descriptor& d);
Descriptor descriptor_from_json(const std::string& text);

}  // namespace csd
