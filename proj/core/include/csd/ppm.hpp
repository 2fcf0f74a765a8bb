#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "csd/image.hpp"

namespace csd {

/// Binary Portable Pixmap ("P6"), maxval 255 only. Decode errors name
/// the byte offset where parsing failed.
RgbImage decode_ppm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_ppm(const RgbImage& img);

RgbImage load_ppm(const std::filesystem::path& path);
void save_ppm(const RgbImage& img, const std::filesystem::path& path);

}  // namespace csd
