#include "csd/ppm.hpp"

#include <fstream>
#include <string>

#include "csd/error.hpp"

namespace csd {

namespace {

// Header scanner for the P6 format: whitespace-separated decimal fields,
// '#' comments run to end of line.
struct HeaderCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    raise(ErrorCode::decode_error, what + " at byte offset " + std::to_string(pos));
  }

  void skip_space_and_comments() {
    while (pos < bytes.size()) {
      const char c = static_cast<char>(bytes[pos]);
      if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos;
      } else {
        return;
      }
    }
  }

  int read_number(const char* field) {
    skip_space_and_comments();
    if (pos >= bytes.size()) fail(std::string("missing ") + field);
    if (bytes[pos] < '0' || bytes[pos] > '9') fail(std::string("invalid ") + field);
    long value = 0;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
      value = value * 10 + (bytes[pos] - '0');
      if (value > 1'000'000'000) fail(std::string(field) + " out of range");
      ++pos;
    }
    return static_cast<int>(value);
  }
};

}  // namespace

RgbImage decode_ppm(std::span<const std::uint8_t> bytes) {
  HeaderCursor cur{bytes};
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    raise(ErrorCode::decode_error, "not a binary PPM (expected \"P6\") at byte offset 0");
  }
  cur.pos = 2;

  const int width = cur.read_number("width");
  const int height = cur.read_number("height");
  const int maxval = cur.read_number("maxval");
  if (width < 1 || height < 1) cur.fail("non-positive image dimensions");
  if (maxval != 255) cur.fail("unsupported maxval " + std::to_string(maxval));

  // Exactly one whitespace byte separates the header from pixel data.
  if (cur.pos >= bytes.size()) cur.fail("missing pixel data");
  const char sep = static_cast<char>(bytes[cur.pos]);
  if (sep != ' ' && sep != '\t' && sep != '\r' && sep != '\n') {
    cur.fail("expected whitespace before pixel data");
  }
  ++cur.pos;

  const std::size_t need = static_cast<std::size_t>(width) * height * 3;
  if (bytes.size() - cur.pos < need) {
    raise(ErrorCode::decode_error,
          "truncated pixel data at byte offset " + std::to_string(bytes.size()) +
              ", expected " + std::to_string(cur.pos + need) + " bytes");
  }

  RgbImage img(width, height);
  auto& px = img.pixels();
  const std::uint8_t* p = bytes.data() + cur.pos;
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = RgbPixel{p[3 * i], p[3 * i + 1], p[3 * i + 2]};
  }
  return img;
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& img) {
  const std::string header = "P6\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + img.pixel_count() * 3);
  out.insert(out.end(), header.begin(), header.end());
  for (const auto& p : img.pixels()) {
    out.push_back(p.r);
    out.push_back(p.g);
    out.push_back(p.b);
  }
  return out;
}

RgbImage load_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::io_error, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_ppm(bytes);
}

void save_ppm(const RgbImage& img, const std::filesystem::path& path) {
  const auto bytes = encode_ppm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(ErrorCode::io_error, "short write to " + path.string());
}

}  // namespace csd
