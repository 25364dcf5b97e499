#include "comb/raster.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>

namespace comb {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error("PNM parse error at byte " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

namespace {

class HeaderReader {
 public:
  HeaderReader(std::span<const std::uint8_t> bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

  std::size_t pos() const { return pos_; }
  /// Offset of the first digit of the last number read.
  std::size_t last_start() const { return last_start_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long read_uint(const char* what) {
    skip_space_and_comments();
    const std::size_t start = last_start_ = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) throw ParseError(std::string(what) + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      throw ParseError(std::string("expected ") + what, start);
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void expect_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw ParseError("expected whitespace after maxval", pos_);
    }
    ++pos_;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
  std::size_t last_start_ = 0;
};

template <typename Op>
BinaryImage combine(const BinaryImage& a, const BinaryImage& b, const char* name, Op op) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(name) + ": shape mismatch " +
                                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                " vs " + std::to_string(b.width()) + "x" +
                                std::to_string(b.height()));
  }
  BinaryImage out(a.width(), a.height());
  auto pa = a.pixels();
  auto pb = b.pixels();
  auto po = out.pixels();
  for (std::size_t i = 0; i < po.size(); ++i) po[i] = op(pa[i], pb[i]);
  return out;
}

}  // namespace

std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  // Integer form of round(0.299 R + 0.587 G + 0.114 B) with halves rounded up.
  const long scaled = 299L * r + 587L * g + 114L * b;
  return static_cast<std::uint8_t>((scaled + 500) / 1000);
}

GrayImage load_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw ParseError("magic must be P5 or P6", 0);
  }
  const bool color = bytes[1] == '6';
  HeaderReader reader(bytes, 2);
  const long width = reader.read_uint("width");
  const std::size_t width_at = reader.last_start();
  const long height = reader.read_uint("height");
  const long maxval = reader.read_uint("maxval");
  const std::size_t maxval_at = reader.last_start();
  if (width < 1 || height < 1 || width > 65536 || height > 65536) {
    throw ParseError("image dimensions out of range", width_at);
  }
  if (maxval < 1 || maxval > 255) {
    throw ParseError("maxval must be in [1, 255], got " + std::to_string(maxval), maxval_at);
  }
  reader.expect_single_space();

  const std::size_t offset = reader.pos();
  const std::size_t channels = color ? 3 : 1;
  const std::size_t need = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() - offset < need) {
    throw ParseError("truncated payload: need " + std::to_string(need) + " bytes, have " +
                         std::to_string(bytes.size() - offset),
                     bytes.size());
  }

  GrayImage img(static_cast<int>(width), static_cast<int>(height));
  auto out = img.pixels();
  const auto payload = bytes.subspan(offset, need);
  if (color) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = luma601(payload[3 * i], payload[3 * i + 1], payload[3 * i + 2]);
    }
  } else {
    std::copy(payload.begin(), payload.end(), out.begin());
  }
  return img;
}

GrayImage load_pnm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return load_pnm(bytes);
}

std::vector<std::uint8_t> save_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

void save_pgm_file(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const auto bytes = save_pgm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

GrayImage binary_to_gray(const BinaryImage& bin) {
  GrayImage out(bin.width(), bin.height());
  std::transform(bin.pixels().begin(), bin.pixels().end(), out.pixels().begin(),
                 [](std::uint8_t v) { return v ? std::uint8_t{255} : std::uint8_t{0}; });
  return out;
}

BinaryImage bin_and(const BinaryImage& a, const BinaryImage& b) {
  return combine(a, b, "bin_and", [](auto x, auto y) { return std::uint8_t(x & y); });
}

BinaryImage bin_or(const BinaryImage& a, const BinaryImage& b) {
  return combine(a, b, "bin_or", [](auto x, auto y) { return std::uint8_t(x | y); });
}

BinaryImage bin_sub(const BinaryImage& a, const BinaryImage& b) {
  return combine(a, b, "bin_sub", [](auto x, auto y) { return std::uint8_t(x & (y ^ 1)); });
}

BinaryImage bin_not(const BinaryImage& a) {
  BinaryImage out(a.width(), a.height());
  std::transform(a.pixels().begin(), a.pixels().end(), out.pixels().begin(),
                 [](std::uint8_t v) { return std::uint8_t(v ^ 1); });
  return out;
}

std::size_t count_foreground(const BinaryImage& bin) noexcept {
  return static_cast<std::size_t>(std::count(bin.pixels().begin(), bin.pixels().end(), 1));
}

bool is_subset(const BinaryImage& inner, const BinaryImage& outer) {
  if (!inner.same_shape(outer)) throw std::invalid_argument("is_subset: shape mismatch");
  auto a = inner.pixels();
  auto b = outer.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

}  // namespace comb
