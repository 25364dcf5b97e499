#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace comb {

// Raster convention shared by every module: origin at the top-left pixel,
// x grows to the right, y grows downward, storage is row-major.

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

template <typename T>
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw std::invalid_argument("raster dimensions must be positive, got " +
                                  std::to_string(width) + "x" + std::to_string(height));
    }
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }
  Raster(int width, int height, std::vector<T> data) : Raster(width, height) {
    if (data.size() != data_.size()) {
      throw std::invalid_argument("raster payload has " + std::to_string(data.size()) +
                                  " values, expected " + std::to_string(data_.size()));
    }
    data_ = std::move(data);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  T operator()(int x, int y) const { return data_[index(x, y)]; }
  T& operator()(int x, int y) { return data_[index(x, y)]; }

  std::span<const T> pixels() const noexcept { return data_; }
  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> row(int y) const noexcept {
    return std::span<const T>(data_).subspan(static_cast<std::size_t>(y) * width_, width_);
  }
  std::span<T> row(int y) noexcept {
    return std::span<T>(data_).subspan(static_cast<std::size_t>(y) * width_, width_);
  }

  bool same_shape(const Raster& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }
  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// 8-bit single-channel intensity image.
using GrayImage = Raster<std::uint8_t>;

/// Foreground mask; every value is 0 (background) or 1 (foreground).
using BinaryImage = Raster<std::uint8_t>;

/// Decodes a binary PGM (P5) or PPM (P6) stream with maxval <= 255.
/// Color input is reduced to Rec.601 luma, rounded half-up.
GrayImage load_pnm(std::span<const std::uint8_t> bytes);
GrayImage load_pnm_file(const std::string& path);

std::vector<std::uint8_t> save_pgm(const GrayImage& img);
void save_pgm_file(const GrayImage& img, const std::string& path);

/// Rec.601 luma of an 8-bit RGB triple, rounded half-up.
std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

GrayImage binary_to_gray(const BinaryImage& bin);

BinaryImage bin_and(const BinaryImage& a, const BinaryImage& b);
BinaryImage bin_or(const BinaryImage& a, const BinaryImage& b);
/// a AND NOT b.
BinaryImage bin_sub(const BinaryImage& a, const BinaryImage& b);
BinaryImage bin_not(const BinaryImage& a);

std::size_t count_foreground(const BinaryImage& bin) noexcept;
bool is_subset(const BinaryImage& inner, const BinaryImage& outer);

}  // namespace comb
