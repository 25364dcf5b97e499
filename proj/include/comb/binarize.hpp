#pragma once

#include <array>
#include <cstdint>

#include "comb/raster.hpp"

namespace comb {

struct Histogram {
  std::array<std::uint64_t, 256> counts{};

  std::uint64_t total() const noexcept;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

Histogram histogram(const GrayImage& img);

/// Foreground iff intensity > t (strict); t = 255 yields an empty mask.
BinaryImage threshold_binary(const GrayImage& img, std::uint8_t t);

/// Between-class variance w0 * w1 * (mu0 - mu1)^2 for the split {<= t} / {> t},
/// with weights as pixel fractions. Zero when either class is empty.
double between_class_variance(const Histogram& hist, int t);

/// Smallest t in [0, 255] maximizing the between-class variance.
std::uint8_t otsu_threshold(const Histogram& hist);
std::uint8_t otsu_threshold(const GrayImage& img);

BinaryImage binarize_otsu(const GrayImage& img);

/// Intensity complement, 255 - v.
GrayImage invert(const GrayImage& img);

}  // namespace comb
