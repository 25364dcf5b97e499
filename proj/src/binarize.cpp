#include "comb/binarize.hpp"

#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace comb {

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram histogram(const GrayImage& img) {
  Histogram h;
  for (auto v : img.pixels()) ++h.counts[v];
  return h;
}

BinaryImage threshold_binary(const GrayImage& img, std::uint8_t t) {
  BinaryImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > t ? 1 : 0;
  return out;
}

double between_class_variance(const Histogram& hist, int t) {
  std::uint64_t n0 = 0, n1 = 0;
  std::uint64_t s0 = 0, s1 = 0;
  for (int v = 0; v < 256; ++v) {
    const auto c = hist.counts[v];
    if (v <= t) {
      n0 += c;
      s0 += c * static_cast<std::uint64_t>(v);
    } else {
      n1 += c;
      s1 += c * static_cast<std::uint64_t>(v);
    }
  }
  if (n0 == 0 || n1 == 0) return 0.0;
  const double n = static_cast<double>(n0 + n1);
  const double mu0 = static_cast<double>(s0) / static_cast<double>(n0);
  const double mu1 = static_cast<double>(s1) / static_cast<double>(n1);
  const double d = mu0 - mu1;
  return (static_cast<double>(n0) / n) * (static_cast<double>(n1) / n) * d * d;
}

std::uint8_t otsu_threshold(const Histogram& hist) {
  // With n pixels, S the intensity sum and (n0, s0) the count/sum of class 0,
  // n^4 * sigma_B^2 = (n * s0 - n0 * S)^2 * n^2 / (n0 * n1), so candidates rank by
  // (n * s0 - n0 * S)^2 / (n0 * n1). For n < 2^64 the cross products stay below 2^402.
  using big = boost::multiprecision::uint512_t;
  big n = 0, total_sum = 0;
  for (int v = 0; v < 256; ++v) {
    n += hist.counts[v];
    total_sum += big(hist.counts[v]) * v;
  }

  int best_t = 0;
  big best_num = 0;
  big best_den = 1;
  big n0 = 0, s0 = 0;
  for (int t = 0; t < 256; ++t) {
    n0 += hist.counts[t];
    s0 += big(hist.counts[t]) * t;
    const big n1 = n - n0;
    if (n0 == 0 || n1 == 0) continue;
    const big a = n * s0;
    const big b = n0 * total_sum;
    const big diff = a > b ? a - b : b - a;
    const big num = diff * diff;
    const big den = n0 * n1;
    if (num * best_den > best_num * den) {
      best_t = t;
      best_num = num;
      best_den = den;
    }
  }
  return static_cast<std::uint8_t>(best_t);
}

std::uint8_t otsu_threshold(const GrayImage& img) { return otsu_threshold(histogram(img)); }

BinaryImage binarize_otsu(const GrayImage& img) {
  return threshold_binary(img, otsu_threshold(img));
}

GrayImage invert(const GrayImage& img) {
  GrayImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<std::uint8_t>(255 - src[i]);
  return out;
}

}  // namespace comb
