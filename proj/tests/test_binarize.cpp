#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "comb/binarize.hpp"
#include "oracles.hpp"

using namespace comb;

TEST_CASE("histogram counts levels") {
  const GrayImage img(2, 2, std::vector<std::uint8_t>{0, 0, 255, 7});
  const auto h = histogram(img);
  CHECK(h.counts[0] == 2);
  CHECK(h.counts[7] == 1);
  CHECK(h.counts[255] == 1);
  CHECK(h.total() == 4);

  const auto c = histogram(GrayImage(5, 3, std::uint8_t{42}));
  CHECK(c.counts[42] == 15);
  CHECK(c.total() == 15);

  std::mt19937 rng(1);
  const auto r = oracle::random_gray(32, 32, rng);
  const auto naive = oracle::count_levels(r);
  const auto got = histogram(r);
  CHECK(std::equal(naive.begin(), naive.end(), got.counts.begin()));
}

TEST_CASE("threshold is strict") {
  const GrayImage img(2, 1, std::vector<std::uint8_t>{100, 200});
  CHECK(threshold_binary(img, 128) == BinaryImage(2, 1, std::vector<std::uint8_t>{0, 1}));
  CHECK(threshold_binary(GrayImage(1, 2, std::vector<std::uint8_t>{128, 129}), 128) ==
        BinaryImage(1, 2, std::vector<std::uint8_t>{0, 1}));

  std::mt19937 rng(2);
  for (int i = 0; i < 10; ++i) {
    const auto r = oracle::random_gray(17, 9, rng);
    const auto t = static_cast<std::uint8_t>(rng() % 256);
    const auto b = threshold_binary(r, t);
    for (int y = 0; y < r.height(); ++y)
      for (int x = 0; x < r.width(); ++x) CHECK(b(x, y) == (r(x, y) > t ? 1 : 0));
    CHECK(count_foreground(threshold_binary(r, 255)) == 0);
  }
}

TEST_CASE("threshold is monotone in t") {
  std::mt19937 rng(3);
  const auto r = oracle::random_gray(20, 20, rng);
  for (int t = 0; t < 255; t += 5) CHECK(is_subset(threshold_binary(r, t + 5), threshold_binary(r, t)));
}

TEST_CASE("otsu on degenerate histograms") {
  CHECK(otsu_threshold(GrayImage(4, 4, std::uint8_t{90})) == 0);
  GrayImage half(4, 2);
  for (int x = 0; x < 4; ++x) half(x, 1) = 255;
  CHECK(oracle::brute_otsu(half) == 0);
  CHECK(otsu_threshold(half) == 0);
  for (int t = 0; t < 255; ++t) CHECK(between_class_variance(histogram(half), t) == doctest::Approx(0.25 * 255 * 255));
  CHECK(between_class_variance(histogram(half), 255) == 0.0);
}

TEST_CASE("otsu on dense two-Gaussian histograms") {
  // Counts dense enough that every level between the modes is populated.
  Histogram h;
  for (int v = 0; v < 256; ++v) {
    const double z0 = (v - 50) / 10.0, z1 = (v - 200) / 10.0;
    h.counts[v] = static_cast<std::uint64_t>(std::llround(1e15 * (std::exp(-z0 * z0 / 2) + std::exp(-z1 * z1 / 2))));
  }
  const int t = otsu_threshold(h);
  CHECK(t == oracle::brute_otsu(h));
  CHECK(t >= 120);
  CHECK(t <= 130);
}

TEST_CASE("otsu on a sampled two-Gaussian mixture") {
  // With finite samples the levels between the modes are empty, every t across that gap
  // scores the same, and the smallest one wins.
  std::mt19937 rng(4);
  std::normal_distribution<double> lo(50, 10), hi(200, 10);
  GrayImage img(128, 128);
  int i = 0, top_lo = 0, bottom_hi = 255;
  for (auto& v : img.pixels()) {
    const bool high = i++ % 2;
    v = static_cast<std::uint8_t>(std::clamp(std::lround(high ? hi(rng) : lo(rng)), 0L, 255L));
    if (high) bottom_hi = std::min<int>(bottom_hi, v);
    else top_lo = std::max<int>(top_lo, v);
  }
  REQUIRE(top_lo < bottom_hi);
  const int t = otsu_threshold(img);
  CHECK(t == oracle::brute_otsu(img));
  CHECK(t == top_lo);
  for (int u = top_lo; u < bottom_hi; ++u)
    CHECK(between_class_variance(histogram(img), u) == doctest::Approx(between_class_variance(histogram(img), t)));
}

TEST_CASE("otsu matches the exhaustive scan") {
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    const auto img = i % 3 ? oracle::two_gaussians(40, 30, rng) : oracle::random_gray(10, 10, rng);
    CHECK(otsu_threshold(img) == oracle::brute_otsu(img));
  }
}

TEST_CASE("otsu depends only on the histogram") {
  std::mt19937 rng(6);
  const auto img = oracle::two_gaussians(24, 16, rng);
  GrayImage transposed(16, 24);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 24; ++x) transposed(y, x) = img(x, y);
  std::vector<std::uint8_t> px(img.pixels().begin(), img.pixels().end());
  std::shuffle(px.begin(), px.end(), rng);
  const GrayImage shuffled(24, 16, px);
  CHECK(otsu_threshold(transposed) == otsu_threshold(img));
  CHECK(otsu_threshold(shuffled) == otsu_threshold(img));
}

TEST_CASE("binarize_otsu composes otsu and threshold") {
  CHECK(count_foreground(binarize_otsu(GrayImage(3, 3))) == 0);
  GrayImage bimodal(3, 1, std::vector<std::uint8_t>{0, 255, 255});
  CHECK(binarize_otsu(bimodal) == BinaryImage(3, 1, std::vector<std::uint8_t>{0, 1, 1}));
  std::mt19937 rng(7);
  const auto img = oracle::two_gaussians(30, 30, rng);
  CHECK(binarize_otsu(img) == threshold_binary(img, otsu_threshold(img)));
}

TEST_CASE("invert complements intensities") {
  const GrayImage img(3, 1, std::vector<std::uint8_t>{0, 100, 255});
  CHECK(invert(img) == GrayImage(3, 1, std::vector<std::uint8_t>{255, 155, 0}));
  CHECK(invert(invert(img)) == img);
}
