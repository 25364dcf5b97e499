#include "doctest.h"

#include <cmath>

#include "comb/rng.hpp"
#include "comb/synth.hpp"
#include "oracles.hpp"

using namespace comb;

namespace {

SynthParams clean(int cols, int rows, double jitter = 0.0) {
  SynthParams p;
  p.cols = cols;
  p.rows = rows;
  p.jitter = jitter;
  p.noise_sigma = 0;
  p.gradient_strength = 0;
  p.blur_sigma = 0;
  return p;
}

struct RefXoshiro {
  std::uint64_t s[4];
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t next() {
    const std::uint64_t r = rotl(s[1] * 5, 7) * 9, t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return r;
  }
};

}  // namespace

TEST_CASE("generator reference outputs") {
  SplitMix64 sm(0);
  CHECK(sm.next() == 0xE220A8397B1DCDAFULL);
  CHECK(sm.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(sm.next() == 0x06C45D188009454FULL);

  RefXoshiro ref{{1, 2, 3, 4}};
  CHECK(ref.next() == 11520);
  CHECK(ref.next() == 0);
  CHECK(ref.next() == 1509978240);
  CHECK(ref.next() == 1215971899390074240ULL);

  SplitMix64 seeder(42);
  RefXoshiro seeded{{seeder.next(), seeder.next(), seeder.next(), seeder.next()}};
  Xoshiro256 x(42);
  for (int i = 0; i < 100; ++i) CHECK(x.next() == seeded.next());

  Xoshiro256 u(7);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    const auto k = u.uniform_int(-3, 5);
    CHECK(k >= -3);
    CHECK(k <= 5);
  }
}

TEST_CASE("parameter validation") {
  SynthParams p;
  p.cols = 0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = {};
  p.jitter = 0.5;
  CHECK_THROWS_AS(generate(p), std::invalid_argument);
  p = {};
  p.cell_radius = 500;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  CHECK_NOTHROW(validate(SynthParams{}));
}

TEST_CASE("regular lattice geometry") {
  for (auto [cols, rows] : {std::pair{1, 1}, {2, 2}, {3, 1}, {1, 4}, {5, 4}, {12, 10}}) {
    const auto g = build_lattice(clean(cols, rows));
    CHECK(g.edges.size() == oracle::hex_edge_count(cols, rows));
    CHECK_NOTHROW(validate(g));
    for (const auto& [a, b] : g.edges) {
      CHECK(a < b);
      CHECK(distance(g.nodes[a], g.nodes[b]) == doctest::Approx(24.0));
    }
    for (const auto& n : g.nodes) {
      CHECK(n.x >= 0);
      CHECK(n.y >= 0);
      CHECK(n.x <= g.width - 1);
      CHECK(n.y <= g.height - 1);
    }
  }
  CHECK(build_lattice(clean(1, 1)).nodes.size() == 6);
}

TEST_CASE("degree law") {
  for (const double jitter : {0.0, 0.15, 0.4}) {
    const auto g = build_lattice(clean(6, 5, jitter));
    const auto deg = node_degrees(g);
    int three = 0;
    for (int d : deg) {
      CHECK(d >= 2);
      CHECK(d <= 3);
      three += d == 3;
    }
    CHECK(three > 0);
  }
  // the interior of a regular lattice: nodes well inside the outer ring have degree 3
  const auto g = build_lattice(clean(8, 8));
  const auto deg = node_degrees(g);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    if (n.x > 60 && n.x < g.width - 60 && n.y > 60 && n.y < g.height - 60) CHECK(deg[i] == 3);
  }
}

TEST_CASE("jitter moves nodes by at most the cap") {
  const auto a = build_lattice(clean(4, 4));
  const auto b = build_lattice(clean(4, 4, 0.3));
  REQUIRE(a.nodes.size() == b.nodes.size());
  double moved = 0;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    const double d = distance(a.nodes[i], b.nodes[i]);
    CHECK(d <= 0.3 * 24 + 1e-9);
    moved += d;
  }
  CHECK(moved > 0);
  CHECK(a.edges == b.edges);
}

TEST_CASE("rendered walls stay near the truth") {
  const SynthParams p = clean(4, 3, 0.2);
  const auto r = generate(p);
  int walls = 0;
  for (int y = 0; y < r.image.height(); ++y)
    for (int x = 0; x < r.image.width(); ++x) {
      if (r.image(x, y) != p.wall_intensity) {
        CHECK(r.image(x, y) == p.background_intensity);
        continue;
      }
      ++walls;
      double best = 1e9;
      for (const auto& [a, b] : r.truth.edges)
        best = std::min(best, segment_distance({double(x), double(y)}, r.truth.nodes[a], r.truth.nodes[b]));
      CHECK(best <= p.wall_thickness / 2 + 0.5);
    }
  CHECK(walls > 0);
}

TEST_CASE("generation is deterministic") {
  SynthParams p;
  p.cols = 3;
  p.rows = 3;
  p.seed = 9;
  const auto a = generate(p);
  const auto b = generate(p);
  CHECK(a.image == b.image);
  CHECK(a.truth.nodes == b.truth.nodes);
  CHECK(a.truth.edges == b.truth.edges);
  p.seed = 10;
  CHECK(generate(p).image != a.image);
}

TEST_CASE("degrade") {
  std::mt19937 rng(1);
  const auto img = oracle::random_gray(20, 10, rng);
  CHECK(degrade(img, 0, 0, 0, 5) == img);
  CHECK(degrade(img, 8, 20, 0.8, 5) == degrade(img, 8, 20, 0.8, 5));

  const auto noisy = degrade(GrayImage(256, 256, std::uint8_t{128}), 8, 0, 0, 3);
  double sum = 0, sq = 0;
  for (auto v : noisy.pixels()) {
    sum += v;
    sq += double(v) * v;
  }
  const double n = double(noisy.size());
  const double sd = std::sqrt(sq / n - (sum / n) * (sum / n));
  CHECK(sd >= 6.5);
  CHECK(sd <= 9.5);
  CHECK(sum / n == doctest::Approx(128).epsilon(0.01));

  const auto ramp = degrade(GrayImage(11, 1, std::uint8_t{100}), 0, 20, 0, 0);
  CHECK(ramp(0, 0) == 80);
  CHECK(ramp(5, 0) == 100);
  CHECK(ramp(10, 0) == 120);
}
