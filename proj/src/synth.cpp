#include "comb/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "comb/canny.hpp"
#include "comb/rng.hpp"

namespace comb {

namespace {

constexpr std::uint64_t kNoiseStream = 0x6A09E667F3BCC909ULL;
constexpr int kMaxSide = 4096;

// Vertex offsets of a pointy-top hexagon in half-units (half cell width, half radius),
// clockwise from the top vertex in y-down coordinates.
constexpr int kVertexDx[6] = {0, 1, 1, 0, -1, -1};
constexpr int kVertexDy[6] = {-2, -1, 1, 2, 1, -1};

double margin_of(const SynthParams& p) { return std::ceil(0.5 * p.cell_radius + p.wall_thickness); }

}  // namespace

void validate(const CellGraph& graph) {
  const int n = static_cast<int>(graph.nodes.size());
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : graph.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("edge index out of range");
    if (a == b) throw std::invalid_argument("self-loop edge");
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
      throw std::invalid_argument("duplicate edge");
    }
  }
}

std::vector<int> node_degrees(const CellGraph& graph) {
  std::vector<int> deg(graph.nodes.size(), 0);
  for (const auto& [a, b] : graph.edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

void validate(const SynthParams& p) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("synth: " + msg); };
  if (p.cols < 1 || p.rows < 1) fail("cols and rows must be >= 1");
  if (!(p.cell_radius >= 4.0)) fail("cell_radius must be >= 4");
  if (!(p.wall_thickness >= 1.0)) fail("wall_thickness must be >= 1");
  if (!(p.jitter >= 0.0 && p.jitter <= 0.4)) fail("jitter must lie in [0, 0.4]");
  if (!(p.noise_sigma >= 0.0)) fail("noise_sigma must be >= 0");
  if (!(p.gradient_strength >= 0.0)) fail("gradient_strength must be >= 0");
  if (!(p.blur_sigma >= 0.0)) fail("blur_sigma must be >= 0");
  if (p.wall_intensity < 0 || p.wall_intensity > 255 || p.background_intensity < 0 ||
      p.background_intensity > 255) {
    fail("intensities must lie in [0, 255]");
  }
  if (p.wall_intensity == p.background_intensity) fail("wall and background intensity must differ");
  const double half_w = std::sqrt(3.0) * p.cell_radius / 2.0;
  const double m = margin_of(p);
  const double width = 2 * m + half_w * (2 * p.cols + (p.rows > 1 ? 1 : 0)) + 1;
  const double height = 2 * m + p.cell_radius * (2 + 1.5 * (p.rows - 1)) + 1;
  if (width > kMaxSide || height > kMaxSide) {
    fail("lattice needs " + std::to_string(int(std::ceil(width))) + "x" +
         std::to_string(int(std::ceil(height))) + " pixels, limit is " + std::to_string(kMaxSide));
  }
}

CellGraph build_lattice(const SynthParams& p) {
  validate(p);
  const double half_w = std::sqrt(3.0) * p.cell_radius / 2.0;
  const double half_r = p.cell_radius / 2.0;
  const double m = margin_of(p);

  CellGraph g;
  g.width = static_cast<int>(std::ceil(2 * m + half_w * (2 * p.cols + (p.rows > 1 ? 1 : 0)))) + 1;
  g.height = static_cast<int>(std::ceil(2 * m + p.cell_radius * (2 + 1.5 * (p.rows - 1)))) + 1;

  std::map<std::pair<int, int>, int> index_of;
  std::set<std::pair<int, int>> edge_seen;
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      int ids[6];
      for (int k = 0; k < 6; ++k) {
        const std::pair<int, int> key{1 + 2 * c + (r & 1) + kVertexDx[k], 2 + 3 * r + kVertexDy[k]};
        auto [it, inserted] = index_of.emplace(key, static_cast<int>(g.nodes.size()));
        if (inserted) g.nodes.push_back({m + half_w * key.first, m + half_r * key.second});
        ids[k] = it->second;
      }
      for (int k = 0; k < 6; ++k) {
        const int a = std::min(ids[k], ids[(k + 1) % 6]);
        const int b = std::max(ids[k], ids[(k + 1) % 6]);
        if (edge_seen.insert({a, b}).second) g.edges.emplace_back(a, b);
      }
    }
  }

  if (p.jitter > 0.0) {
    Xoshiro256 rng(p.seed);
    const double max_shift = p.jitter * p.cell_radius;
    for (auto& node : g.nodes) {
      const double radius = max_shift * std::sqrt(rng.uniform());
      const double phi = 2.0 * std::numbers::pi * rng.uniform();
      node.x += radius * std::cos(phi);
      node.y += radius * std::sin(phi);
    }
  }
  return g;
}

GrayImage render_walls(const CellGraph& graph, double thickness, int wall_intensity,
                       int background_intensity) {
  GrayImage img(graph.width, graph.height, static_cast<std::uint8_t>(background_intensity));
  const double half = thickness / 2.0;
  for (const auto& [ia, ib] : graph.edges) {
    const Point a = graph.nodes[ia];
    const Point b = graph.nodes[ib];
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - half)));
    const int x1 = std::min(graph.width - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + half)));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - half)));
    const int y1 = std::min(graph.height - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + half)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (segment_distance({double(x), double(y)}, a, b) <= half) {
          img(x, y) = static_cast<std::uint8_t>(wall_intensity);
        }
      }
    }
  }
  return img;
}

GrayImage degrade(const GrayImage& img, double noise_sigma, double gradient_strength,
                  double blur_sigma, std::uint64_t seed) {
  const int w = img.width();
  const int h = img.height();
  std::vector<double> v(img.pixels().begin(), img.pixels().end());

  if (gradient_strength > 0.0 && w > 1) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        auto& px = v[static_cast<std::size_t>(y) * w + x];
        px = std::clamp(px + gradient_strength * (2.0 * x / (w - 1) - 1.0), 0.0, 255.0);
      }
    }
  }
  if (blur_sigma > 0.0) v = gaussian_blur(v, w, h, blur_sigma);
  if (noise_sigma > 0.0) {
    Xoshiro256 rng(seed);
    for (std::size_t i = 0; i < v.size(); i += 2) {
      const auto [z0, z1] = rng.normal_pair();
      v[i] = std::clamp(v[i] + noise_sigma * z0, 0.0, 255.0);
      if (i + 1 < v.size()) v[i + 1] = std::clamp(v[i + 1] + noise_sigma * z1, 0.0, 255.0);
    }
  }

  GrayImage out(w, h);
  auto dst = out.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<std::uint8_t>(std::clamp(std::floor(v[i] + 0.5), 0.0, 255.0));
  }
  return out;
}

SynthResult generate(const SynthParams& params) {
  CellGraph truth = build_lattice(params);
  GrayImage clean = render_walls(truth, params.wall_thickness, params.wall_intensity,
                                 params.background_intensity);
  GrayImage image = degrade(clean, params.noise_sigma, params.gradient_strength,
                            params.blur_sigma, params.seed ^ kNoiseStream);
  return {std::move(image), std::move(truth)};
}

}  // namespace comb
