#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "comb/geometry.hpp"
#include "comb/raster.hpp"

namespace comb {

struct CellGraph {
  std::vector<Point> nodes;
  std::vector<std::pair<int, int>> edges;  // node indices, first < second
  int width = 0;
  int height = 0;
};

void validate(const CellGraph& graph);
std::vector<int> node_degrees(const CellGraph& graph);

/// Defaults describe one image of the canonical evaluation corpus.
struct SynthParams {
  int cols = 12;
  int rows = 10;
  double cell_radius = 24.0;
  double wall_thickness = 3.0;
  double jitter = 0.15;  // fraction of cell_radius
  double noise_sigma = 8.0;
  double gradient_strength = 20.0;
  double blur_sigma = 0.8;
  int wall_intensity = 200;
  int background_intensity = 50;
  std::uint64_t seed = 1;
};

void validate(const SynthParams& params);

struct SynthResult {
  GrayImage image;
  CellGraph truth;
};

/// Pointy-top hexagonal lattice with seeded node jitter, rendered and degraded.
SynthResult generate(const SynthParams& params);

/// Regular lattice geometry after jitter, before rasterization.
CellGraph build_lattice(const SynthParams& params);

/// Draws every edge as a stroke: pixel centres within thickness / 2 of the edge.
GrayImage render_walls(const CellGraph& graph, double thickness, int wall_intensity,
                       int background_intensity);

/// Illumination ramp (+-gradient_strength across x, clamped), Gaussian blur, then
/// additive Gaussian noise drawn in row-major order; rounded half-up at the end.
GrayImage degrade(const GrayImage& img, double noise_sigma, double gradient_strength,
                  double blur_sigma, std::uint64_t seed);

}  // namespace comb
