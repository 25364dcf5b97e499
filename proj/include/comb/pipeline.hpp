#pragma once

#include <string>
#include <vector>

#include "comb/canny.hpp"
#include "comb/geometry.hpp"
#include "comb/hough.hpp"
#include "comb/morphology.hpp"
#include "comb/raster.hpp"

namespace comb {

struct SeSpec {
  SeShape shape = SeShape::Square;
  int size = 3;
  StructuringElement build() const { return make_se(shape, size); }
  friend bool operator==(const SeSpec&, const SeSpec&) = default;
};

/// Hough settings the detector runs with; see README for why votes_min is low.
HoughParams pipeline_hough_defaults();

struct PipelineConfig {
  int threshold = 128;
  bool invert_input = false;
  SeSpec dilate_se{SeShape::Square, 5};
  SeSpec erode_se{SeShape::Square, 3};
  SeSpec skeleton_se{SeShape::Cross, 3};
  int erosion_steps = 2;
  HoughParams hough = pipeline_hough_defaults();
  CannyParams canny;
  double merge_dist = 3.0;
  double merge_angle = 3.0 * std::numbers::pi / 180.0;
  double node_radius = 5.0;
};

void validate(const PipelineConfig& cfg);

struct StageCount {
  std::string label;
  std::size_t segments;
};

struct DetectionReport {
  std::vector<Segment> segments;
  std::vector<Point> nodes;
  std::vector<StageCount> per_stage;
  std::vector<std::vector<Segment>> stage_segments;  // parallel to per_stage
  PipelineConfig config;
};

/// Static threshold, skeleton + Hough; then dilate once and, per erosion step,
/// erode, skeleton + Hough; union of all stages merged; nodes from intersections.
DetectionReport detect_edges(const GrayImage& img, const PipelineConfig& cfg = {});

/// Mask the detector starts from: the threshold of the (optionally inverted) input.
BinaryImage foreground_mask(const GrayImage& img, const PipelineConfig& cfg);

/// Two segments merge when their orientations differ by <= angle_tol, each one's
/// endpoints lie within dist_tol of the other's line, and their projections on the
/// longer one's direction overlap or leave a gap <= dist_tol. The merged segment is
/// the longer one's line spanning both projections. Rounds repeat over the sorted
/// list, each surviving segment absorbing later mergeable ones, until a round
/// changes nothing. Output is sorted and duplicate-free.
std::vector<Segment> merge_segments(const std::vector<std::vector<Segment>>& sets,
                                    double dist_tol, double angle_tol);

bool segments_mergeable(const Segment& a, const Segment& b, double dist_tol, double angle_tol);
Segment merge_pair(const Segment& a, const Segment& b);

/// Intersections of segment lines crossing at >= 20 degrees that lie within radius of
/// both segments, clustered by single linkage at radius; centroids sorted by (y, x).
std::vector<Point> extract_nodes(const std::vector<Segment>& segments, double radius);

struct VariantResult {
  std::string name;
  std::size_t segments;
  BinaryImage mask;  // what the Hough stage saw
};

/// Every preprocessing variant of the method comparison, each followed by Hough.
std::vector<VariantResult> compare_methods(const GrayImage& img, const PipelineConfig& cfg = {});

}  // namespace comb
