#pragma once

#include <string>
#include <utility>
#include <vector>

#include "comb/geometry.hpp"
#include "comb/synth.hpp"

namespace comb {

struct MatchOptions {
  double dist_tol = 3.0;                               // pixels
  double angle_tol = 5.0 * std::numbers::pi / 180.0;  // radians
  double coverage_min = 0.6;
};

struct MatchResult {
  double recall = 1.0;
  double precision = 1.0;
  std::vector<std::pair<int, int>> matched;  // (gt edge, detected segment), sorted
  std::vector<int> unmatched_gt;
  std::vector<int> unmatched_detected;
};

/// True when the detected segment explains ground-truth edge a-b: orientations
/// agree within angle_tol, the overlapping part of the edge stays within dist_tol of
/// the segment's line, and the segment's projection covers coverage_min of the edge.
bool edge_matches(Point a, Point b, const Segment& seg, const MatchOptions& opt);

MatchResult match_segments(const std::vector<Segment>& detected, const CellGraph& truth,
                           const MatchOptions& opt = {});

struct CorpusRow {
  std::string name;
  double recall;
  double precision;
};

struct CorpusSummary {
  double mean_recall, min_recall, max_recall;
  double mean_precision, min_precision, max_precision;
  std::vector<CorpusRow> rows;
};

/// Names default to the result index when `names` is empty.
CorpusSummary corpus_report(const std::vector<MatchResult>& results,
                            const std::vector<std::string>& names = {});
std::string format_summary(const CorpusSummary& summary);

}  // namespace comb
