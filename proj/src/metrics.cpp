#include "comb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace comb {

bool edge_matches(Point a, Point b, const Segment& seg, const MatchOptions& opt) {
  const Point d = b - a;
  const double len = std::hypot(d.x, d.y);
  if (len == 0.0) return false;
  const double edge_angle = std::fmod(std::atan2(d.y, d.x) + std::numbers::pi, std::numbers::pi);
  if (angle_between(edge_angle, seg.angle()) > opt.angle_tol) return false;

  const Point u = (1.0 / len) * d;
  const double t1 = dot(seg.p1() - a, u);
  const double t2 = dot(seg.p2() - a, u);
  const double lo = std::max(0.0, std::min(t1, t2));
  const double hi = std::min(len, std::max(t1, t2));
  if (hi <= lo || (hi - lo) < opt.coverage_min * len) return false;

  const Point s1 = seg.p1();
  const Point s2 = seg.p2();
  const int samples = std::max(1, static_cast<int>(std::ceil(hi - lo)));
  for (int i = 0; i <= samples; ++i) {
    const Point p = a + (lo + (hi - lo) * i / samples) * u;
    if (line_distance(p, s1, s2) > opt.dist_tol) return false;
  }
  return true;
}

MatchResult match_segments(const std::vector<Segment>& detected, const CellGraph& truth,
                           const MatchOptions& opt) {
  if (!(opt.dist_tol > 0.0) || !(opt.angle_tol > 0.0) || !(opt.coverage_min > 0.0) ||
      opt.coverage_min > 1.0) {
    throw std::invalid_argument("match tolerances must be positive and coverage in (0, 1]");
  }
  MatchResult r;
  const int n_gt = static_cast<int>(truth.edges.size());
  const int n_det = static_cast<int>(detected.size());
  std::vector<char> gt_hit(n_gt, 0), det_hit(n_det, 0);
  for (int g = 0; g < n_gt; ++g) {
    const Point a = truth.nodes[truth.edges[g].first];
    const Point b = truth.nodes[truth.edges[g].second];
    const double pad = opt.dist_tol + 1.0;
    for (int s = 0; s < n_det; ++s) {
      const Segment& seg = detected[s];
      // Cheap reject: the segment must reach within tolerance of the edge's box.
      if (std::max(seg.x1, seg.x2) < std::min(a.x, b.x) - pad ||
          std::min(seg.x1, seg.x2) > std::max(a.x, b.x) + pad ||
          std::max(seg.y1, seg.y2) < std::min(a.y, b.y) - pad ||
          std::min(seg.y1, seg.y2) > std::max(a.y, b.y) + pad) {
        continue;
      }
      if (edge_matches(a, b, seg, opt)) {
        r.matched.emplace_back(g, s);
        gt_hit[g] = det_hit[s] = 1;
      }
    }
  }
  for (int g = 0; g < n_gt; ++g) {
    if (!gt_hit[g]) r.unmatched_gt.push_back(g);
  }
  for (int s = 0; s < n_det; ++s) {
    if (!det_hit[s]) r.unmatched_detected.push_back(s);
  }
  if (n_gt > 0) r.recall = double(n_gt - r.unmatched_gt.size()) / n_gt;
  if (n_det > 0) r.precision = double(n_det - r.unmatched_detected.size()) / n_det;
  return r;
}

CorpusSummary corpus_report(const std::vector<MatchResult>& results,
                            const std::vector<std::string>& names) {
  if (results.empty()) throw std::invalid_argument("corpus_report needs at least one result");
  if (!names.empty() && names.size() != results.size()) {
    throw std::invalid_argument("corpus_report: one name per result required");
  }
  CorpusSummary s{0, 1, 0, 0, 1, 0, {}};
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    s.rows.push_back({names.empty() ? std::to_string(i) : names[i], r.recall, r.precision});
    s.mean_recall += r.recall;
    s.mean_precision += r.precision;
    s.min_recall = std::min(s.min_recall, r.recall);
    s.max_recall = std::max(s.max_recall, r.recall);
    s.min_precision = std::min(s.min_precision, r.precision);
    s.max_precision = std::max(s.max_precision, r.precision);
  }
  s.mean_recall /= double(results.size());
  s.mean_precision /= double(results.size());
  return s;
}

std::string format_summary(const CorpusSummary& s) {
  std::string out = "image,recall,precision\n";
  char buf[256];
  for (const auto& row : s.rows) {
    std::snprintf(buf, sizeof buf, "%s,%.4f,%.4f\n", row.name.c_str(), row.recall, row.precision);
    out += buf;
  }
  std::snprintf(buf, sizeof buf,
                "recall mean=%.4f min=%.4f max=%.4f\nprecision mean=%.4f min=%.4f max=%.4f\n",
                s.mean_recall, s.min_recall, s.max_recall, s.mean_precision, s.min_precision,
                s.max_precision);
  out += buf;
  return out;
}

}  // namespace comb
