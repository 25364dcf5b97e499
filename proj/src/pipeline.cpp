#include "comb/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "comb/binarize.hpp"

namespace comb {

HoughParams pipeline_hough_defaults() {
  HoughParams p;
  p.votes_min = 12;
  p.claim_support = true;
  return p;
}

void validate(const PipelineConfig& cfg) {
  if (cfg.threshold < 0 || cfg.threshold > 255) {
    throw std::invalid_argument("threshold must lie in [0, 255]");
  }
  if (cfg.erosion_steps < 0) throw std::invalid_argument("erosion_steps must be >= 0");
  if (!(cfg.merge_dist > 0.0) || !(cfg.merge_angle > 0.0) || !(cfg.node_radius > 0.0)) {
    throw std::invalid_argument("merge_dist, merge_angle and node_radius must be positive");
  }
  (void)cfg.dilate_se.build();
  (void)cfg.erode_se.build();
  (void)cfg.skeleton_se.build();
  validate(cfg.hough);
  if (!(cfg.canny.sigma > 0.0) || !(cfg.canny.low > 0.0) || cfg.canny.low > cfg.canny.high) {
    throw std::invalid_argument("canny needs sigma > 0 and 0 < low <= high");
  }
}

BinaryImage foreground_mask(const GrayImage& img, const PipelineConfig& cfg) {
  const auto t = static_cast<std::uint8_t>(cfg.threshold);
  return cfg.invert_input ? threshold_binary(invert(img), t) : threshold_binary(img, t);
}

DetectionReport detect_edges(const GrayImage& img, const PipelineConfig& cfg) {
  validate(cfg);
  const auto skeleton_se = cfg.skeleton_se.build();
  const auto erode_se = cfg.erode_se.build();

  DetectionReport report;
  report.config = cfg;
  const BinaryImage mask = foreground_mask(img, cfg);
  auto run_stage = [&](const std::string& label, const BinaryImage& stage_mask) {
    auto segs = hough_segments(skeletonize(stage_mask, skeleton_se), cfg.hough);
    report.per_stage.push_back({label, segs.size()});
    report.stage_segments.push_back(std::move(segs));
  };

  run_stage("skeleton", mask);
  BinaryImage work = dilate(mask, cfg.dilate_se.build());
  for (int k = 1; k <= cfg.erosion_steps; ++k) {
    work = erode(work, erode_se);
    run_stage("erosion_" + std::to_string(k), work);
  }

  report.segments = merge_segments(report.stage_segments, cfg.merge_dist, cfg.merge_angle);
  for (auto& s : report.segments) {
    s.x1 = std::clamp(s.x1, 0, img.width() - 1);
    s.x2 = std::clamp(s.x2, 0, img.width() - 1);
    s.y1 = std::clamp(s.y1, 0, img.height() - 1);
    s.y2 = std::clamp(s.y2, 0, img.height() - 1);
    s = canonical(s);
  }
  std::sort(report.segments.begin(), report.segments.end());
  report.segments.erase(std::unique(report.segments.begin(), report.segments.end()),
                        report.segments.end());

  report.nodes = extract_nodes(report.segments, cfg.node_radius);
  for (auto& p : report.nodes) {
    p.x = std::clamp(p.x, 0.0, double(img.width() - 1));
    p.y = std::clamp(p.y, 0.0, double(img.height() - 1));
  }
  return report;
}

namespace {

// Reference segment of a pair: the longer one, ties going to the smaller in order.
const Segment& reference_of(const Segment& a, const Segment& b) {
  const double la = a.length();
  const double lb = b.length();
  if (la != lb) return la > lb ? a : b;
  return a < b ? a : b;
}

Point unit_direction(const Segment& s) {
  const double len = s.length();
  if (len == 0.0) return {1.0, 0.0};
  return {(s.x2 - s.x1) / len, (s.y2 - s.y1) / len};
}

void sort_unique(std::vector<Segment>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

class SegmentGrid {
 public:
  SegmentGrid(const std::vector<Segment>& segs, double pad) : pad_(pad) {
    for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
      visit(segs[i], [&](long key) { cells_[key].push_back(i); });
    }
  }

  /// Indices > after whose cells overlap the padded box of s, ascending.
  std::vector<int> candidates(const Segment& s, int after) const {
    std::vector<int> out;
    visit(s, [&](long key) {
      auto it = cells_.find(key);
      if (it == cells_.end()) return;
      const auto& ids = it->second;
      out.insert(out.end(), std::upper_bound(ids.begin(), ids.end(), after), ids.end());
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  static constexpr int kCell = 16;

  template <typename F>
  void visit(const Segment& s, F&& f) const {
    const auto lo = [&](int a, int b) { return cell(std::min(a, b) - pad_); };
    const auto hi = [&](int a, int b) { return cell(std::max(a, b) + pad_); };
    for (long cy = lo(s.y1, s.y2); cy <= hi(s.y1, s.y2); ++cy) {
      for (long cx = lo(s.x1, s.x2); cx <= hi(s.x1, s.x2); ++cx) f(cy * 1'000'003L + cx);
    }
  }
  static long cell(double v) { return static_cast<long>(std::floor(v / kCell)); }

  double pad_;
  std::unordered_map<long, std::vector<int>> cells_;
};

}  // namespace

bool segments_mergeable(const Segment& a, const Segment& b, double dist_tol, double angle_tol) {
  if (angle_between(a.angle(), b.angle()) > angle_tol) return false;
  if (std::max({line_distance(b.p1(), a.p1(), a.p2()), line_distance(b.p2(), a.p1(), a.p2()),
                line_distance(a.p1(), b.p1(), b.p2()), line_distance(a.p2(), b.p1(), b.p2())}) >
      dist_tol) {
    return false;
  }
  const Segment& ref = reference_of(a, b);
  const Segment& other = &ref == &a ? b : a;
  const Point u = unit_direction(ref);
  const Point origin = ref.p1();
  const double r0 = 0.0;
  const double r1 = dot(ref.p2() - origin, u);
  const double o1 = dot(other.p1() - origin, u);
  const double o2 = dot(other.p2() - origin, u);
  const double gap = std::max(std::min(o1, o2) - std::max(r0, r1), std::min(r0, r1) - std::max(o1, o2));
  return gap <= dist_tol;
}

Segment merge_pair(const Segment& a, const Segment& b) {
  const Segment& ref = reference_of(a, b);
  const Point u = unit_direction(ref);
  const Point origin = ref.p1();
  double tmin = 0.0, tmax = 0.0;
  for (const Point p : {a.p1(), a.p2(), b.p1(), b.p2()}) {
    const double t = dot(p - origin, u);
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
  }
  const Point p = origin + tmin * u;
  const Point q = origin + tmax * u;
  return canonical({static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y)),
                    static_cast<int>(std::lround(q.x)), static_cast<int>(std::lround(q.y))});
}

std::vector<Segment> merge_segments(const std::vector<std::vector<Segment>>& sets,
                                    double dist_tol, double angle_tol) {
  if (!(dist_tol > 0.0) || !(angle_tol > 0.0)) {
    throw std::invalid_argument("merge tolerances must be positive");
  }
  std::vector<Segment> list;
  for (const auto& set : sets) {
    for (const auto& s : set) list.push_back(canonical(s));
  }
  sort_unique(list);

  // Mergeable pairs always have boxes within about sqrt(2) * dist_tol of each other.
  const double pad = 2.0 * dist_tol + 1.0;
  for (;;) {
    const int n = static_cast<int>(list.size());
    const SegmentGrid grid(list, pad);
    std::vector<char> alive(n, 1);
    std::vector<Segment> next;
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      Segment cur = list[i];
      int after = i;
      bool grew = true;
      while (grew) {
        grew = false;
        for (const int j : grid.candidates(cur, after)) {
          if (!alive[j] || !segments_mergeable(cur, list[j], dist_tol, angle_tol)) continue;
          cur = merge_pair(cur, list[j]);
          alive[j] = 0;
          changed = grew = true;
          after = j;
          break;  // the box grew; query again past j
        }
      }
      next.push_back(cur);
    }
    sort_unique(next);
    list = std::move(next);
    if (!changed) break;
  }
  return list;
}

std::vector<Point> extract_nodes(const std::vector<Segment>& segments, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("node radius must be positive");
  constexpr double kMinCrossing = 20.0 * std::numbers::pi / 180.0;
  std::vector<Point> hits;
  const int n = static_cast<int>(segments.size());
  for (int i = 0; i < n; ++i) {
    const Segment& a = segments[i];
    for (int j = i + 1; j < n; ++j) {
      const Segment& b = segments[j];
      if (angle_between(a.angle(), b.angle()) < kMinCrossing) continue;
      // Cheap reject on padded boxes.
      if (std::max(a.x1, a.x2) + radius < std::min(b.x1, b.x2) ||
          std::max(b.x1, b.x2) + radius < std::min(a.x1, a.x2) ||
          std::max(a.y1, a.y2) + radius < std::min(b.y1, b.y2) ||
          std::max(b.y1, b.y2) + radius < std::min(a.y1, a.y2)) {
        continue;
      }
      const Point da = a.p2() - a.p1();
      const Point db = b.p2() - b.p1();
      const double cross = da.x * db.y - da.y * db.x;
      if (cross == 0.0) continue;
      const Point w = b.p1() - a.p1();
      const double t = (w.x * db.y - w.y * db.x) / cross;
      const Point p = a.p1() + t * da;
      if (segment_distance(p, a.p1(), a.p2()) <= radius &&
          segment_distance(p, b.p1(), b.p2()) <= radius) {
        hits.push_back(p);
      }
    }
  }

  // Single-linkage clustering with union-find.
  const int m = static_cast<int>(hits.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return hits[a].x < hits[b].x; });
  for (int oi = 0; oi < m; ++oi) {
    const int a = order[oi];
    for (int oj = oi + 1; oj < m && hits[order[oj]].x - hits[a].x <= radius; ++oj) {
      const int b = order[oj];
      if (distance(hits[a], hits[b]) <= radius) {
        const int ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::unordered_map<int, std::pair<Point, int>> sums;
  for (int i = 0; i < m; ++i) {
    auto& [sum, count] = sums[find(i)];
    sum = sum + hits[i];
    ++count;
  }
  std::vector<Point> nodes;
  nodes.reserve(sums.size());
  for (const auto& [root, acc] : sums) {
    nodes.push_back({acc.first.x / acc.second, acc.first.y / acc.second});
  }
  std::sort(nodes.begin(), nodes.end(), [](const Point& a, const Point& b) {
    return std::tie(a.y, a.x) < std::tie(b.y, b.x);
  });
  return nodes;
}

std::vector<VariantResult> compare_methods(const GrayImage& input, const PipelineConfig& cfg) {
  validate(cfg);
  const GrayImage img = cfg.invert_input ? invert(input) : input;
  const auto t = static_cast<std::uint8_t>(cfg.threshold);
  const auto skeleton_se = cfg.skeleton_se.build();
  const auto dilate_se = cfg.dilate_se.build();
  const auto erode_se = cfg.erode_se.build();

  std::vector<VariantResult> out;
  auto add = [&](std::string name, BinaryImage mask) {
    const auto n = hough_segments(mask, cfg.hough).size();
    out.push_back({std::move(name), n, std::move(mask)});
  };

  const BinaryImage thr = threshold_binary(img, t);
  const BinaryImage otsu = binarize_otsu(img);

  add("canny_raw", canny_unsmoothed(img, cfg.canny.low, cfg.canny.high));
  add("threshold", thr);
  add("otsu", otsu);
  add("canny", canny(img, cfg.canny));
  BinaryImage grown = dilate(thr, dilate_se);
  add("threshold_dilate1", grown);
  add("threshold_dilate2", dilate(grown, dilate_se));
  BinaryImage shrunk = otsu;
  for (int k = 1; k <= 3; ++k) {
    shrunk = erode(shrunk, erode_se);
    add("otsu_erode" + std::to_string(k), shrunk);
  }
  add("skeleton_raw", skeletonize(threshold_binary(img, 0), skeleton_se));
  add("skeleton_threshold", skeletonize(thr, skeleton_se));
  BinaryImage work = grown;
  for (int k = 1; k <= cfg.erosion_steps; ++k) {
    work = erode(work, erode_se);
    add("skeleton_erosion" + std::to_string(k), skeletonize(work, skeleton_se));
  }
  return out;
}

}  // namespace comb
