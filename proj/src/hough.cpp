#include "comb/hough.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace comb {

void validate(const HoughParams& p) {
  if (!(p.rho_res > 0.0) || !(p.theta_res > 0.0) || p.votes_min < 1 || !(p.min_len > 0.0) ||
      p.max_gap < 1 || p.peak_window < 1) {
    throw std::invalid_argument("hough parameters must all be strictly positive");
  }
  if (std::lround(std::numbers::pi / p.theta_res) < 4) {
    throw std::invalid_argument("theta_res must split [0, pi) into at least 4 bins");
  }
}

Accumulator::Accumulator(int n_rho, int n_theta, int rho_offset, double rho_res,
                         double theta_res)
    : n_rho_(n_rho),
      n_theta_(n_theta),
      rho_offset_(rho_offset),
      rho_res_(rho_res),
      theta_res_(theta_res),
      votes_(static_cast<std::size_t>(n_rho) * n_theta, 0) {}

std::uint64_t Accumulator::total_votes() const noexcept {
  std::uint64_t sum = 0;
  for (auto v : votes_) sum += v;
  return sum;
}

int Accumulator::rho_bin(double rho) const noexcept {
  return static_cast<int>(std::lround(rho / rho_res_)) + rho_offset_;
}

Accumulator accumulate(const BinaryImage& bin, const HoughParams& params) {
  validate(params);
  const int n_theta = static_cast<int>(std::lround(std::numbers::pi / params.theta_res));
  const double diag = std::hypot(double(bin.width() - 1), double(bin.height() - 1));
  const int offset = static_cast<int>(std::ceil(diag / params.rho_res));
  Accumulator acc(2 * offset + 1, n_theta, offset, params.rho_res, params.theta_res);

  std::vector<double> cos_t(n_theta), sin_t(n_theta);
  for (int t = 0; t < n_theta; ++t) {
    cos_t[t] = std::cos(acc.theta_of(t));
    sin_t[t] = std::sin(acc.theta_of(t));
  }
  for (int y = 0; y < bin.height(); ++y) {
    const auto row = bin.row(y);
    for (int x = 0; x < bin.width(); ++x) {
      if (!row[x]) continue;
      for (int t = 0; t < n_theta; ++t) {
        ++acc.votes(t, acc.rho_bin(x * cos_t[t] + y * sin_t[t]));
      }
    }
  }
  return acc;
}

std::vector<Peak> find_peak_bins(const Accumulator& acc, const HoughParams& params) {
  validate(params);
  const int half = params.peak_window / 2;
  const int n_theta = acc.n_theta();
  const int n_rho = acc.n_rho();
  const auto min_votes = static_cast<std::uint32_t>(params.votes_min);
  std::vector<Peak> peaks;
  for (int t = 0; t < n_theta; ++t) {
    for (int r = 0; r < n_rho; ++r) {
      const auto v = acc.votes(t, r);
      if (v < min_votes || v == 0) continue;
      bool is_peak = true;
      for (int dt = -half; dt <= half && is_peak; ++dt) {
        for (int dr = -half; dr <= half; ++dr) {
          if (dt == 0 && dr == 0) continue;
          int nt = t + dt;
          int nr = r + dr;
          // Crossing theta = 0 / pi flips the sign of rho.
          if (nt < 0 || nt >= n_theta) {
            nt = nt < 0 ? nt + n_theta : nt - n_theta;
            nr = 2 * acc.rho_offset() - nr;
          }
          if (nr < 0 || nr >= n_rho) continue;
          const auto nv = acc.votes(nt, nr);
          if (nv > v || (nv == v && std::tie(nt, nr) < std::tie(t, r))) {
            is_peak = false;
            break;
          }
        }
      }
      if (is_peak) peaks.push_back({t, r, v, {acc.rho_of(r), acc.theta_of(t)}});
    }
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.votes != b.votes) return a.votes > b.votes;
    return std::tie(a.theta_bin, a.rho_bin) < std::tie(b.theta_bin, b.rho_bin);
  });
  return peaks;
}

std::vector<PolarLine> find_peaks(const Accumulator& acc, const HoughParams& params) {
  std::vector<PolarLine> lines;
  for (const auto& p : find_peak_bins(acc, params)) lines.push_back(p.line);
  return lines;
}

namespace {

struct Walker {
  Walker(const BinaryImage& bin, const PolarLine& line, double tol)
      : bin(bin),
        line(line),
        c(std::cos(line.theta)),
        s(std::sin(line.theta)),
        tol(tol),
        along_x(std::fabs(s) >= std::fabs(c)),
        steps(along_x ? bin.width() : bin.height()),
        limit(along_x ? bin.height() : bin.width()),
        reach(static_cast<int>(std::ceil(tol / std::max(std::fabs(along_x ? s : c), 1e-12))) + 1) {}

  // The line's cross-axis coordinate at walk step i, rounded to a pixel.
  int centre(int i) const {
    const double other = along_x ? (line.rho - i * c) / s : (line.rho - i * s) / c;
    return static_cast<int>(std::lround(other));
  }

  // Calls f(x, y) on every in-image pixel within tol of the line at step i.
  template <typename F>
  void corridor(int i, F&& f) const {
    const int mid = centre(i);
    for (int j = std::max(0, mid - reach); j <= std::min(limit - 1, mid + reach); ++j) {
      const int x = along_x ? i : j;
      const int y = along_x ? j : i;
      if (std::fabs(x * c + y * s - line.rho) <= tol) {
        if (f(x, y)) return;
      }
    }
  }

  bool supported(int i) const {
    bool hit = false;
    corridor(i, [&](int x, int y) { return hit = bin(x, y) != 0; });
    return hit;
  }

  std::pair<int, int> position(int i) const {
    const int pos = std::clamp(centre(i), 0, limit - 1);
    return along_x ? std::pair{i, pos} : std::pair{pos, i};
  }

  const BinaryImage& bin;
  PolarLine line;
  double c, s, tol;
  bool along_x;
  int steps, limit, reach;
};

}  // namespace

std::vector<LineRun> walk_line(const BinaryImage& bin, const PolarLine& line,
                               const HoughParams& params) {
  validate(params);
  const Walker walk(bin, line, params.rho_res);
  std::vector<LineRun> out;
  auto emit = [&](int first, int last) {
    const auto [xa, ya] = walk.position(first);
    const auto [xb, yb] = walk.position(last);
    const Segment seg = canonical({xa, ya, xb, yb});
    if (seg.length() >= params.min_len) out.push_back({seg, first, last});
  };

  int first = -1, last = -1, gap = 0;
  for (int i = 0; i < walk.steps; ++i) {
    if (walk.supported(i)) {
      if (first < 0) first = i;
      last = i;
      gap = 0;
    } else if (first >= 0 && ++gap > params.max_gap) {
      emit(first, last);
      first = -1;
    }
  }
  if (first >= 0) emit(first, last);
  return out;
}

void clear_run_support(BinaryImage& bin, const PolarLine& line, const LineRun& run,
                       const HoughParams& params) {
  const Walker walk(bin, line, params.rho_res);
  for (int i = run.first_step; i <= run.last_step; ++i) {
    walk.corridor(i, [&](int x, int y) {
      bin(x, y) = 0;
      return false;
    });
  }
}

std::vector<Segment> extract_segments(const BinaryImage& bin, const PolarLine& line,
                                      const HoughParams& params) {
  std::vector<Segment> out;
  for (const auto& run : walk_line(bin, line, params)) out.push_back(run.segment);
  return out;
}

namespace {

// Total-least-squares line through the foreground pixels within `tol` of `line`
// over the run's steps. Returns false when too few pixels are found.
bool refit_run(const BinaryImage& bin, const PolarLine& line, const LineRun& run, double tol,
               PolarLine& out) {
  const Walker walk(bin, line, tol);
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  int n = 0;
  for (int i = run.first_step; i <= run.last_step; ++i) {
    walk.corridor(i, [&](int x, int y) {
      if (bin(x, y)) {
        sx += x, sy += y, sxx += double(x) * x, syy += double(y) * y, sxy += double(x) * y;
        ++n;
      }
      return false;
    });
  }
  if (n < 3) return false;
  const double mx = sx / n, my = sy / n;
  const double cxx = sxx / n - mx * mx, cyy = syy / n - my * my, cxy = sxy / n - mx * my;
  // Normal direction = eigenvector of the smaller eigenvalue of the scatter matrix.
  double theta = 0.5 * std::atan2(2 * cxy, cxx - cyy) + std::numbers::pi / 2;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  if (theta < 0) theta += std::numbers::pi;
  out = {mx * std::cos(theta) + my * std::sin(theta), theta};
  return true;
}

// Refits a run to the pixels around it (up to three rounds) so that a peak line
// tilted against a short wall still yields the wall's own segment.
std::pair<PolarLine, LineRun> refine_run(const BinaryImage& bin, PolarLine line, LineRun run,
                                         const HoughParams& params) {
  for (int iter = 0; iter < 3; ++iter) {
    PolarLine next;
    if (!refit_run(bin, line, run, params.rho_res + 1.0, next)) break;
    // The run's extent expressed in the refitted walk's step coordinate.
    const Walker before(bin, line, params.rho_res);
    const Walker after(bin, next, params.rho_res);
    const auto [ax, ay] = before.position(run.first_step);
    const auto [bx, by] = before.position(run.last_step);
    const int lo = after.along_x ? std::min(ax, bx) : std::min(ay, by);
    const int hi = after.along_x ? std::max(ax, bx) : std::max(ay, by);

    std::optional<LineRun> pick;
    int overlap = 0;
    for (const auto& r : walk_line(bin, next, params)) {
      const int o = std::min(hi, r.last_step) - std::max(lo, r.first_step);
      if (o > overlap) overlap = o, pick = r;
    }
    if (!pick) break;
    line = next;
    run = *pick;
  }
  return {line, run};
}

}  // namespace

std::vector<Segment> hough_segments(const BinaryImage& bin, const HoughParams& params) {
  const auto acc = accumulate(bin, params);
  std::vector<Segment> out;
  std::set<Segment> seen;
  auto keep = [&](const Segment& seg) {
    if (seen.insert(seg).second) out.push_back(seg);
  };
  if (!params.claim_support) {
    for (const auto& line : find_peaks(acc, params)) {
      for (const auto& seg : extract_segments(bin, line, params)) keep(seg);
    }
    return out;
  }

  BinaryImage remaining = bin;
  for (const auto& line : find_peaks(acc, params)) {
    for (const auto& run : walk_line(remaining, line, params)) {
      const auto [fitted, refined] = refine_run(remaining, line, run, params);
      keep(refined.segment);
      clear_run_support(remaining, fitted, refined, params);
      clear_run_support(remaining, line, run, params);
    }
  }
  return out;
}

}  // namespace comb
