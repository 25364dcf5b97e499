#pragma once

#include <cstdint>
#include <vector>

#include "comb/geometry.hpp"
#include "comb/raster.hpp"

namespace comb {

/// Line x cos(theta) + y sin(theta) = rho, theta in [0, pi).
struct PolarLine {
  double rho = 0.0;
  double theta = 0.0;
  friend bool operator==(const PolarLine&, const PolarLine&) = default;
};

struct HoughParams {
  double rho_res = 1.0;                           // pixels per rho bin
  double theta_res = std::numbers::pi / 180.0;    // radians per theta bin
  int votes_min = 50;
  double min_len = 10.0;
  int max_gap = 3;
  int peak_window = 5;
  /// When set, peaks are walked strongest first and every pixel supporting an emitted
  /// segment is withdrawn before later peaks are walked.
  bool claim_support = false;
};

void validate(const HoughParams& params);

class Accumulator {
 public:
  Accumulator(int n_rho, int n_theta, int rho_offset, double rho_res, double theta_res);

  int n_rho() const noexcept { return n_rho_; }
  int n_theta() const noexcept { return n_theta_; }
  /// Bin index representing rho = 0; bin 0 sits at -rho_offset * rho_res.
  int rho_offset() const noexcept { return rho_offset_; }
  double rho_res() const noexcept { return rho_res_; }
  double theta_res() const noexcept { return theta_res_; }

  std::uint32_t votes(int theta_bin, int rho_bin) const {
    return votes_[static_cast<std::size_t>(theta_bin) * n_rho_ + rho_bin];
  }
  std::uint32_t& votes(int theta_bin, int rho_bin) {
    return votes_[static_cast<std::size_t>(theta_bin) * n_rho_ + rho_bin];
  }
  std::uint64_t total_votes() const noexcept;

  double theta_of(int theta_bin) const noexcept { return theta_bin * theta_res_; }
  double rho_of(int rho_bin) const noexcept { return (rho_bin - rho_offset_) * rho_res_; }
  /// Nearest bin for rho, halves rounded away from zero.
  int rho_bin(double rho) const noexcept;

 private:
  int n_rho_;
  int n_theta_;
  int rho_offset_;
  double rho_res_;
  double theta_res_;
  std::vector<std::uint32_t> votes_;
};

Accumulator accumulate(const BinaryImage& bin, const HoughParams& params);

struct Peak {
  int theta_bin;
  int rho_bin;
  std::uint32_t votes;
  PolarLine line;
};

/// Local maxima over a peak_window square (theta wraps with rho mirrored) holding at
/// least votes_min votes. Sorted by votes descending, then (theta, rho) ascending.
std::vector<Peak> find_peak_bins(const Accumulator& acc, const HoughParams& params);
std::vector<PolarLine> find_peaks(const Accumulator& acc, const HoughParams& params);

/// Walks the line across the image and returns its supported runs as segments.
std::vector<Segment> extract_segments(const BinaryImage& bin, const PolarLine& line,
                                      const HoughParams& params);

/// Supported runs of a walk together with the step range each covers.
struct LineRun {
  Segment segment;
  int first_step;
  int last_step;
};
std::vector<LineRun> walk_line(const BinaryImage& bin, const PolarLine& line,
                               const HoughParams& params);

/// Clears every foreground pixel within rho_res of the line at the run's steps.
void clear_run_support(BinaryImage& bin, const PolarLine& line, const LineRun& run,
                       const HoughParams& params);

/// accumulate, find_peaks, extract_segments per peak (on the remaining pixels when
/// claim_support is set), concatenated with exact duplicates dropped.
std::vector<Segment> hough_segments(const BinaryImage& bin, const HoughParams& params);

}  // namespace comb
