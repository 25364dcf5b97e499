#pragma once

#include <vector>

#include "comb/raster.hpp"

namespace comb {

struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> gx;
  std::vector<double> gy;
  std::vector<double> magnitude;
  std::vector<double> direction;  // atan2(gy, gx) folded into [0, pi)
};

struct CannyParams {
  double sigma = 1.4;
  double low = 50.0;
  double high = 150.0;
};

/// Normalized 1-D Gaussian taps over [-ceil(3 sigma), ceil(3 sigma)].
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian smoothing of a real-valued raster, edge-clamped.
std::vector<double> gaussian_blur(const std::vector<double>& values, int width, int height,
                                  double sigma);
GrayImage gaussian_blur(const GrayImage& img, double sigma);

/// 3x3 Sobel derivatives (raw integer kernel weights), edge-clamped. y points down.
GradientField sobel(const GrayImage& img);

/// Keeps pixels whose magnitude is >= both neighbours along the gradient direction
/// quantized to 0, 45, 90 or 135 degrees. Neighbours outside the image count as 0.
std::vector<std::uint8_t> non_maximum_suppression(const GradientField& g);

/// Strong pixels (>= high) plus candidates (>= low) 8-connected to a kept pixel.
BinaryImage hysteresis(const GradientField& g, const std::vector<std::uint8_t>& candidates,
                       double low, double high);

BinaryImage canny(const GrayImage& img, const CannyParams& params = {});

/// Sobel, suppression and hysteresis without the Gaussian stage: the edge map most
/// line-detection tool chains compute implicitly ahead of a Hough call.
BinaryImage canny_unsmoothed(const GrayImage& img, double low, double high);

}  // namespace comb
