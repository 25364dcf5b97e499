#include "comb/canny.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace comb {

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += k[i + radius];
  }
  for (auto& v : k) v /= sum;
  return k;
}

std::vector<double> gaussian_blur(const std::vector<double>& values, int width, int height,
                                  double sigma) {
  const auto k = gaussian_kernel(sigma);
  const int r = static_cast<int>(k.size() / 2);
  std::vector<double> tmp(values.size());
  std::vector<double> out(values.size());
  for (int y = 0; y < height; ++y) {
    const double* src = values.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) acc += k[i + r] * src[std::clamp(x + i, 0, width - 1)];
      tmp[static_cast<std::size_t>(y) * width + x] = acc;
    }
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) {
        acc += k[i + r] * tmp[static_cast<std::size_t>(std::clamp(y + i, 0, height - 1)) * width + x];
      }
      out[static_cast<std::size_t>(y) * width + x] = acc;
    }
  }
  return out;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  std::vector<double> values(img.pixels().begin(), img.pixels().end());
  const auto blurred = gaussian_blur(values, img.width(), img.height(), sigma);
  GrayImage out(img.width(), img.height());
  auto dst = out.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<std::uint8_t>(std::clamp(std::floor(blurred[i] + 0.5), 0.0, 255.0));
  }
  return out;
}

GradientField sobel(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  GradientField g{w, h, {}, {}, {}, {}};
  const std::size_t n = img.size();
  g.gx.resize(n);
  g.gy.resize(n);
  g.magnitude.resize(n);
  g.direction.resize(n);
  auto px = [&](int x, int y) {
    return static_cast<double>(img(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1)));
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double dx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                        (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
      const double dy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                        (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      g.gx[i] = dx;
      g.gy[i] = dy;
      g.magnitude[i] = std::sqrt(dx * dx + dy * dy);
      double a = std::atan2(dy, dx);
      if (a < 0) a += std::numbers::pi;
      if (a >= std::numbers::pi) a -= std::numbers::pi;
      g.direction[i] = a;
    }
  }
  return g;
}

std::vector<std::uint8_t> non_maximum_suppression(const GradientField& g) {
  const int w = g.width;
  const int h = g.height;
  std::vector<std::uint8_t> keep(g.magnitude.size(), 0);
  auto mag = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0.0;
    return g.magnitude[static_cast<std::size_t>(y) * w + x];
  };
  constexpr double sector = std::numbers::pi / 8.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double a = g.direction[i];
      int ox, oy;
      if (a < sector || a >= 7 * sector) {
        ox = 1, oy = 0;
      } else if (a < 3 * sector) {
        ox = 1, oy = 1;
      } else if (a < 5 * sector) {
        ox = 0, oy = 1;
      } else {
        ox = -1, oy = 1;
      }
      const double m = g.magnitude[i];
      keep[i] = (m >= mag(x + ox, y + oy) && m >= mag(x - ox, y - oy)) ? 1 : 0;
    }
  }
  return keep;
}

BinaryImage hysteresis(const GradientField& g, const std::vector<std::uint8_t>& candidates,
                       double low, double high) {
  const int w = g.width;
  const int h = g.height;
  BinaryImage out(w, h);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (candidates[i] && g.magnitude[i] >= high && !out(x, y)) {
        out(x, y) = 1;
        stack.emplace_back(x, y);
        while (!stack.empty()) {
          const auto [cx, cy] = stack.back();
          stack.pop_back();
          for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
              const int nx = cx + dx;
              const int ny = cy + dy;
              if (!out.contains(nx, ny) || out(nx, ny)) continue;
              const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
              if (candidates[j] && g.magnitude[j] >= low) {
                out(nx, ny) = 1;
                stack.emplace_back(nx, ny);
              }
            }
          }
        }
      }
    }
  }
  return out;
}

namespace {

void check_thresholds(double low, double high) {
  if (!(low > 0.0) || low > high) {
    throw std::invalid_argument("canny thresholds must satisfy 0 < low <= high");
  }
}

}  // namespace

BinaryImage canny(const GrayImage& img, const CannyParams& params) {
  check_thresholds(params.low, params.high);
  const auto g = sobel(gaussian_blur(img, params.sigma));
  return hysteresis(g, non_maximum_suppression(g), params.low, params.high);
}

BinaryImage canny_unsmoothed(const GrayImage& img, double low, double high) {
  check_thresholds(low, high);
  const auto g = sobel(img);
  return hysteresis(g, non_maximum_suppression(g), low, high);
}

}  // namespace comb
