#include "comb/morphology.hpp"

#include <algorithm>
#include <stdexcept>

namespace comb {

StructuringElement::StructuringElement(int width, int height, std::vector<std::uint8_t> mask)
    : width_(width), height_(height), mask_(std::move(mask)) {
  if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0) {
    throw std::invalid_argument("structuring element sides must be odd and positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
  if (mask_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("structuring element mask has wrong size");
  }
  for (auto& v : mask_) v = v ? 1 : 0;
  if (!at(anchor_x(), anchor_y())) {
    throw std::invalid_argument("structuring element anchor cell must be set");
  }
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (at(c, r)) offsets_.push_back({c - anchor_x(), r - anchor_y()});
    }
  }
}

std::size_t StructuringElement::cell_count() const noexcept { return offsets_.size(); }

StructuringElement StructuringElement::reflect() const {
  std::vector<std::uint8_t> flipped(mask_.rbegin(), mask_.rend());
  return StructuringElement(width_, height_, std::move(flipped));
}

namespace {

void check_size(int n) {
  if (n < 1 || n % 2 == 0) {
    throw std::invalid_argument("structuring element size must be odd and >= 1, got " +
                                std::to_string(n));
  }
}

}  // namespace

StructuringElement se_square(int n) {
  check_size(n);
  return StructuringElement(n, n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 1));
}

StructuringElement se_cross(int n) {
  check_size(n);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    mask[static_cast<std::size_t>(n / 2) * n + i] = 1;
    mask[static_cast<std::size_t>(i) * n + n / 2] = 1;
  }
  return StructuringElement(n, n, std::move(mask));
}

StructuringElement make_se(SeShape shape, int n) {
  return shape == SeShape::Square ? se_square(n) : se_cross(n);
}

std::string to_string(SeShape shape) { return shape == SeShape::Square ? "square" : "cross"; }

SeShape se_shape_from_string(const std::string& name) {
  if (name == "square") return SeShape::Square;
  if (name == "cross") return SeShape::Cross;
  throw std::invalid_argument("unknown structuring element shape '" + name + "'");
}

// Both operators work row by row: for each element offset, the source row y+dy
// shifted by dx is folded into an accumulator row with AND (erode) or OR (dilate).
BinaryImage erode(const BinaryImage& bin, const StructuringElement& se) {
  const int w = bin.width();
  const int h = bin.height();
  BinaryImage out(w, h);
  std::vector<std::uint8_t> acc(w);
  for (int y = 0; y < h; ++y) {
    std::fill(acc.begin(), acc.end(), 1);
    for (const auto [dx, dy] : se.offsets()) {
      const int sy = y + dy;
      if (sy < 0 || sy >= h) {
        std::fill(acc.begin(), acc.end(), 0);
        break;
      }
      const auto src = bin.row(sy);
      // x + dx must land in [0, w); columns that map outside are zeroed.
      const int lo = std::max(0, -dx);
      const int hi = std::min(w, w - dx);
      for (int x = 0; x < std::min(lo, w); ++x) acc[x] = 0;
      for (int x = std::max(hi, 0); x < w; ++x) acc[x] = 0;
      for (int x = lo; x < hi; ++x) acc[x] &= src[x + dx];
    }
    std::copy(acc.begin(), acc.end(), out.row(y).begin());
  }
  return out;
}

BinaryImage dilate(const BinaryImage& bin, const StructuringElement& se) {
  // out(p) = 1 iff bin(p - s) = 1 for some set offset s.
  const int w = bin.width();
  const int h = bin.height();
  BinaryImage out(w, h);
  for (int y = 0; y < h; ++y) {
    auto dst = out.row(y);
    for (const auto [dx, dy] : se.offsets()) {
      const int sy = y - dy;
      if (sy < 0 || sy >= h) continue;
      const auto src = bin.row(sy);
      const int lo = std::max(0, dx);
      const int hi = std::min(w, w + dx);
      for (int x = lo; x < hi; ++x) dst[x] |= src[x - dx];
    }
  }
  return out;
}

BinaryImage open(const BinaryImage& bin, const StructuringElement& se) {
  return dilate(erode(bin, se), se);
}

SkeletonResult skeletonize_counted(const BinaryImage& bin, const StructuringElement& se) {
  SkeletonResult result{BinaryImage(bin.width(), bin.height()), 0};
  BinaryImage eroded = bin;
  const int cap = std::max(bin.width(), bin.height());
  while (count_foreground(eroded) > 0) {
    result.skeleton = bin_or(result.skeleton, bin_sub(eroded, open(eroded, se)));
    if (result.iterations >= cap) break;
    BinaryImage next = erode(eroded, se);
    ++result.iterations;
    if (next == eroded) break;  // anchor-only element: erosion is the identity
    eroded = std::move(next);
  }
  return result;
}

BinaryImage skeletonize(const BinaryImage& bin, const StructuringElement& se) {
  return skeletonize_counted(bin, se).skeleton;
}

}  // namespace comb
