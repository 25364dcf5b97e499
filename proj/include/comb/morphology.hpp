#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "comb/raster.hpp"

namespace comb {

enum class SeShape { Square, Cross };

/// Odd-sized binary mask with its anchor at the center cell.
class StructuringElement {
 public:
  StructuringElement(int width, int height, std::vector<std::uint8_t> mask);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int anchor_x() const noexcept { return width_ / 2; }
  int anchor_y() const noexcept { return height_ / 2; }
  bool at(int col, int row) const { return mask_[static_cast<std::size_t>(row) * width_ + col] != 0; }
  std::size_t cell_count() const noexcept;

  struct Offset {
    int dx;
    int dy;
  };
  /// Set cells relative to the anchor, row-major.
  const std::vector<Offset>& offsets() const noexcept { return offsets_; }

  StructuringElement reflect() const;
  friend bool operator==(const StructuringElement& a, const StructuringElement& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.mask_ == b.mask_;
  }

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> mask_;
  std::vector<Offset> offsets_;
};

StructuringElement se_square(int n);
StructuringElement se_cross(int n);
StructuringElement make_se(SeShape shape, int n);

std::string to_string(SeShape shape);
SeShape se_shape_from_string(const std::string& name);

// Pixels outside the image are background for both operators: erosion drops any
// pixel whose translated element leaves the frame, dilation gets nothing from it.
BinaryImage erode(const BinaryImage& bin, const StructuringElement& se);
BinaryImage dilate(const BinaryImage& bin, const StructuringElement& se);
BinaryImage open(const BinaryImage& bin, const StructuringElement& se);

struct SkeletonResult {
  BinaryImage skeleton;
  int iterations = 0;  // number of erosions performed
};

/// Union over k of E_k minus open(E_k), E_0 = bin, E_k+1 = erode(E_k), stopping once
/// E_k is empty (or stops shrinking, which only an anchor-only element allows).
SkeletonResult skeletonize_counted(const BinaryImage& bin, const StructuringElement& se);
BinaryImage skeletonize(const BinaryImage& bin, const StructuringElement& se);

}  // namespace comb
