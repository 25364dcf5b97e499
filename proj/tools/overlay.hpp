#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "comb/pipeline.hpp"
#include "comb/raster.hpp"

namespace comb::io {

/// 8-bit grayscale PNG, unfiltered rows, zlib-compressed.
std::vector<std::uint8_t> encode_png(const GrayImage& img);
std::string base64(const std::vector<std::uint8_t>& bytes);

/// Source image as an embedded raster with segments and nodes drawn on top.
std::string render_overlay_svg(const GrayImage& img, const std::vector<Segment>& segments,
                               const std::vector<Point>& nodes);

}  // namespace comb::io
