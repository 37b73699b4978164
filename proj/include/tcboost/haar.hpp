#pragma once

#include <cstdint>
#include <vector>

#include "tcboost/types.hpp"

namespace tcboost {

/// Fixed-size grayscale window, 8-bit pixels, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // height * width

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)];
  }
};

/// Cumulative-sum table with a zero origin row/column: entry (r, c) is the
/// sum of all pixels strictly above and left of (r, c). Sums are exact
/// 64-bit integers.
class IntegralImage {
 public:
  IntegralImage() = default;
  explicit IntegralImage(const GrayImage& image);

  int width() const { return width_; }
  int height() const { return height_; }

  /// Sum over rows [r1, r2) x cols [c1, c2), four table lookups.
  std::int64_t rect_sum(int r1, int c1, int r2, int c2) const {
    const auto& t = table_;
    return t(r2, c2) - t(r1, c2) - t(r2, c1) + t(r1, c1);
  }

 private:
  int width_ = 0;
  int height_ = 0;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> table_;  // (h+1) x (w+1)
};

enum class HaarType : std::uint8_t {
  two_rect_horizontal = 0,  // left | right halves
  two_rect_vertical = 1,    // top / bottom halves
  three_rect_horizontal = 2,
  three_rect_vertical = 3,
  four_rect_diagonal = 4,
};

/// One placement of a Haar template. (x, y) is the top-left corner inside the
/// window; width/height are the full extents of the feature region and are
/// multiples of the template's base shape.
///
/// Polarity convention (positive weight on the higher-coordinate rectangle,
/// middle rectangle of three-rect types weighted -2, diagonal pairs of the
/// four-rect type opposite): every type is area-balanced, so all five types
/// evaluate to zero on a constant window.
struct HaarFeature {
  HaarType type;
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

/// All placements and scales of the five basic types that fit the window,
/// in deterministic (type, y, x, height, width) order. A 24x24 window yields
/// exactly 162,336 features.
std::vector<HaarFeature> enumerate_features(int window_w, int window_h);

/// Signed rectangle-sum combination; exact in integer arithmetic.
/// Throws std::invalid_argument if the feature does not fit the window.
double feature_value(const HaarFeature& feature, const IntegralImage& integral);

}  // namespace tcboost
