#include "tcboost/haar.hpp"

#include <stdexcept>

namespace tcboost {

IntegralImage::IntegralImage(const GrayImage& image) : width_(image.width), height_(image.height) {
  if (width_ <= 0 || height_ <= 0) throw std::invalid_argument("IntegralImage: empty image");
  table_.setZero(height_ + 1, width_ + 1);
  for (int r = 0; r < height_; ++r) {
    std::int64_t row_sum = 0;
    for (int c = 0; c < width_; ++c) {
      row_sum += image.at(r, c);
      table_(r + 1, c + 1) = table_(r, c + 1) + row_sum;
    }
  }
}

namespace {

struct BaseShape {
  int w;
  int h;
};

// Base template extents per type; features scale these in both dimensions.
constexpr BaseShape kBase[5] = {{2, 1}, {1, 2}, {3, 1}, {1, 3}, {2, 2}};

}  // namespace

std::vector<HaarFeature> enumerate_features(int window_w, int window_h) {
  if (window_w < 2 || window_h < 2) throw std::invalid_argument("enumerate_features: window must be at least 2x2");
  std::vector<HaarFeature> out;
  for (int t = 0; t < 5; ++t) {
    const BaseShape base = kBase[t];
    for (int y = 0; y + base.h <= window_h; ++y) {
      for (int x = 0; x + base.w <= window_w; ++x) {
        for (int h = base.h; y + h <= window_h; h += base.h) {
          for (int w = base.w; x + w <= window_w; w += base.w) {
            out.push_back(HaarFeature{static_cast<HaarType>(t), x, y, w, h});
          }
        }
      }
    }
  }
  return out;
}

double feature_value(const HaarFeature& f, const IntegralImage& ii) {
  if (f.x < 0 || f.y < 0 || f.width <= 0 || f.height <= 0 || f.x + f.width > ii.width() ||
      f.y + f.height > ii.height()) {
    throw std::invalid_argument("feature_value: feature out of window bounds");
  }
  const int r1 = f.y, c1 = f.x, r2 = f.y + f.height, c2 = f.x + f.width;
  std::int64_t value = 0;
  switch (f.type) {
    case HaarType::two_rect_horizontal: {
      const int cm = c1 + f.width / 2;
      value = ii.rect_sum(r1, cm, r2, c2) - ii.rect_sum(r1, c1, r2, cm);
      break;
    }
    case HaarType::two_rect_vertical: {
      const int rm = r1 + f.height / 2;
      value = ii.rect_sum(rm, c1, r2, c2) - ii.rect_sum(r1, c1, rm, c2);
      break;
    }
    case HaarType::three_rect_horizontal: {
      const int third = f.width / 3;
      const int ca = c1 + third, cb = c1 + 2 * third;
      value = ii.rect_sum(r1, c1, r2, ca) - 2 * ii.rect_sum(r1, ca, r2, cb) + ii.rect_sum(r1, cb, r2, c2);
      break;
    }
    case HaarType::three_rect_vertical: {
      const int third = f.height / 3;
      const int ra = r1 + third, rb = r1 + 2 * third;
      value = ii.rect_sum(r1, c1, ra, c2) - 2 * ii.rect_sum(ra, c1, rb, c2) + ii.rect_sum(rb, c1, r2, c2);
      break;
    }
    case HaarType::four_rect_diagonal: {
      const int rm = r1 + f.height / 2, cm = c1 + f.width / 2;
      value = ii.rect_sum(r1, c1, rm, cm) + ii.rect_sum(rm, cm, r2, c2) - ii.rect_sum(r1, cm, rm, c2) -
              ii.rect_sum(rm, c1, r2, cm);
      break;
    }
  }
  return static_cast<double>(value);
}

}  // namespace tcboost
