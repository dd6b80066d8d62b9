#include "shipland/cue_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include "shipland/error.hpp"

namespace shipland {
namespace {

// Sliding-window count along rows (horizontal) or columns (vertical); a pixel
// is set when the count satisfies `keep` relative to the in-bounds window.
template <typename Keep>
BinaryMask window_pass(const BinaryMask& in, int radius, bool horizontal, Keep keep) {
  const int w = in.width();
  const int h = in.height();
  BinaryMask out(w, h);
  const int lines = horizontal ? h : w;
  const int len = horizontal ? w : h;
  std::vector<int> prefix(len + 1);
  for (int l = 0; l < lines; ++l) {
    prefix[0] = 0;
    for (int i = 0; i < len; ++i) {
      const std::uint8_t b = horizontal ? in.at(i, l) : in.at(l, i);
      prefix[i + 1] = prefix[i] + (b ? 1 : 0);
    }
    for (int i = 0; i < len; ++i) {
      const int lo = std::max(0, i - radius);
      const int hi = std::min(len - 1, i + radius);
      const int count = prefix[hi + 1] - prefix[lo];
      const std::uint8_t v = keep(count, hi - lo + 1) ? 1 : 0;
      if (horizontal) out.at(i, l) = v;
      else out.at(l, i) = v;
    }
  }
  return out;
}

struct Component {
  std::vector<int> pixels;  // linear indices
  int x0, y0, x1, y1;
};

std::vector<Component> label_components(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<Component> comps;
  std::vector<int> stack;
  for (int start = 0; start < w * h; ++start) {
    if (!mask.data()[start] || seen[start]) continue;
    Component c{{}, w, h, -1, -1};
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      c.pixels.push_back(idx);
      const int x = idx % w;
      const int y = idx / w;
      c.x0 = std::min(c.x0, x);
      c.x1 = std::max(c.x1, x);
      c.y0 = std::min(c.y0, y);
      c.y1 = std::max(c.y1, y);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const int n = ny * w + nx;
          if (mask.data()[n] && !seen[n]) {
            seen[n] = 1;
            stack.push_back(n);
          }
        }
      }
    }
    comps.push_back(std::move(c));
  }
  return comps;
}

enum : std::uint8_t { kUnknown = 0, kFore = 1, kBack = 2 };

// Builds the seed label image shared by both watershed variants.
std::vector<std::uint8_t> watershed_seeds(const BinaryMask& mask) {
  const auto comps = label_components(mask);
  if (comps.empty()) throw Error(ErrorCode::EmptyMask, "no foreground to refine");
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(w) * h, kBack);
  for (const auto& c : comps) {
    const double diag = std::hypot(c.x1 - c.x0 + 1, c.y1 - c.y0 + 1);
    const int r = std::max(1, static_cast<int>(std::lround(0.01 * diag)));
    const int bx0 = std::max(0, c.x0 - r - 1);
    const int by0 = std::max(0, c.y0 - r - 1);
    const int bx1 = std::min(w - 1, c.x1 + r + 1);
    const int by1 = std::min(h - 1, c.y1 + r + 1);
    BinaryMask local(bx1 - bx0 + 1, by1 - by0 + 1);
    for (int idx : c.pixels) local.at(idx % w - bx0, idx / w - by0) = 1;
    const BinaryMask grown = dilate(local, r);
    const BinaryMask core = erode(local, r);
    for (int y = 0; y < local.height(); ++y) {
      for (int x = 0; x < local.width(); ++x) {
        auto& l = labels[static_cast<std::size_t>(y + by0) * w + (x + bx0)];
        if (core.at(x, y)) l = kFore;
        else if (grown.at(x, y) && l == kBack) l = kUnknown;
      }
    }
  }
  return labels;
}

BinaryMask labels_to_mask(const std::vector<std::uint8_t>& labels, int w, int h) {
  BinaryMask out(w, h);
  for (std::size_t i = 0; i < labels.size(); ++i) out.data()[i] = labels[i] == kFore ? 1 : 0;
  return out;
}

constexpr int kDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

GrayImage crop_intensity(const Raster& img, const PixelBox& box) {
  GrayImage out(box.width(), box.height());
  for (int y = 0; y < box.height(); ++y) {
    for (int x = 0; x < box.width(); ++x) {
      const Hsv& p = img.at(box.x0 + x, box.y0 + y);
      out.at(x, y) = static_cast<float>(p.s) * p.v / 255.0f;
    }
  }
  return out;
}

BinaryMask crop_mask(const BinaryMask& mask, const PixelBox& box) {
  BinaryMask out(box.width(), box.height());
  for (int y = 0; y < box.height(); ++y) {
    for (int x = 0; x < box.width(); ++x) out.at(x, y) = mask.at(box.x0 + x, box.y0 + y);
  }
  return out;
}

BinaryMask paste_mask(const BinaryMask& crop, const PixelBox& box, int w, int h) {
  BinaryMask out(w, h);
  for (int y = 0; y < crop.height(); ++y) {
    for (int x = 0; x < crop.width(); ++x) out.at(box.x0 + x, box.y0 + y) = crop.at(x, y);
  }
  return out;
}

double slope(const Pixel& a, const Pixel& b, bool horizontal) {
  const double du = b.u - a.u;
  const double dv = b.v - a.v;
  const double denom = horizontal ? du : dv;
  if (std::abs(denom) < 1e-9) throw ScreenRejectError(ScreenFailure::Ordering, "degenerate side");
  return (horizontal ? dv : du) / denom;
}

}  // namespace

BinaryMask hsv_filter(const Raster& img, const HsvBounds& b) {
  BinaryMask out(img.width(), img.height());
  const auto& src = img.data();
  auto& dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Hsv& p = src[i];
    dst[i] = (p.h >= b.h_min && p.h <= b.h_max && p.s >= b.s_min && p.s <= b.s_max && p.v >= b.v_min &&
              p.v <= b.v_max)
                 ? 1
                 : 0;
  }
  return out;
}

BinaryMask erode(const BinaryMask& mask, int radius) {
  if (radius <= 0) return mask;
  auto all = [](int count, int n) { return count == n; };
  return window_pass(window_pass(mask, radius, true, all), radius, false, all);
}

BinaryMask dilate(const BinaryMask& mask, int radius) {
  if (radius <= 0) return mask;
  auto any = [](int count, int) { return count > 0; };
  return window_pass(window_pass(mask, radius, true, any), radius, false, any);
}

BinaryMask morph_open_close(const BinaryMask& mask, int kernel_radius) {
  if (kernel_radius < 1) throw Error(ErrorCode::ConfigInvalid, "kernel radius must be at least 1");
  const BinaryMask opened = dilate(erode(mask, kernel_radius), kernel_radius);
  return erode(dilate(opened, kernel_radius), kernel_radius);
}

BinaryMask watershed_refine(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  auto labels = watershed_seeds(mask);
  std::deque<int> queue;
  // Foreground seeds enter first so equidistant pixels go to the foreground.
  for (std::uint8_t seed : {kFore, kBack}) {
    for (int i = 0; i < w * h; ++i) {
      if (labels[i] == seed) queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const int idx = queue.front();
    queue.pop_front();
    const int x = idx % w;
    const int y = idx / w;
    for (int k = 0; k < 8; ++k) {
      const int nx = x + kDx[k];
      const int ny = y + kDy[k];
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      const int n = ny * w + nx;
      if (labels[n] != kUnknown) continue;
      labels[n] = labels[idx];
      queue.push_back(n);
    }
  }
  return labels_to_mask(labels, w, h);
}

BinaryMask watershed_refine(const BinaryMask& mask, const GrayImage& img) {
  if (img.width() != mask.width() || img.height() != mask.height()) {
    throw Error(ErrorCode::ConfigInvalid, "image and mask sizes differ");
  }
  const int w = mask.width();
  const int h = mask.height();
  auto labels = watershed_seeds(mask);
  const GradientField g = sobel_gradient(img);

  struct Entry {
    float priority;
    std::uint64_t order;
    int index;
    std::uint8_t label;
    bool operator>(const Entry& o) const {
      return priority != o.priority ? priority > o.priority : order > o.order;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::uint64_t order = 0;
  auto push_neighbours = [&](int idx) {
    const int x = idx % w;
    const int y = idx / w;
    for (int k = 0; k < 8; ++k) {
      const int nx = x + kDx[k];
      const int ny = y + kDy[k];
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      const int n = ny * w + nx;
      if (labels[n] != kUnknown) continue;
      const float mag = std::hypot(g.gu.data()[n], g.gv.data()[n]);
      queue.push({mag, order++, n, labels[idx]});
    }
  };
  for (std::uint8_t seed : {kFore, kBack}) {
    for (int i = 0; i < w * h; ++i) {
      if (labels[i] == seed) push_neighbours(i);
    }
  }
  while (!queue.empty()) {
    const Entry e = queue.top();
    queue.pop();
    if (labels[e.index] != kUnknown) continue;
    labels[e.index] = e.label;
    push_neighbours(e.index);
  }
  return labels_to_mask(labels, w, h);
}

std::vector<BoundingRect> find_bounding_rects(const BinaryMask& mask, std::size_t min_area) {
  std::vector<BoundingRect> rects;
  for (const auto& c : label_components(mask)) {
    if (c.pixels.size() < min_area) continue;
    rects.push_back({c.x0, c.y0, c.x1 - c.x0 + 1, c.y1 - c.y0 + 1, c.pixels.size()});
  }
  std::stable_sort(rects.begin(), rects.end(),
                   [](const BoundingRect& a, const BoundingRect& b) { return a.center_u() < b.center_u(); });
  return rects;
}

int foerstner_window(int w, int h) {
  const double sw = w * h / 5.0;
  int side = static_cast<int>(std::lround(std::sqrt(sw)));
  if (side % 2 == 0) ++side;
  return std::max(side, 3);
}

Pixel foerstner_refine(const GrayImage& img, int cx, int cy, int side, double gradient_floor) {
  const int half = side / 2;
  const int w = img.width();
  const int h = img.height();
  auto px = [&](int x, int y) { return img.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1)); };

  struct Sample {
    double gx, gy, x, y;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(side) * side);
  double max_sq = 0.0;
  for (int y = cy - half; y <= cy + half; ++y) {
    for (int x = cx - half; x <= cx + half; ++x) {
      if (x < 0 || y < 0 || x >= w || y >= h) continue;
      const double gx = ((px(x + 1, y - 1) + 2.0 * px(x + 1, y) + px(x + 1, y + 1)) -
                         (px(x - 1, y - 1) + 2.0 * px(x - 1, y) + px(x - 1, y + 1))) / 8.0;
      const double gy = ((px(x - 1, y + 1) + 2.0 * px(x, y + 1) + px(x + 1, y + 1)) -
                         (px(x - 1, y - 1) + 2.0 * px(x, y - 1) + px(x + 1, y - 1))) / 8.0;
      samples.push_back({gx, gy, static_cast<double>(x), static_cast<double>(y)});
      max_sq = std::max(max_sq, gx * gx + gy * gy);
    }
  }
  const double floor_sq = gradient_floor * gradient_floor * max_sq;
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  for (const auto& s : samples) {
    const double sq = s.gx * s.gx + s.gy * s.gy;
    if (sq <= 0.0 || sq < floor_sq) continue;
    Eigen::Matrix2d n;
    n << s.gx * s.gx, s.gx * s.gy, s.gx * s.gy, s.gy * s.gy;
    a += n;
    b += n * Eigen::Vector2d(s.x, s.y);
  }
  const double trace = a.trace();
  if (!(trace > 0.0) || a.determinant() <= 1e-6 * trace * trace) {
    throw Error(ErrorCode::SingularWindow,
                "flat or single-edge window at (" + std::to_string(cx) + ", " + std::to_string(cy) + ")");
  }
  const Eigen::Vector2d p = a.ldlt().solve(b);
  return {p.x(), p.y()};
}

std::array<Pixel, 8> foerstner_corners(const GrayImage& img, const std::vector<BoundingRect>& rects,
                                       const VisionParams& params) {
  if (rects.size() != 2) {
    throw Error(ErrorCode::InsufficientRects, "expected 2 rectangles, got " + std::to_string(rects.size()));
  }
  std::array<Pixel, 8> out;
  for (std::size_t r = 0; r < 2; ++r) {
    const auto& rc = rects[r];
    const int side = foerstner_window(rc.w, rc.h);
    const int rough[4][2] = {
        {rc.x, rc.y}, {rc.x + rc.w - 1, rc.y}, {rc.x + rc.w - 1, rc.y + rc.h - 1}, {rc.x, rc.y + rc.h - 1}};
    for (int k = 0; k < 4; ++k) {
      int cx = rough[k][0];
      int cy = rough[k][1];
      Pixel p{static_cast<double>(cx), static_cast<double>(cy)};
      for (int it = 0; it < std::max(1, params.foerstner_iterations); ++it) {
        p = foerstner_refine(img, cx, cy, side, params.gradient_floor);
        const int nx = std::clamp(static_cast<int>(std::lround(p.u)), 0, img.width() - 1);
        const int ny = std::clamp(static_cast<int>(std::lround(p.v)), 0, img.height() - 1);
        if (nx == cx && ny == cy) break;
        cx = nx;
        cy = ny;
      }
      out[4 * r + k] = p;
    }
  }
  return out;
}

std::array<Pixel, 8> foerstner_corners(const Raster& img, const std::vector<BoundingRect>& rects,
                                       const VisionParams& params) {
  return foerstner_corners(intensity(img), rects, params);
}

CornerSet screen_corners(const std::array<Pixel, 8>& corners, double timestamp, double length_tolerance,
                         double slope_tolerance) {
  for (const auto& c : corners) {
    if (!std::isfinite(c.u) || !std::isfinite(c.v)) {
      throw ScreenRejectError(ScreenFailure::Ordering, "non-finite corner");
    }
  }
  std::array<Pixel, 8> sorted = corners;
  std::sort(sorted.begin(), sorted.end(), [](const Pixel& a, const Pixel& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  CornerSet out;
  out.timestamp = timestamp;
  for (int r = 0; r < 2; ++r) {
    std::array<Pixel, 4> g{sorted[4 * r], sorted[4 * r + 1], sorted[4 * r + 2], sorted[4 * r + 3]};
    std::sort(g.begin(), g.end(), [](const Pixel& a, const Pixel& b) {
      return a.v != b.v ? a.v < b.v : a.u < b.u;
    });
    auto by_u = [](const Pixel& a, const Pixel& b) { return a.u < b.u; };
    const auto [tl, tr] = std::minmax(g[0], g[1], by_u);
    const auto [bl, br] = std::minmax(g[2], g[3], by_u);
    out.corners[4 * r] = tl;
    out.corners[4 * r + 1] = tr;
    out.corners[4 * r + 2] = br;
    out.corners[4 * r + 3] = bl;
  }

  const auto& c = out.corners;
  // Left rectangle must lie entirely left of the right rectangle.
  const double left_max = std::max({c[0].u, c[1].u, c[2].u, c[3].u});
  const double right_min = std::min({c[4].u, c[5].u, c[6].u, c[7].u});
  if (!(left_max < right_min)) throw ScreenRejectError(ScreenFailure::Ordering, "rectangles overlap");

  auto dist = [](const Pixel& a, const Pixel& b) { return std::hypot(a.u - b.u, a.v - b.v); };
  // Sides: top (TL-TR), right (TR-BR), bottom (BL-BR), left (TL-BL).
  const int side_pairs[4][2] = {{0, 1}, {1, 2}, {3, 2}, {0, 3}};
  const char* names[4] = {"top", "right", "bottom", "left"};
  for (int s = 0; s < 4; ++s) {
    const double a = dist(c[side_pairs[s][0]], c[side_pairs[s][1]]);
    const double b = dist(c[4 + side_pairs[s][0]], c[4 + side_pairs[s][1]]);
    const double mean = 0.5 * (a + b);
    if (!(mean > 0.0)) throw ScreenRejectError(ScreenFailure::Ordering, "zero-length side");
    const double rel = std::abs(a - b) / mean;
    if (rel > length_tolerance) {
      throw ScreenRejectError(ScreenFailure::Length,
                              std::string(names[s]) + " sides differ by " + std::to_string(rel * 100.0) + "%");
    }
  }
  for (int s = 0; s < 4; ++s) {
    const bool horizontal = s % 2 == 0;
    const double a = slope(c[side_pairs[s][0]], c[side_pairs[s][1]], horizontal);
    const double b = slope(c[4 + side_pairs[s][0]], c[4 + side_pairs[s][1]], horizontal);
    if (std::abs(a - b) > slope_tolerance) {
      throw ScreenRejectError(ScreenFailure::Slope, std::string(names[s]) + " slopes differ by " +
                                                        std::to_string(std::abs(a - b)));
    }
  }
  return out;
}

std::array<Pixel, 8> extract_cue_corners(const Raster& img, const VisionParams& params, const DebugSink& debug) {
  const BinaryMask mask = hsv_filter(img, params.bounds);
  const PixelBox fg = foreground_box(mask);
  if (fg.empty()) throw Error(ErrorCode::EmptyMask, "no pixels inside the HSV bounds");

  const double diag = std::hypot(fg.width(), fg.height());
  const int margin = 4 * params.morph_radius + 4 + static_cast<int>(std::ceil(0.01 * diag));
  const PixelBox roi{std::max(0, fg.x0 - margin), std::max(0, fg.y0 - margin),
                     std::min(img.width() - 1, fg.x1 + margin), std::min(img.height() - 1, fg.y1 + margin)};

  const BinaryMask cleaned = morph_open_close(crop_mask(mask, roi), params.morph_radius);
  const GrayImage gray = crop_intensity(img, roi);
  BinaryMask refined;
  if (count_foreground(cleaned) > 0) refined = watershed_refine(cleaned, gray);

  auto dump_stages = [&](const std::array<Pixel, 8>* corners) {
    if (!debug.enabled()) return;
    const std::string base = debug.directory + "/" + debug.prefix;
    write_ppm(base + "_0_input.ppm", img);
    write_pgm(base + "_1_hsv.pgm", mask);
    write_pgm(base + "_2_morph.pgm", paste_mask(cleaned, roi, img.width(), img.height()));
    if (refined.width() > 0) write_pgm(base + "_3_watershed.pgm", paste_mask(refined, roi, img.width(), img.height()));
    if (corners != nullptr) {
      Image<Rgb> overlay = to_rgb(img);
      draw_crosses(overlay, std::vector<Pixel>(corners->begin(), corners->end()), Rgb{255, 0, 0});
      write_ppm(base + "_4_corners.ppm", overlay);
    }
  };

  try {
    if (refined.width() == 0) throw Error(ErrorCode::EmptyMask, "morphology removed every region");
    auto rects = find_bounding_rects(refined, params.min_component_area);
    if (rects.size() > 2) {
      std::stable_sort(rects.begin(), rects.end(),
                       [](const BoundingRect& a, const BoundingRect& b) { return a.area > b.area; });
      rects.resize(2);
      std::stable_sort(rects.begin(), rects.end(),
                       [](const BoundingRect& a, const BoundingRect& b) { return a.center_u() < b.center_u(); });
    }
    if (rects.size() != 2) {
      throw Error(ErrorCode::InsufficientRects, "found " + std::to_string(rects.size()) + " regions");
    }
    for (const auto& r : rects) {
      if (r.h < params.min_rect_height_px) {
        throw Error(ErrorCode::InsufficientRects, "rectangle only " + std::to_string(r.h) + " px tall");
      }
    }
    auto corners = foerstner_corners(gray, rects, params);
    for (auto& p : corners) {
      p.u += roi.x0;
      p.v += roi.y0;
    }
    dump_stages(&corners);
    return corners;
  } catch (const Error&) {
    dump_stages(nullptr);
    throw;
  }
}

CornerSet detect_cue_corners(const Raster& img, double timestamp, const VisionParams& params,
                             const DebugSink& debug) {
  return screen_corners(extract_cue_corners(img, params, debug), timestamp, params.length_tolerance,
                        params.slope_tolerance);
}

}  // namespace shipland
