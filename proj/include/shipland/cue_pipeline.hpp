#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "shipland/geometry.hpp"
#include "shipland/raster.hpp"

namespace shipland {

struct HsvBounds {
  int h_min = 35, h_max = 85;
  int s_min = 70, s_max = 255;
  int v_min = 90, v_max = 255;
};

/// Axis-aligned box in whole pixels: columns x .. x + w - 1, rows y .. y + h - 1.
struct BoundingRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  std::size_t area = 0;  // foreground pixel count of the component

  Pixel top_left() const { return {static_cast<double>(x), static_cast<double>(y)}; }
  double center_u() const { return x + (w - 1) / 2.0; }
};

struct CornerSet {
  std::array<Pixel, 8> corners{};
  double timestamp = 0.0;
};

struct VisionParams {
  HsvBounds bounds;
  int morph_radius = 1;
  std::size_t min_component_area = 25;
  /// Rectangles shorter than this are too small to refine reliably.
  int min_rect_height_px = 8;
  /// Lower limit used while a track is already established, so extraction
  /// does not flicker on and off right at the acquisition limit.
  int track_min_rect_height_px = 6;
  int foerstner_iterations = 2;
  /// Gradients weaker than this fraction of the strongest in the window are
  /// ignored by the corner solve.
  double gradient_floor = 0.10;
  double length_tolerance = 0.10;
  double slope_tolerance = 0.05;
};

BinaryMask hsv_filter(const Raster& img, const HsvBounds& bounds = {});

BinaryMask erode(const BinaryMask& mask, int radius);
BinaryMask dilate(const BinaryMask& mask, int radius);
/// Opening followed by closing with a (2r+1) square structuring element.
BinaryMask morph_open_close(const BinaryMask& mask, int kernel_radius);

/// Seeds: each component eroded by 1% of its bounding-box diagonal (at least
/// one pixel) is sure foreground, the complement of its dilation is sure
/// background. Both fronts grow one pixel ring at a time until they meet.
/// Throws EmptyMask.
BinaryMask watershed_refine(const BinaryMask& mask);

/// Same seeds, but the unknown band is flooded in order of increasing
/// gradient magnitude of `img`, so the fronts meet on the strongest edge.
BinaryMask watershed_refine(const BinaryMask& mask, const GrayImage& img);

/// One rectangle per 8-connected component of at least `min_area` pixels,
/// sorted by centre column.
std::vector<BoundingRect> find_bounding_rects(const BinaryMask& mask, std::size_t min_area = 25);

/// Odd side length of the square refinement window for a w x h rectangle:
/// round(sqrt(w h / 5)), bumped to the next odd number.
int foerstner_window(int w, int h);

/// Sub-pixel corner for a window of side `side` centred on pixel
/// (cx, cy). Throws SingularWindow for a flat window.
Pixel foerstner_refine(const GrayImage& img, int cx, int cy, int side, double gradient_floor = 0.10);

/// Eight refined corners, rectangle by rectangle in TL, TR, BR, BL order.
/// Throws InsufficientRects unless exactly two rectangles are given.
std::array<Pixel, 8> foerstner_corners(const Raster& img, const std::vector<BoundingRect>& rects,
                                       const VisionParams& params = {});
std::array<Pixel, 8> foerstner_corners(const GrayImage& intensity_img, const std::vector<BoundingRect>& rects,
                                       const VisionParams& params = {});

/// Sorts corners into canonical order and checks that corresponding sides of
/// the two rectangles agree in length and slope. Throws ScreenRejectError.
CornerSet screen_corners(const std::array<Pixel, 8>& corners, double timestamp = 0.0,
                         double length_tolerance = 0.10, double slope_tolerance = 0.05);

/// Directory and file prefix for per-stage debug images; disabled when empty.
struct DebugSink {
  std::string directory;
  std::string prefix = "frame";
  bool enabled() const { return !directory.empty(); }
};

/// Filtering, morphology, watershed, rectangles and Förstner refinement;
/// corners come back in rectangle order without screening.
/// Throws EmptyMask, InsufficientRects, SingularWindow.
std::array<Pixel, 8> extract_cue_corners(const Raster& img, const VisionParams& params = {},
                                         const DebugSink& debug = {});

/// Full close-range chain from raster to screened corners.
CornerSet detect_cue_corners(const Raster& img, double timestamp, const VisionParams& params = {},
                             const DebugSink& debug = {});

}  // namespace shipland
