#pragma once

#include <array>
#include <random>

#include "shipland/geometry.hpp"
#include "shipland/raster.hpp"

namespace shipland {

struct RenderStyle {
  Hsv cue{60, 200, 180};
  Hsv background{0, 0, 180};
  /// Standard deviation of additive Gaussian noise on S and V; 0 disables.
  double noise_sigma = 0.0;
  /// Noise is generated in a box around the projected cue grown by this many
  /// pixels. Elsewhere the background stays flat.
  int noise_margin_px = 24;
};

struct RenderResult {
  Raster image;
  /// Exact projections of the eight cue corners in canonical order.
  std::array<Pixel, 8> truth{};
};

/// Renders the cue seen from `camera_pose` (optical frame to world) with
/// exact area-coverage anti-aliasing. `cue_pose` maps the cue's planar frame
/// into the world. Throws NonPositiveDepth if any corner is at or behind the
/// camera plane.
RenderResult render_cue(const Pose& camera_pose, const CameraModel& camera, const CueSpec& cue,
                        const Pose& cue_pose, const RenderStyle& style, std::mt19937_64* rng = nullptr);

/// Area of the intersection of the unit pixel square centred at (x, y) with a
/// convex quadrilateral.
double pixel_coverage(const std::array<Pixel, 4>& quad, double x, double y);

}  // namespace shipland
