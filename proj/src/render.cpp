#include "shipland/render.hpp"

#include <algorithm>
#include <cmath>

#include "shipland/error.hpp"

namespace shipland {
namespace {

struct P2 {
  double x, y;
};

// Clip polygon `poly` to the half-plane on the left of edge a->b (for a
// counter-clockwise quad in x-right, y-up orientation; callers normalise).
int clip_half_plane(const P2* in, int n, P2 a, P2 b, P2* out) {
  auto side = [&](const P2& p) { return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x); };
  int m = 0;
  for (int i = 0; i < n; ++i) {
    const P2& cur = in[i];
    const P2& nxt = in[(i + 1) % n];
    const double sc = side(cur);
    const double sn = side(nxt);
    if (sc >= 0.0) out[m++] = cur;
    if ((sc >= 0.0) != (sn >= 0.0)) {
      const double k = sc / (sc - sn);
      out[m++] = {cur.x + k * (nxt.x - cur.x), cur.y + k * (nxt.y - cur.y)};
    }
  }
  return m;
}

double polygon_area(const P2* p, int n) {
  double a = 0.0;
  for (int i = 0; i < n; ++i) {
    const P2& c = p[i];
    const P2& d = p[(i + 1) % n];
    a += c.x * d.y - d.x * c.y;
  }
  return std::abs(a) / 2.0;
}

std::array<P2, 4> oriented(const std::array<Pixel, 4>& quad) {
  std::array<P2, 4> q;
  for (int i = 0; i < 4; ++i) q[i] = {quad[i].u, quad[i].v};
  double signed_area = 0.0;
  for (int i = 0; i < 4; ++i) signed_area += q[i].x * q[(i + 1) % 4].y - q[(i + 1) % 4].x * q[i].y;
  if (signed_area < 0.0) std::reverse(q.begin(), q.end());
  return q;
}

double coverage_oriented(const std::array<P2, 4>& q, double x, double y) {
  P2 buf_a[12] = {{x - 0.5, y - 0.5}, {x + 0.5, y - 0.5}, {x + 0.5, y + 0.5}, {x - 0.5, y + 0.5}};
  P2 buf_b[12];
  int n = 4;
  P2* src = buf_a;
  P2* dst = buf_b;
  for (int i = 0; i < 4 && n > 0; ++i) {
    n = clip_half_plane(src, n, q[i], q[(i + 1) % 4], dst);
    std::swap(src, dst);
  }
  return n > 0 ? polygon_area(src, n) : 0.0;
}

bool inside_oriented(const std::array<P2, 4>& q, double x, double y) {
  for (int i = 0; i < 4; ++i) {
    const P2& a = q[i];
    const P2& b = q[(i + 1) % 4];
    if ((b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) < 0.0) return false;
  }
  return true;
}

std::uint8_t to_u8(double v) { return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0) + 0.5); }

}  // namespace

double pixel_coverage(const std::array<Pixel, 4>& quad, double x, double y) {
  return coverage_oriented(oriented(quad), x, y);
}

RenderResult render_cue(const Pose& camera_pose, const CameraModel& camera, const CueSpec& cue,
                        const Pose& cue_pose, const RenderStyle& style, std::mt19937_64* rng) {
  camera.validate();
  cue.validate();
  RenderResult result;
  const auto corners = cue_corners_world(cue, cue_pose);
  for (std::size_t i = 0; i < 8; ++i) result.truth[i] = project_point(camera_pose, camera, corners[i]);

  // Coverage is accumulated per pixel over the projected bounding box; the
  // two quads never overlap.
  double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
  for (const Pixel& p : result.truth) {
    umin = std::min(umin, p.u);
    umax = std::max(umax, p.u);
    vmin = std::min(vmin, p.v);
    vmax = std::max(vmax, p.v);
  }
  PixelBox touched{std::max(0, static_cast<int>(std::floor(umin + 0.5))),
                   std::max(0, static_cast<int>(std::floor(vmin + 0.5))),
                   std::min(camera.width - 1, static_cast<int>(std::ceil(umax - 0.5))),
                   std::min(camera.height - 1, static_cast<int>(std::ceil(vmax - 0.5)))};
  result.image = Raster(camera.width, camera.height, style.background);
  if (!touched.empty()) {
    Image<float> alpha(touched.width(), touched.height(), 0.0f);
    for (int r = 0; r < 2; ++r) {
      const std::array<Pixel, 4> quad{result.truth[4 * r], result.truth[4 * r + 1], result.truth[4 * r + 2],
                                      result.truth[4 * r + 3]};
      const auto q = oriented(quad);
      double qu0 = 1e300, qu1 = -1e300, qv0 = 1e300, qv1 = -1e300;
      for (const auto& p : quad) {
        qu0 = std::min(qu0, p.u);
        qu1 = std::max(qu1, p.u);
        qv0 = std::min(qv0, p.v);
        qv1 = std::max(qv1, p.v);
      }
      const int x0 = std::max(touched.x0, static_cast<int>(std::floor(qu0 + 0.5)));
      const int x1 = std::min(touched.x1, static_cast<int>(std::ceil(qu1 - 0.5)));
      const int y0 = std::max(touched.y0, static_cast<int>(std::floor(qv0 + 0.5)));
      const int y1 = std::min(touched.y1, static_cast<int>(std::ceil(qv1 - 0.5)));
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const bool all_in = inside_oriented(q, x - 0.5, y - 0.5) && inside_oriented(q, x + 0.5, y - 0.5) &&
                              inside_oriented(q, x + 0.5, y + 0.5) && inside_oriented(q, x - 0.5, y + 0.5);
          const double a = all_in ? 1.0 : coverage_oriented(q, x, y);
          float& dst = alpha.at(x - touched.x0, y - touched.y0);
          if (a > 0.0) dst = static_cast<float>(std::min(1.0, dst + a));
        }
      }
    }
    for (int y = touched.y0; y <= touched.y1; ++y) {
      for (int x = touched.x0; x <= touched.x1; ++x) {
        const double a = alpha.at(x - touched.x0, y - touched.y0);
        if (a <= 0.0) continue;
        Hsv& px = result.image.at(x, y);
        px.h = style.cue.h;
        px.s = to_u8(style.background.s + a * (style.cue.s - style.background.s));
        px.v = to_u8(style.background.v + a * (style.cue.v - style.background.v));
      }
    }
  }

  if (style.noise_sigma > 0.0 && rng != nullptr && !touched.empty()) {
    const int m = style.noise_margin_px;
    const int x0 = std::max(0, touched.x0 - m);
    const int x1 = std::min(camera.width - 1, touched.x1 + m);
    const int y0 = std::max(0, touched.y0 - m);
    const int y1 = std::min(camera.height - 1, touched.y1 + m);
    std::normal_distribution<double> noise(0.0, style.noise_sigma);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        Hsv& px = result.image.at(x, y);
        px.s = to_u8(px.s + noise(*rng));
        px.v = to_u8(px.v + noise(*rng));
      }
    }
  }
  return result;
}

}  // namespace shipland
