#pragma once

// Independent reference implementations used as test oracles. They are
// written from the textbook definitions and deliberately share no code with
// the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline double rad(double deg) { return deg * std::numbers::pi / 180.0; }

using M3 = std::array<std::array<double, 3>, 3>;
using V3 = std::array<double, 3>;

inline M3 mul(const M3& a, const M3& b) {
  M3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline V3 mul(const M3& a, const V3& v) {
  return {a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2], a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
          a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2]};
}

/// Z-Y-X rotation written out element by element.
inline M3 ypr(double yaw_deg, double pitch_deg, double roll_deg) {
  const double cy = std::cos(rad(yaw_deg)), sy = std::sin(rad(yaw_deg));
  const double cp = std::cos(rad(pitch_deg)), sp = std::sin(rad(pitch_deg));
  const double cr = std::cos(rad(roll_deg)), sr = std::sin(rad(roll_deg));
  const M3 rz{{{cy, -sy, 0}, {sy, cy, 0}, {0, 0, 1}}};
  const M3 ry{{{cp, 0, sp}, {0, 1, 0}, {-sp, 0, cp}}};
  const M3 rx{{{1, 0, 0}, {0, cr, -sr}, {0, sr, cr}}};
  return mul(rz, mul(ry, rx));
}

/// Pinhole projection of a camera-frame point (x right, y down, z forward).
inline std::array<double, 2> pinhole(double f, double cx, double cy, const V3& p) {
  return {cx + f * p[0] / p[2], cy + f * p[1] / p[2]};
}

/// Steady state of P' = (1 - K)(P + Q), K = (P + Q) / (P + Q + R) by plain iteration.
inline std::pair<double, double> kalman_fixed_point(double q, double r, int iterations = 100000) {
  double p = r, k = 0.0;
  for (int i = 0; i < iterations; ++i) {
    const double pre = p + q;
    k = pre / (pre + r);
    p = (1.0 - k) * pre;
  }
  return {k, p};
}

/// Brute-force square-window erosion/dilation; out-of-image pixels are ignored.
inline std::vector<std::uint8_t> morph(const std::vector<std::uint8_t>& m, int w, int h, int r, bool dilate) {
  std::vector<std::uint8_t> out(m.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool any = false, all = true;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          const int xx = x + dx, yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
          const bool v = m[static_cast<std::size_t>(yy) * w + xx] != 0;
          any = any || v;
          all = all && v;
        }
      out[static_cast<std::size_t>(y) * w + x] = dilate ? any : all;
    }
  return out;
}

struct Component {
  int x0, y0, x1, y1;
  std::size_t count;
};

/// 8-connected components by iterative depth-first search.
inline std::vector<Component> components(const std::vector<std::uint8_t>& m, int w, int h) {
  std::vector<int> label(m.size(), -1);
  std::vector<Component> out;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (!m[i] || label[i] >= 0) continue;
      Component c{x, y, x, y, 0};
      std::vector<std::pair<int, int>> stack{{x, y}};
      label[i] = static_cast<int>(out.size());
      while (!stack.empty()) {
        auto [px, py] = stack.back();
        stack.pop_back();
        ++c.count;
        c.x0 = std::min(c.x0, px), c.x1 = std::max(c.x1, px);
        c.y0 = std::min(c.y0, py), c.y1 = std::max(c.y1, py);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int qx = px + dx, qy = py + dy;
            if (qx < 0 || qy < 0 || qx >= w || qy >= h) continue;
            const std::size_t j = static_cast<std::size_t>(qy) * w + qx;
            if (m[j] && label[j] < 0) {
              label[j] = label[i];
              stack.emplace_back(qx, qy);
            }
          }
      }
      out.push_back(c);
    }
  return out;
}

inline double sample_variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace oracle
