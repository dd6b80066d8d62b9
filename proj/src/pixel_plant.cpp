#include "shipland/pixel_plant.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>

#include "shipland/control.hpp"
#include "shipland/error.hpp"

namespace shipland {

PixelPlantTrace run_pixel_plant(const std::function<double(double)>& controller, const PixelPlantParams& p) {
  if (!(p.dt > 0.0 && p.update_s > 0.0 && p.duration_s > 0.0 && p.tau_s > 0.0 && p.range_m > 0.0) ||
      p.latency_s < 0.0)
    throw Error(ErrorCode::ConfigInvalid, "pixel plant timing and range must be positive");

  const double alpha = 1.0 - std::exp(-p.dt / p.tau_s);
  double offset = p.initial_error_px * p.range_m / p.focal_px;
  double velocity = 0.0;
  double command = 0.0;
  double next_sample = 0.0;
  std::deque<std::pair<double, double>> pending;
  PixelPlantTrace trace;

  const auto steps = static_cast<long>(std::llround(p.duration_s / p.dt));
  for (long k = 0; k < steps; ++k) {
    const double t = k * p.dt;
    if (t >= next_sample - 1e-9) {
      pending.emplace_back(t + p.latency_s, p.focal_px * offset / p.range_m);
      next_sample += p.update_s;
    }
    while (!pending.empty() && pending.front().first <= t + 1e-9) {
      command = saturate(controller(pending.front().second));
      pending.pop_front();
    }
    velocity += (-command / 100.0 * p.v_max - velocity) * alpha;
    offset += velocity * p.dt;
    trace.t.push_back(t + p.dt);
    trace.error_px.push_back(p.focal_px * offset / p.range_m);
  }

  const auto first = trace.error_px.begin() + static_cast<long>(p.transient_fraction * trace.error_px.size());
  if (first != trace.error_px.end()) {
    const auto [lo, hi] = std::minmax_element(first, trace.error_px.end());
    trace.tail_amplitude_px = 0.5 * (*hi - *lo);
    double sum = 0.0;
    for (auto it = first; it != trace.error_px.end(); ++it) sum += *it;
    trace.tail_mean_px = sum / static_cast<double>(trace.error_px.end() - first);
  }
  return trace;
}

}  // namespace shipland
