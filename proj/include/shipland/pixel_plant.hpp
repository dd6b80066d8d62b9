#pragma once

#include <functional>
#include <vector>

namespace shipland {

/// Single-axis closed loop: a lateral offset seen in the image at a fixed
/// range, a first-order vehicle, and a delayed, sampled measurement.
struct PixelPlantParams {
  double range_m = 50.0;
  double focal_px = 930.0;
  double initial_error_px = 300.0;
  double update_s = 0.5;
  double latency_s = 0.5;
  double duration_s = 60.0;
  double dt = 0.01;
  double tau_s = 0.3;
  double v_max = 5.0;
  /// Fraction of the run treated as transient when measuring the tail.
  double transient_fraction = 0.5;
};

struct PixelPlantTrace {
  std::vector<double> t;
  std::vector<double> error_px;
  /// Half the peak-to-peak error over the tail.
  double tail_amplitude_px = 0.0;
  double tail_mean_px = 0.0;
};

/// `controller` maps a pixel error to a percent command that drives the
/// error towards zero. Throws ConfigInvalid on non-positive timing values.
PixelPlantTrace run_pixel_plant(const std::function<double(double)>& controller, const PixelPlantParams& params = {});

}  // namespace shipland
