#pragma once

#include <optional>
#include <random>

#include "shipland/geometry.hpp"

namespace shipland {

enum class ObjectClass { Ship, Bar };

const char* to_string(ObjectClass c);

struct Detection {
  ObjectClass object = ObjectClass::Ship;
  Pixel center;
  double area_px = 0.0;
  double timestamp = 0.0;
};

/// A flat rectangular target. The pose maps the target's planar frame
/// (X right, Y up, Z towards the viewer) into the world.
struct DetectionTarget {
  ObjectClass object = ObjectClass::Ship;
  Pose pose;
  double width_m = 1.8;
  double height_m = 1.8;

  double area() const { return width_m * height_m; }
};

struct DetectorParams {
  double ship_reference_range_m = 250.0;
  double ship_reference_area_m2 = 1.8 * 1.8;
  double bar_reference_range_m = 100.0;
  double bar_reference_area_m2 = 1.10 * 0.10;
  double center_noise_px = 2.0;
  /// Relative standard deviation of the reported box area.
  double area_noise = 0.05;
};

/// Detection range grows linearly with the target's physical area.
double max_detection_range(ObjectClass object, double physical_area_m2, const DetectorParams& params = {});

/// Range-gated bounding-box detector. Returns nothing when the target is out
/// of range, behind the camera, or its box centre falls outside the image.
/// With `rng` null the output is noise-free.
std::optional<Detection> mock_detect(const DetectionTarget& target, const Pose& camera_pose, const CameraModel& camera,
                                     double timestamp, const DetectorParams& params = {},
                                     std::mt19937_64* rng = nullptr);

}  // namespace shipland
