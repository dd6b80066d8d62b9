#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "shipland/geometry.hpp"

namespace shipland {

struct PnPOptions {
  int max_iterations = 100;
  double initial_lambda = 1e-3;
  double step_tolerance = 1e-8;
  double cost_tolerance = 1e-6;
};

struct PnPResult {
  Pose pose;  // maps cue-frame points into the camera optical frame
  double rms_residual_px = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Cost after every accepted step, starting with the initial cost.
  std::vector<double> cost_history;
};

/// Stacked reprojection residuals (observed - projected), two per point.
Eigen::VectorXd reprojection_residual(const Pose& pose, const std::vector<Vec3>& object_points,
                                      const std::vector<Pixel>& image_points, const CameraModel& camera);

/// Jacobian of the projected pixels with respect to a left-multiplicative
/// rotation increment (first three columns) and the translation (last three).
/// The residual Jacobian is the negative of this.
Eigen::MatrixXd projection_jacobian(const Pose& pose, const std::vector<Vec3>& object_points,
                                    const CameraModel& camera);

/// Applies a left-multiplicative update exp([w]x) R, t + dt.
Pose apply_increment(const Pose& pose, const Eigen::Matrix<double, 6, 1>& delta);

/// Pose from the normalised DLT homography between the z = 0 object plane
/// and the image. Throws DegenerateConfiguration.
Pose homography_seed(const std::vector<Vec3>& object_points, const std::vector<Pixel>& image_points,
                     const CameraModel& camera);

/// Levenberg-Marquardt minimisation of the squared reprojection error over
/// coplanar object points (z = 0). Throws TooFewPoints for fewer than four
/// correspondences and DegenerateConfiguration for collinear points; running
/// out of iterations is reported through `converged`.
PnPResult solve_pnp(const std::vector<Pixel>& image_points, const std::vector<Vec3>& object_points,
                    const CameraModel& camera, const std::optional<Pose>& initial_guess = std::nullopt,
                    const PnPOptions& options = {});

}  // namespace shipland
