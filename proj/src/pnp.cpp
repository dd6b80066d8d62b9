#include "shipland/pnp.hpp"

#include <cmath>
#include <limits>

#include "shipland/error.hpp"

namespace shipland {
namespace {

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

Mat3 exp_so3(const Vec3& w) {
  const double theta = w.norm();
  if (theta < 1e-12) return Mat3::Identity() + skew(w);
  return Eigen::AngleAxisd(theta, w / theta).toRotationMatrix();
}

// Normalising similarity: centroid to origin, mean distance sqrt(2).
Eigen::Matrix3d normaliser(const std::vector<Eigen::Vector2d>& pts) {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  double dist = 0.0;
  for (const auto& p : pts) dist += (p - mean).norm();
  dist /= static_cast<double>(pts.size());
  const double s = dist > 0.0 ? std::sqrt(2.0) / dist : 1.0;
  Eigen::Matrix3d t;
  t << s, 0, -s * mean.x(), 0, s, -s * mean.y(), 0, 0, 1;
  return t;
}

bool collinear(const std::vector<Eigen::Vector2d>& pts) {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(cov).eigenvalues();
  return !(ev(1) > 0.0) || ev(0) <= 1e-12 * ev(1);
}

double squared_norm_or_inf(const Eigen::VectorXd& r) {
  const double c = r.squaredNorm();
  return std::isfinite(c) ? c : std::numeric_limits<double>::infinity();
}

bool all_in_front(const Pose& pose, const std::vector<Vec3>& object_points) {
  for (const auto& x : object_points) {
    if (!(pose.apply(x).z() > 0.0)) return false;
  }
  return true;
}

}  // namespace

Eigen::VectorXd reprojection_residual(const Pose& pose, const std::vector<Vec3>& object_points,
                                      const std::vector<Pixel>& image_points, const CameraModel& camera) {
  Eigen::VectorXd r(2 * object_points.size());
  for (std::size_t i = 0; i < object_points.size(); ++i) {
    const Vec3 p = pose.apply(object_points[i]);
    r(2 * i) = image_points[i].u - (camera.cx + camera.focal_px * p.x() / p.z());
    r(2 * i + 1) = image_points[i].v - (camera.cy + camera.focal_px * p.y() / p.z());
  }
  return r;
}

Eigen::MatrixXd projection_jacobian(const Pose& pose, const std::vector<Vec3>& object_points,
                                    const CameraModel& camera) {
  Eigen::MatrixXd j(2 * object_points.size(), 6);
  const double f = camera.focal_px;
  for (std::size_t i = 0; i < object_points.size(); ++i) {
    const Vec3 rx = pose.rotation() * object_points[i];
    const Vec3 p = rx + pose.position();
    const double iz = 1.0 / p.z();
    Eigen::Matrix<double, 2, 3> dpix;
    dpix << f * iz, 0.0, -f * p.x() * iz * iz, 0.0, f * iz, -f * p.y() * iz * iz;
    j.block<2, 3>(2 * i, 0) = dpix * (-skew(rx));
    j.block<2, 3>(2 * i, 3) = dpix;
  }
  return j;
}

Pose apply_increment(const Pose& pose, const Eigen::Matrix<double, 6, 1>& delta) {
  return {exp_so3(delta.head<3>()) * pose.rotation(), pose.position() + delta.tail<3>()};
}

Pose homography_seed(const std::vector<Vec3>& object_points, const std::vector<Pixel>& image_points,
                     const CameraModel& camera) {
  const std::size_t n = object_points.size();
  std::vector<Eigen::Vector2d> obj(n), img(n);
  for (std::size_t i = 0; i < n; ++i) {
    obj[i] = object_points[i].head<2>();
    img[i] = {(image_points[i].u - camera.cx) / camera.focal_px, (image_points[i].v - camera.cy) / camera.focal_px};
  }
  const Eigen::Matrix3d to = normaliser(obj);
  const Eigen::Matrix3d ti = normaliser(img);

  Eigen::MatrixXd a(2 * n, 9);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d x = to * Eigen::Vector3d(obj[i].x(), obj[i].y(), 1.0);
    const Eigen::Vector3d y = ti * Eigen::Vector3d(img[i].x(), img[i].y(), 1.0);
    a.row(2 * i) << x.transpose(), Eigen::RowVector3d::Zero(), -y.x() * x.transpose();
    a.row(2 * i + 1) << Eigen::RowVector3d::Zero(), x.transpose(), -y.y() * x.transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd h = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
  Eigen::Matrix3d hm = ti.inverse() * hn * to;

  const double n1 = hm.col(0).norm();
  const double n2 = hm.col(1).norm();
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw Error(ErrorCode::DegenerateConfiguration, "degenerate homography");
  double lambda = 2.0 / (n1 + n2);
  if (hm(2, 2) * lambda < 0.0) lambda = -lambda;
  const Vec3 r1 = lambda * hm.col(0);
  const Vec3 r2 = lambda * hm.col(1);
  Mat3 r;
  r << r1, r2, r1.cross(r2);
  Eigen::JacobiSVD<Mat3> rsvd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 rot = rsvd.matrixU() * rsvd.matrixV().transpose();
  if (rot.determinant() < 0.0) {
    Mat3 d = Mat3::Identity();
    d(2, 2) = -1.0;
    rot = rsvd.matrixU() * d * rsvd.matrixV().transpose();
  }
  return {rot, lambda * hm.col(2)};
}

PnPResult solve_pnp(const std::vector<Pixel>& image_points, const std::vector<Vec3>& object_points,
                    const CameraModel& camera, const std::optional<Pose>& initial_guess, const PnPOptions& opt) {
  if (image_points.size() != object_points.size()) {
    throw Error(ErrorCode::TooFewPoints, "image and object point counts differ");
  }
  if (object_points.size() < 4) {
    throw Error(ErrorCode::TooFewPoints, std::to_string(object_points.size()) + " correspondences");
  }
  std::vector<Eigen::Vector2d> planar, pixels;
  for (const auto& p : object_points) {
    if (std::abs(p.z()) > 1e-9) throw Error(ErrorCode::DegenerateConfiguration, "object points must lie on z = 0");
    planar.emplace_back(p.x(), p.y());
  }
  for (const auto& p : image_points) pixels.emplace_back(p.u, p.v);
  if (collinear(planar) || collinear(pixels)) {
    throw Error(ErrorCode::DegenerateConfiguration, "points are collinear");
  }

  PnPResult result;
  Pose pose = initial_guess ? *initial_guess : homography_seed(object_points, image_points, camera);
  if (!all_in_front(pose, object_points)) {
    throw Error(ErrorCode::DegenerateConfiguration, "initial pose puts points behind the camera");
  }
  Eigen::VectorXd r = reprojection_residual(pose, object_points, image_points, camera);
  double cost = squared_norm_or_inf(r);
  result.cost_history.push_back(cost);
  double lambda = opt.initial_lambda;
  double nu = 2.0;

  if (cost == 0.0) result.converged = true;
  while (!result.converged && result.iterations < opt.max_iterations) {
    ++result.iterations;
    const Eigen::MatrixXd jr = -projection_jacobian(pose, object_points, camera);
    const Eigen::Matrix<double, 6, 6> jtj = jr.transpose() * jr;
    const Eigen::Matrix<double, 6, 1> g = jr.transpose() * r;
    Eigen::Matrix<double, 6, 6> damped = jtj;
    damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
    const Eigen::Matrix<double, 6, 1> step = damped.ldlt().solve(-g);
    const Pose trial = apply_increment(pose, step);
    double trial_cost = std::numeric_limits<double>::infinity();
    Eigen::VectorXd trial_r;
    if (all_in_front(trial, object_points)) {
      trial_r = reprojection_residual(trial, object_points, image_points, camera);
      trial_cost = squared_norm_or_inf(trial_r);
    }
    const double predicted = -(2.0 * g.dot(step) + step.dot(jtj * step));
    if (trial_cost < cost) {
      const double rel = (cost - trial_cost) / cost;
      const double rho = predicted > 0.0 ? (cost - trial_cost) / predicted : 1.0;
      pose = trial;
      r = trial_r;
      cost = trial_cost;
      result.cost_history.push_back(cost);
      lambda = std::max(lambda * std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3)), 1e-15);
      nu = 2.0;
      if (step.norm() < opt.step_tolerance || rel < opt.cost_tolerance) result.converged = true;
    } else {
      lambda *= nu;
      nu *= 2.0;
      // A rejected step this small means we already sit at the minimum.
      if (step.norm() < opt.step_tolerance || predicted <= opt.cost_tolerance * cost) result.converged = true;
    }
  }
  result.pose = pose;
  result.rms_residual_px = std::sqrt(cost / static_cast<double>(object_points.size()));
  return result;
}

}  // namespace shipland
