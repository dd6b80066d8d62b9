#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "scenes.hpp"
#include "shipland/error.hpp"
#include "shipland/kalman.hpp"
#include "shipland/pnp.hpp"
#include "shipland/relative_state.hpp"

using namespace shipland;
using doctest::Approx;

namespace {

struct Observation {
  Pose truth;  // cue frame to camera frame
  std::vector<Vec3> object;
  std::vector<Pixel> image;
};

Observation observe(const scenes::CloseRangeScene& scene, const CameraModel& camera = {}, double noise_px = 0.0,
                    std::mt19937_64* rng = nullptr) {
  Observation o;
  o.truth = compose(inverse(scene.camera), scene.cue);
  const auto pts = CueSpec{}.object_points();
  o.object.assign(pts.begin(), pts.end());
  std::normal_distribution<double> n(0.0, 1.0);
  for (const Vec3& p : o.object) {
    Pixel px = project_camera_point(camera, o.truth.apply(p));
    if (rng) {
      px.u += noise_px * n(*rng);
      px.v += noise_px * n(*rng);
    }
    o.image.push_back(px);
  }
  return o;
}

double rotation_error_deg(const Mat3& a, const Mat3& b) {
  const Eigen::AngleAxisd d(a.transpose() * b);
  return rad2deg(std::abs(d.angle()));
}

PnPResult converged_at(const Pose& pose) {
  PnPResult r;
  r.pose = pose;
  r.converged = true;
  return r;
}

// Cue facing the camera head-on: cue X along optical x, cue Y and Z opposite
// to optical y and z.
Pose head_on(const Vec3& position) { return {Vec3(1.0, -1.0, -1.0).asDiagonal().toDenseMatrix(), position}; }

}  // namespace

TEST_SUITE("pose") {
  TEST_CASE("noiseless projections are recovered exactly") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
      const auto obs = observe(scenes::random_scene(rng, 1.0, 10.0, 20.0));
      const PnPResult r = solve_pnp(obs.image, obs.object, CameraModel{});
      CHECK(r.converged);
      CHECK((r.pose.position() - obs.truth.position()).norm() < 1e-6);
      CHECK(rotation_error_deg(r.pose.rotation(), obs.truth.rotation()) < 1e-6);
      CHECK(r.rms_residual_px < 1e-8);
    }
  }

  TEST_CASE("analytic Jacobian matches central differences") {
    std::mt19937_64 rng(22);
    const CameraModel camera;
    std::normal_distribution<double> n(0.0, 0.05);
    for (int trial = 0; trial < 100; ++trial) {
      auto obs = observe(scenes::random_scene(rng, 1.0, 10.0, 20.0));
      // Move off the scene's own pose so rotation terms are exercised.
      Eigen::Matrix<double, 6, 1> jitter;
      for (int k = 0; k < 6; ++k) jitter[k] = n(rng);
      const Pose pose = apply_increment(obs.truth, jitter);
      const std::vector<Pixel> zeros(obs.object.size());
      auto projected = [&](const Pose& p) { return Eigen::VectorXd(-reprojection_residual(p, obs.object, zeros, camera)); };
      const Eigen::MatrixXd j = projection_jacobian(pose, obs.object, camera);
      Eigen::MatrixXd fd(j.rows(), j.cols());
      const double h = 1e-6;
      for (int k = 0; k < 6; ++k) {
        Eigen::Matrix<double, 6, 1> d = Eigen::Matrix<double, 6, 1>::Zero();
        d[k] = h;
        fd.col(k) = (projected(apply_increment(pose, d)) - projected(apply_increment(pose, -d))) / (2.0 * h);
      }
      CHECK((fd - j).norm() / j.norm() < 1e-5);
    }
  }

  TEST_CASE("cost history never increases") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
      const auto obs = observe(scenes::random_scene(rng, 1.0, 10.0, 20.0), {}, 1.0, &rng);
      const PnPResult r = solve_pnp(obs.image, obs.object, CameraModel{});
      REQUIRE_FALSE(r.cost_history.empty());
      for (std::size_t i = 1; i < r.cost_history.size(); ++i) CHECK(r.cost_history[i] <= r.cost_history[i - 1]);
    }
  }

  TEST_CASE("noisy solves converge within the iteration budget") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 300; ++trial) {
      const auto obs = observe(scenes::random_scene(rng, 1.0, 5.0, 20.0), {}, 0.5, &rng);
      const PnPResult r = solve_pnp(obs.image, obs.object, CameraModel{});
      CHECK(r.converged);
      CHECK(r.iterations < PnPOptions{}.max_iterations);
    }
  }

  TEST_CASE("scaling focal length and pixels together leaves the pose unchanged") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 30; ++trial) {
      const auto obs = observe(scenes::random_scene(rng, 1.0, 10.0, 20.0), {}, 0.5, &rng);
      const PnPResult a = solve_pnp(obs.image, obs.object, CameraModel{});
      for (double k : {0.5, 2.0, 3.7}) {
        CameraModel scaled;
        scaled.focal_px *= k;
        scaled.cx *= k;
        scaled.cy *= k;
        std::vector<Pixel> img = obs.image;
        for (Pixel& p : img) p = {p.u * k, p.v * k};
        const PnPResult b = solve_pnp(img, obs.object, scaled);
        CHECK((a.pose.position() - b.pose.position()).norm() < 1e-9);
        CHECK((a.pose.rotation() - b.pose.rotation()).norm() < 1e-9);
      }
    }
  }

  TEST_CASE("too few points and degenerate layouts are rejected") {
    const auto obs = observe(scenes::CloseRangeScene{camera_pose_world(Vec3(-3.0, 0.0, 1.6), 0.0),
                                                     cue_pose_world(bar_pose(ShipState{}, DeckState{}))});
    try {
      solve_pnp({obs.image.begin(), obs.image.begin() + 3}, {obs.object.begin(), obs.object.begin() + 3}, {});
      FAIL("expected TooFewPoints");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooFewPoints);
    }
    const std::vector<Vec3> line{Vec3(0, 0, 0), Vec3(0.1, 0, 0), Vec3(0.2, 0, 0), Vec3(0.3, 0, 0)};
    const std::vector<Pixel> px{{600, 360}, {620, 360}, {640, 360}, {660, 360}};
    try {
      solve_pnp(px, line, {});
      FAIL("expected DegenerateConfiguration");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateConfiguration);
    }
  }

  TEST_CASE("cue straight ahead gives an axis-aligned relative state") {
    const RelativeState s = pose_to_relative_state(converged_at(head_on({0.0, 0.0, 4.0})), std::nullopt, 0.0);
    CHECK(s.x == Approx(4.0));
    CHECK(s.y == Approx(0.0));
    CHECK(s.z == Approx(0.0));
    CHECK(s.yaw_deg == Approx(0.0));
    CHECK(s.v_x == 0.0);
    CHECK(s.v_y == 0.0);
  }

  TEST_CASE("relative state axes") {
    // Cue to the right of and above the camera.
    const RelativeState s = pose_to_relative_state(converged_at(head_on({0.5, -0.3, 4.0})), std::nullopt, 0.0);
    CHECK(s.y == Approx(0.5));
    CHECK(s.z == Approx(0.3));
  }

  TEST_CASE("relative yaw follows the vehicle heading") {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 50; ++trial) {
      const auto scene = scenes::random_scene(rng, 2.0, 8.0, 25.0);
      const auto obs = observe(scene);
      const RelativeState s = pose_to_relative_state(converged_at(obs.truth), std::nullopt, 0.0);
      CHECK(s.yaw_deg == Approx(-scene.rel_yaw_deg).epsilon(1e-9));
      CHECK(s.x > 0.0);
    }
  }

  TEST_CASE("finite-difference velocity") {
    const auto prev = pose_to_relative_state(converged_at(head_on({0.0, 0.0, 5.0})), std::nullopt, 1.0);
    const auto cur = pose_to_relative_state(converged_at(head_on({0.0, 0.0, 4.7})), prev, 1.03);
    CHECK(cur.v_x == Approx(-10.0));
    CHECK(cur.v_y == Approx(0.0));
  }

  TEST_CASE("relative state preconditions") {
    PnPResult r = converged_at(head_on({0.0, 0.0, 4.0}));
    const auto prev = pose_to_relative_state(r, std::nullopt, 1.0);
    CHECK_THROWS_AS(pose_to_relative_state(r, prev, 1.0), Error);
    r.converged = false;
    try {
      pose_to_relative_state(r, std::nullopt, 2.0);
      FAIL("expected NotConverged");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotConverged);
    }
  }

  TEST_CASE("pad offset from a head-on view") {
    RelativeState s;
    s.x = 2.0;
    const PadOffset pad = pad_offset(s, 2.0);
    CHECK(pad.forward == Approx(0.0));
    CHECK(pad.left == Approx(0.0));
    CHECK(landing_trigger(s, 2.0));
    s.x = 2.5;
    s.y = 0.1;  // bar to the right, so the vehicle sits to port of the pad
    const PadOffset aft = pad_offset(s, 2.0);
    CHECK(aft.forward == Approx(-0.5));
    CHECK(aft.left == Approx(0.1));
    CHECK_FALSE(landing_trigger(s, 2.0));
  }

  TEST_CASE("kalman zero innovation leaves the estimate unchanged") {
    KalmanState k = kalman_update(make_kalman(), 12.5);
    for (int i = 0; i < 10; ++i) {
      k = kalman_update(k, 12.5);
      CHECK(k.ce == 12.5);
    }
  }

  TEST_CASE("kalman converges monotonically to a constant measurement") {
    KalmanState k = kalman_update(make_kalman(), 0.0);
    double prev_gap = 10.0;
    for (int i = 0; i < 200; ++i) {
      k = kalman_update(k, 10.0);
      const double gap = 10.0 - k.ce;
      CHECK(gap >= 0.0);
      if (prev_gap > 1e-12) CHECK(gap < prev_gap);
      else CHECK(gap <= prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 1e-6);
  }

  TEST_CASE("kalman steady state matches fixed-point iteration") {
    const auto [kg, p] = oracle::kalman_fixed_point(0.005, 0.05);
    const KalmanSteadyState ss = kalman_steady_state(0.005, 0.05);
    CHECK(ss.gain == Approx(kg).epsilon(1e-9));
    CHECK(ss.covariance == Approx(p).epsilon(1e-9));
    CHECK(ss.gain == Approx(0.2702).epsilon(1e-3));
    CHECK(ss.covariance == Approx(0.01351).epsilon(1e-3));

    KalmanState k = kalman_update(make_kalman(), 0.0);
    for (int i = 0; i < 200; ++i) k = kalman_update(k, 0.0);
    CHECK(k.kg == Approx(kg).epsilon(1e-9));
    CHECK(k.p == Approx(p).epsilon(1e-9));
  }

  TEST_CASE("kalman gain stays in [0, 1]") {
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> logu(-6.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
      KalmanState k = make_kalman(std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng)));
      k.p = std::pow(10.0, logu(rng));
      k.initialized = true;
      for (int i = 0; i < 5; ++i) {
        k = kalman_update(k, logu(rng));
        CHECK(k.kg >= 0.0);
        CHECK(k.kg <= 1.0);
      }
    }
  }

  TEST_CASE("kalman halves the variance of white-noise measurements") {
    std::mt19937_64 rng(27);
    std::normal_distribution<double> noise(0.0, 1.0);
    KalmanState k = make_kalman();
    std::vector<double> in, out;
    for (int i = 0; i < 20000; ++i) {
      const double m = 5.0 + noise(rng);
      k = kalman_update(k, m);
      if (i < 100) continue;
      in.push_back(m);
      out.push_back(k.ce);
    }
    CHECK(oracle::sample_variance(out) / oracle::sample_variance(in) <= 0.5);
  }

  TEST_CASE("literal gain form adds the scaled measurement") {
    KalmanState k = kalman_update(make_kalman(), 2.0);
    const KalmanState lit = kalman_update(k, 2.0, true);
    CHECK(lit.ce == Approx(2.0 + lit.kg * 2.0));
  }

  TEST_CASE("invalid kalman noise is rejected") {
    CHECK_THROWS_AS(make_kalman(0.0, 0.05), Error);
    CHECK_THROWS_AS(make_kalman(0.005, -1.0), Error);
  }
}
