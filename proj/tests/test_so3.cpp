#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nhdmp/errors.hpp"
#include "nhdmp/so3.hpp"
#include "oracles.hpp"

using namespace nhdmp;
using std::numbers::pi;

TEST_SUITE("so3") {

TEST_CASE("hat matches the cross-product matrix") {
  Mat3 expect;
  expect << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  CHECK(so3::hat(Vec3(0, 0, 1)) == expect);
  CHECK(so3::hat(Vec3::Zero()) == Mat3::Zero());
  expect << 0, -3, 2, 3, 0, -1, -2, 1, 0;
  CHECK(so3::hat(Vec3(1, 2, 3)) == expect);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Vec3 w = oracle::random_vec(rng, 5.0);
    const Vec3 v = oracle::random_vec(rng, 5.0);
    const Mat3 K = so3::hat(w);
    CHECK((K + K.transpose()) == Mat3::Zero());
    CHECK((K * v - w.cross(v)).norm() < 1e-14);
    CHECK(so3::vee(K) == w);
  }
}

TEST_CASE("exp_map special values") {
  CHECK(so3::exp_map(Vec3::Zero(), 1.0) == Mat3::Identity());
  Mat3 quarter;
  quarter << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((so3::exp_map(Vec3(0, 0, pi / 2), 1.0) - quarter).norm() < 1e-15);
}

TEST_CASE("exp_map agrees with the matrix power series") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Vec3 w = oracle::random_unit(rng);
    const Mat3 series = oracle::matrix_exp_series(oracle::cross_matrix(w) * 0.37);
    CHECK((so3::exp_map(w, 0.37) - series).norm() < 1e-12);
  }
}

TEST_CASE("exp_map small-angle branch is continuous") {
  const Vec3 axis = Vec3(1, -2, 0.5).normalized();
  for (double th : {1e-12, 5e-9, 9.9e-9, 1.01e-8, 1e-7}) {
    const Mat3 series = oracle::matrix_exp_series(oracle::cross_matrix(axis * th));
    CHECK((so3::exp_map(axis, th) - series).norm() < 1e-15);
  }
}

TEST_CASE("exp_map output is a rotation") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Vec3 w = oracle::random_vec(rng, 50.0);
    CHECK(so3::orthonormality_error(so3::exp_map(w, 0.1)) < 1e-12);
  }
}

TEST_CASE("log_map special values") {
  CHECK(so3::log_map(Mat3::Identity()) == Vec3::Zero());
  Mat3 quarter;
  quarter << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((so3::log_map(quarter) - Vec3(0, 0, pi / 2)).norm() < 1e-15);
}

TEST_CASE("log_map round trip") {
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Mat3 R = oracle::random_rotation(rng, 0.0, pi - 0.01);
    worst = std::max(worst, (so3::exp_map(so3::log_map(R), 1.0) - R).norm());
  }
  CHECK(worst < 1e-9);

  // Tiny angles keep full relative precision.
  const Vec3 tiny(3e-10, -1e-10, 2e-10);
  CHECK((so3::log_map(so3::exp_map(tiny)) - tiny).norm() < 1e-22);
}

TEST_CASE("log_map refuses angles near pi") {
  const Mat3 R = Eigen::AngleAxisd(pi - 1e-7, Vec3::UnitX()).toRotationMatrix();
  CHECK_THROWS_AS(so3::log_map(R), NearPiSingularity);
  const Mat3 ok = Eigen::AngleAxisd(pi - 1e-5, Vec3::UnitX()).toRotationMatrix();
  CHECK((so3::exp_map(so3::log_map(ok)) - ok).norm() < 1e-9);
}

TEST_CASE("project returns the closest rotation") {
  std::mt19937_64 rng(5);
  const Mat3 R = oracle::random_rotation(rng);
  CHECK((so3::project(R) - R).norm() < 1e-14);
  Mat3 noisy = R;
  noisy(0, 1) += 1e-6;
  noisy(2, 2) -= 2e-6;
  const Mat3 P = so3::project(noisy);
  CHECK(so3::orthonormality_error(P) < 1e-14);
  CHECK((P - R).norm() < 3e-6);
}

}  // TEST_SUITE
