// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "nhdmp/dmp.hpp"
#include "nhdmp/filter.hpp"
#include "nhdmp/orient_opt.hpp"
#include "nhdmp/pipeline.hpp"
#include "nhdmp/so3.hpp"
#include "nhdmp/uk_constraint.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace nhdmp;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const PoseTrajectory& demo() {
  static const PoseTrajectory d = gen_numerical_demo(1e-3, 1.0);
  return d;
}

DmpModel numerical_model() {
  DmpGains g;
  g.tau = 1.0;
  g.alpha_x = 25.0;
  g.beta_x = 6.25;
  g.alpha_s = 1.0;
  return train(demo(), 100, g);
}

Outcome so3_round_trip() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Mat3 R = oracle::random_rotation(rng, 1e-6, pi - 0.01);
    worst = std::max(worst, (so3::exp_map(so3::log_map(R)) - R).norm());
  }
  return {worst < 1e-9, "max |exp(log R) - R|_F = " + num(worst)};
}

Outcome uk_vs_kkt() {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int m = 1 + i % 3;
    const int n = 3 + (i / 3) % 4;
    GeneralConstraint gc{Eigen::MatrixXd(m, n), Eigen::VectorXd(m)};
    Eigen::VectorXd f(n);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) gc.A(r, c) = n01(rng);
    for (int r = 0; r < m; ++r) gc.b(r) = n01(rng);
    for (int c = 0; c < n; ++c) f(c) = n01(rng);
    const Eigen::VectorXd got = uk_force(gc, f);
    const Eigen::VectorXd want = oracle::kkt_correction(gc.A, gc.b, f);
    worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-9, "max |f_con - kkt| = " + num(worst)};
}

Outcome imitation() {
  const Rollout r = rollout(numerical_model(), RolloutMode::Nominal, {}, 1e-3, 1.0);
  const Vec3 pos = position_rmse(r.trajectory, demo());
  const Vec3 eul = euler_rmse(r.trajectory, demo());
  return {pos.maxCoeff() < 1e-2 && eul.maxCoeff() < 2e-2,
          "position rmse [" + num(pos(0)) + ", " + num(pos(1)) + ", " + num(pos(2)) +
              "] m, euler rmse [" + num(eul(0)) + ", " + num(eul(1)) + ", " +
              num(eul(2)) + "] rad"};
}

Outcome constraint_guarantee() {
  const DmpModel m = numerical_model();
  const Rollout con = rollout(m, RolloutMode::Constrained, {}, 1e-3, 1.0);
  const Rollout nom = rollout(m, RolloutMode::Nominal, {}, 1e-3, 1.0);
  const double vc = con.max_abs_violation();
  const double vn = nom.max_abs_violation();
  return {con.states.size() == 1001 && vc < 1e-5 && vn > 0.1,
          "constrained max|c'p_dot| = " + num(vc) + ", nominal = " + num(vn) + " m/s"};
}

Outcome optimized() {
  const DmpModel m = numerical_model();
  const Rollout opt = rollout(m, RolloutMode::Optimized, {}, 1e-3, 1.0);
  const Rollout con = rollout(m, RolloutMode::Constrained, {}, 1e-3, 1.0);
  const Vec3 eo = position_rmse(opt.trajectory, demo());
  const Vec3 ec = position_rmse(con.trajectory, demo());
  const double v = opt.max_abs_violation();
  const double f = opt.max_fcon_norm();
  const bool ok = v < 1e-5 && f < 1e-4 && eo.maxCoeff() < 2e-2 && eo(0) < ec(0) && eo(1) < ec(1);
  return {ok, "max|c'p_dot| = " + num(v) + ", max|f_con| = " + num(f) + ", rmse [" +
                  num(eo(0)) + ", " + num(eo(1)) + ", " + num(eo(2)) +
                  "] vs constrained [" + num(ec(0)) + ", " + num(ec(1)) + "]"};
}

Outcome initial_projection() {
  std::mt19937_64 rng(6);
  const ConstraintSpec spec;
  double viol = 0.0, idem = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Mat3 R = oracle::random_rotation(rng);
    const Vec3 v = oracle::random_vec(rng, 2.0);
    const Vec3 p = project_initial_velocity(spec, R, v);
    viol = std::max(viol, std::abs((R * Vec3::UnitY()).dot(p)));
    idem = std::max(idem, (project_initial_velocity(spec, R, p) - p).norm());
  }
  return {viol < 1e-12 && idem < 1e-12,
          "max |c'p_dot0'| = " + num(viol) + ", idempotence " + num(idem)};
}

Outcome gradient_check() {
  std::mt19937_64 rng(7);
  const OptimizerConfig cfg;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    OrientationProblem pb;
    pb.R_prev = oracle::random_rotation(rng);
    pb.R_nominal = Eigen::AngleAxisd(0.05, oracle::random_unit(rng)) * pb.R_prev;
    pb.p_dot = oracle::random_vec(rng, 1.0);
    pb.p_ddot_unc = oracle::random_vec(rng, 10.0);
    const Vec3 w = oracle::random_vec(rng, 5.0);
    const Vec3 g = loss_gradient(pb, w, cfg.grad_eps, cfg);
    const Vec3 fine = loss_gradient(pb, w, cfg.grad_eps / 10.0, cfg);
    worst = std::max(worst, (g - fine).norm() / fine.norm());
  }
  return {worst < 1e-3, "max relative difference " + num(worst)};
}

Outcome filter_design() {
  const IirCoefficients c = butterworth_lowpass(3, 4.8, 120.0);
  const oracle::Coefficients o = oracle::butterworth_zpk(3, 4.8, 120.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    worst = std::max(worst, std::abs(c.b[i] - o.b[i]));
    worst = std::max(worst, std::abs(c.a[i] - o.a[i]));
  }
  const double dc = std::abs(dc_gain(c) - 1.0);
  return {c.b.size() == 4 && c.a.size() == 4 && worst < 1e-9 && dc < 1e-12,
          "max coefficient difference " + num(worst) + ", |DC gain - 1| = " + num(dc)};
}

Outcome consistency() {
  std::mt19937_64 rng(9);
  double dev = 0.0, worst_loss = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const PoseTrajectory d = synthetic::planar_demo(synthetic::random_planar(rng));
    const DmpModel m = train(d, 100);
    const Rollout nom = rollout(m, RolloutMode::Nominal, {}, 1e-3, 1.0);
    const Rollout con = rollout(m, RolloutMode::Constrained, {}, 1e-3, 1.0);
    const Rollout opt = rollout(m, RolloutMode::Optimized, {}, 1e-3, 1.0);
    for (std::size_t k = 0; k < nom.states.size(); ++k) {
      dev = std::max(dev, (nom.states[k].p - con.states[k].p).cwiseAbs().maxCoeff());
      dev = std::max(dev, (nom.states[k].R - con.states[k].R).cwiseAbs().maxCoeff());
    }
    for (const auto& dg : opt.diagnostics) worst_loss = std::max(worst_loss, dg.loss);
  }
  return {dev < 1e-6 && worst_loss < 1e-8,
          "max nominal/constrained deviation " + num(dev) + ", max optimized loss " +
              num(worst_loss)};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // s, 0 = none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "SO(3) exp/log round trip", 1.0, so3_round_trip},
      {2, "constraint force matches KKT solution", 1.0, uk_vs_kkt},
      {3, "nominal imitation of the numerical example", 10.0, imitation},
      {4, "constrained rollout keeps c'p_dot = 0", 10.0, constraint_guarantee},
      {5, "optimized rollout", 60.0, optimized},
      {6, "initial velocity projection", 0.0, initial_projection},
      {7, "finite-difference gradient", 0.0, gradient_check},
      {8, "Butterworth design", 0.0, filter_design},
      {9, "constraint-satisfying demonstration", 0.0, consistency},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.time_limit <= 0.0 || secs < c.time_limit;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s [%d] %s: %s (%.3f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs,
                in_time ? "" : (", limit " + num(c.time_limit) + " s").c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
