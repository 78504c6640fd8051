#include "nhdmp/pipeline.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nhdmp/filter.hpp"

namespace nhdmp {
namespace {

constexpr double kPi = std::numbers::pi;

double demo_x(double t) {
  const double v = std::sin(kPi * t);
  return v * v;
}

double demo_y(double t) {
  const double v = std::sin(0.5 * kPi * t);
  return v * v * v;
}

double demo_yaw(double t) {
  double x = demo_x(t);
  double y = demo_y(t);
  // atan2(0, 0) is meaningless; approach the sample from the right until
  // the leading-order terms are resolvable.
  for (double h = 1e-12; x == 0.0 && y == 0.0 && h < 1e-3; h *= 10.0) {
    x = demo_x(t + h);
    y = demo_y(t + h);
  }
  return std::atan2(x, y);
}

std::vector<Vec3> second_derivative(std::span<const Vec3> x, double dt) {
  const std::size_t n = x.size();
  if (n < 4) throw std::invalid_argument("second derivative needs >= 4 samples");
  const double k = 1.0 / (dt * dt);
  std::vector<Vec3> a(n);
  a[0] = (2.0 * x[0] - 5.0 * x[1] + 4.0 * x[2] - x[3]) * k;
  for (std::size_t i = 1; i + 1 < n; ++i)
    a[i] = (x[i + 1] - 2.0 * x[i] + x[i - 1]) * k;
  a[n - 1] = (2.0 * x[n - 1] - 5.0 * x[n - 2] + 4.0 * x[n - 3] - x[n - 4]) * k;
  return a;
}

std::vector<Vec3> rotation_increments(const PoseTrajectory& traj) {
  std::vector<Vec3> d(traj.size() - 1);
  for (std::size_t k = 0; k + 1 < traj.size(); ++k)
    d[k] = so3::log_map(traj.samples[k + 1].R * traj.samples[k].R.transpose());
  return d;
}

std::vector<Vec3> filter_series(const IirCoefficients& c,
                                std::span<const Vec3> x, std::size_t padlen) {
  std::vector<Vec3> out(x.size());
  std::vector<double> col(x.size());
  for (int axis = 0; axis < 3; ++axis) {
    for (std::size_t k = 0; k < x.size(); ++k) col[k] = x[k](axis);
    const std::vector<double> f = filtfilt(c, col, padlen);
    for (std::size_t k = 0; k < x.size(); ++k) out[k](axis) = f[k];
  }
  return out;
}

std::vector<Vec3> positions(const PoseTrajectory& traj) {
  std::vector<Vec3> p(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) p[k] = traj.samples[k].p;
  return p;
}

}  // namespace

RigidTransform sensor_to_blade() {
  return {Mat3::Identity(), Vec3(0.052, 0.0, 0.013)};
}

PoseTrajectory gen_numerical_demo(double dt, double T) {
  if (!(dt > 0.0) || !(T > 0.0))
    throw std::invalid_argument("demo requires dt > 0 and T > 0");
  const auto n = static_cast<std::size_t>(std::llround(T / dt)) + 1;
  PoseTrajectory out;
  out.sample_rate = 1.0 / dt;
  out.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    auto& smp = out.samples[k];
    smp.t = t;
    smp.p = Vec3(demo_x(t), demo_y(t), 0.0);
    smp.R = euler_xyz_to_matrix(0.0, kPi / 4.0, demo_yaw(t));
  }
  return out;
}

PoseTrajectory apply_rigid_transform(const PoseTrajectory& traj,
                                     const RigidTransform& x) {
  PoseTrajectory out = traj;
  for (auto& s : out.samples) {
    s.p = s.p + s.R * x.t;
    s.R = s.R * x.R;
  }
  return out;
}

std::size_t default_padlen(std::size_t size, double cutoff_hz,
                           double sample_rate_hz) {
  const auto want =
      static_cast<std::size_t>(std::ceil(6.0 * sample_rate_hz / cutoff_hz));
  return size == 0 ? 0 : std::min(size - 1, want);
}

PoseTrajectory lowpass_filter(const PoseTrajectory& traj, double cutoff_hz,
                              int order) {
  traj.validate();
  const IirCoefficients c = butterworth_lowpass(order, cutoff_hz, traj.sample_rate);
  PoseTrajectory out = traj;

  const std::vector<Vec3> p = positions(traj);
  const auto pf =
      filter_series(c, p, default_padlen(p.size(), cutoff_hz, traj.sample_rate));
  for (std::size_t k = 0; k < p.size(); ++k) out.samples[k].p = pf[k];

  const std::vector<Vec3> inc = rotation_increments(traj);
  if (inc.size() >= 2) {
    const auto incf = filter_series(
        c, inc, default_padlen(inc.size(), cutoff_hz, traj.sample_rate));
    for (std::size_t k = 0; k < incf.size(); ++k)
      out.samples[k + 1].R = so3::exp_map(incf[k]) * out.samples[k].R;
  }
  return out;
}

std::vector<Vec3> differentiate(std::span<const Vec3> x, double dt) {
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("differentiation needs >= 3 samples");
  std::vector<Vec3> v(n);
  v[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * dt);
  for (std::size_t i = 1; i + 1 < n; ++i) v[i] = (x[i + 1] - x[i - 1]) / (2.0 * dt);
  v[n - 1] = (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]) / (2.0 * dt);
  return v;
}

std::vector<Vec3> angular_velocity(const PoseTrajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 3) throw std::invalid_argument("angular velocity needs >= 3 samples");
  const double dt = traj.dt();
  // Increment k is the mean rate over [t_k, t_{k+1}].
  std::vector<Vec3> d = rotation_increments(traj);
  for (auto& v : d) v /= dt;
  std::vector<Vec3> w(n);
  w[0] = 1.5 * d[0] - 0.5 * d[1];
  for (std::size_t k = 1; k + 1 < n; ++k) w[k] = 0.5 * (d[k - 1] + d[k]);
  w[n - 1] = 1.5 * d[n - 2] - 0.5 * d[n - 3];
  return w;
}

Preprocessed preprocess(const PoseTrajectory& traj,
                        const PreprocessOptions& opt) {
  traj.validate();
  PoseTrajectory x = apply_rigid_transform(traj, opt.transform);
  if (opt.cutoff_hz > 0.0) x = lowpass_filter(x, opt.cutoff_hz, opt.filter_order);
  const Vec3 origin = x.samples.front().p;
  for (auto& s : x.samples) s.p -= origin;

  Preprocessed out;
  const std::vector<Vec3> p = positions(x);
  const Vec3 v0 = differentiate(p, x.dt()).front();
  const Mat3& R0 = x.samples.front().R;
  out.initial_violation = violation(opt.spec, R0, v0);
  out.initial_velocity = project_initial_velocity(opt.spec, R0, v0);
  out.trajectory = std::move(x);
  return out;
}

DmpModel train(const PoseTrajectory& traj, std::size_t rbf,
               const DmpGains& gains, const Vec3* initial_velocity,
               TrainingReport* report) {
  traj.validate();
  gains.validate();
  if (rbf < 2) throw std::invalid_argument("need at least 2 basis functions");
  const std::size_t n = traj.size();
  if (n < 4) throw std::invalid_argument("training needs at least 4 samples");

  const double dt = traj.dt();
  const double tau = gains.tau;
  const std::vector<Vec3> p = positions(traj);
  const std::vector<Vec3> v = differentiate(p, dt);
  const std::vector<Vec3> a = second_derivative(p, dt);
  const std::vector<Vec3> w = angular_velocity(traj);
  const std::vector<Vec3> wd = differentiate(w, dt);

  DmpModel m;
  m.gains = gains;
  m.duration = traj.duration();
  m.p0 = p.front();
  m.v0 = initial_velocity ? *initial_velocity : v.front();
  m.p_g = p.back();
  m.R0 = traj.samples.front().R;
  m.w0 = w.front();
  m.R_g = traj.samples.back().R;

  // Phases along the training samples follow the same implicit Euler
  // recursion as the rollout.
  std::vector<double> s(n);
  s[0] = 1.0;
  const double q = 1.0 + dt * gains.alpha_s / tau;
  for (std::size_t k = 1; k < n; ++k) s[k] = s[k - 1] / q;

  // Targets consistent with the rollout tau * acc = attractor + f(s).
  std::array<std::vector<double>, 3> fp, fq;
  for (auto& t : fp) t.resize(n);
  for (auto& t : fq) t.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 pos = tau * a[k] - gains.alpha_x * (gains.beta_x * (m.p_g - p[k]) - tau * v[k]);
    const Vec3 err = so3::log_map(m.R_g * traj.samples[k].R.transpose());
    const Vec3 rot = tau * wd[k] - gains.alpha_x * (gains.beta_x * err - tau * w[k]);
    for (int i = 0; i < 3; ++i) {
      fp[i][k] = pos(i);
      fq[i][k] = rot(i);
    }
  }

  const ForcingTerm basis =
      ForcingTerm::equally_spaced(rbf, m.duration, tau, gains.alpha_s);
  TrainingReport rep;
  for (int i = 0; i < 3; ++i) {
    FitResult rp = fit_weights(basis, s, fp[i]);
    FitResult rq = fit_weights(basis, s, fq[i]);
    m.f_p[i] = std::move(rp.forcing);
    m.f_q[i] = std::move(rq.forcing);
    rep.position_rmse(i) = rp.rmse;
    rep.orientation_rmse(i) = rq.rmse;
  }
  if (report) *report = rep;
  return m;
}

}  // namespace nhdmp
