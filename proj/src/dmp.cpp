#include "nhdmp/dmp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nhdmp/errors.hpp"

namespace nhdmp {

void DmpGains::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (!(alpha_x > 0.0)) throw std::invalid_argument("alpha_x must be > 0");
  if (!(beta_x > 0.0)) throw std::invalid_argument("beta_x must be > 0");
  if (!(alpha_s > 0.0)) throw std::invalid_argument("alpha_s must be > 0");
}

void DmpModel::validate() const {
  gains.validate();
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be > 0");
  for (const auto* set : {&f_p, &f_q})
    for (const auto& f : *set)
      if (f.size() < 2)
        throw std::invalid_argument("forcing terms need at least 2 bases");
  if (!so3::is_rotation(R0) || !so3::is_rotation(R_g))
    throw std::invalid_argument("start/goal orientation is not a rotation");
}

std::string_view to_string(RolloutMode m) {
  switch (m) {
    case RolloutMode::Nominal: return "nominal";
    case RolloutMode::Constrained: return "constrained";
    case RolloutMode::Optimized: return "optimized";
  }
  return "unknown";
}

RolloutMode parse_mode(std::string_view name) {
  if (name == "nominal") return RolloutMode::Nominal;
  if (name == "constrained") return RolloutMode::Constrained;
  if (name == "optimized") return RolloutMode::Optimized;
  throw std::invalid_argument("unknown rollout mode '" + std::string(name) + "'");
}

namespace {

Vec3 eval(const std::array<ForcingTerm, 3>& f, double s) {
  return {f[0](s), f[1](s), f[2](s)};
}

}  // namespace

Vec3 position_accel(const DmpModel& model, const RolloutState& st) {
  const DmpGains& g = model.gains;
  return (g.alpha_x * (g.beta_x * (model.p_g - st.p) - g.tau * st.p_dot) +
          eval(model.f_p, st.s)) /
         g.tau;
}

Vec3 orientation_rate(const DmpModel& model, const Mat3& R, const Vec3& w,
                      double s) {
  const DmpGains& g = model.gains;
  const Vec3 e = so3::log_map(model.R_g * R.transpose());
  return (g.alpha_x * (g.beta_x * e - g.tau * w) + eval(model.f_q, s)) / g.tau;
}

StepResult step(const DmpModel& model, const RolloutState& st,
                RolloutMode mode, const ConstraintSpec& spec, double dt,
                const OptimizerConfig& cfg) {
  if (!(dt > 0.0)) throw std::invalid_argument("step requires dt > 0");

  StepResult out;
  StepDiagnostics& diag = out.diag;
  RolloutState& nx = out.next;
  diag.violation = violation(spec, st.R, st.p_dot);
  if (mode != RolloutMode::Nominal && std::abs(diag.violation) > 1e-6)
    throw std::invalid_argument(
        "constrained step started from a state violating the constraint");

  const Vec3 acc_unc = position_accel(model, st);
  Vec3 acc = acc_unc;

  nx.step = st.step + 1;
  nx.t = static_cast<double>(nx.step) * dt;
  nx.s = CanonicalSystem{model.gains.tau, model.gains.alpha_s, st.s}.step(dt).s;

  switch (mode) {
    case RolloutMode::Nominal:
    case RolloutMode::Constrained: {
      const BladeForce bf = blade_constraint(spec, st.R, st.w, st.p_dot, acc_unc);
      diag.fcon_norm = bf.f_con.norm();
      if (mode == RolloutMode::Constrained) {
        acc += bf.f_con;
        diag.accel_residual = bf.c.dot(acc) - bf.b;
      }
      nx.w = st.w + orientation_rate(model, st) * dt;
      nx.R = so3::exp_map(nx.w, dt) * st.R;
      nx.R_ref = nx.R;
      nx.w_ref = nx.w;
      break;
    }
    case RolloutMode::Optimized: {
      nx.w_ref = st.w_ref + orientation_rate(model, st.R_ref, st.w_ref, st.s) * dt;
      nx.R_ref = so3::exp_map(nx.w_ref, dt) * st.R_ref;
      const OrientationProblem pb{spec, nx.R_ref, st.R, st.p_dot, acc_unc, dt};
      const OptStepResult opt = optimize_step(pb, cfg, nx.w_ref);
      require_converged(opt);
      nx.w = opt.w_opt;
      nx.R = opt.R_opt;
      const BladeForce bf = blade_constraint(spec, nx.R, nx.w, st.p_dot, acc_unc);
      acc += bf.f_con;
      diag.fcon_norm = bf.f_con.norm();
      diag.accel_residual = bf.c.dot(acc) - bf.b;
      diag.loss = opt.loss;
      diag.opt_iters = opt.iterations;
      break;
    }
  }

  nx.p_dot = st.p_dot + acc * dt;
  if (mode != RolloutMode::Nominal) {
    // Drift control: the force is exact at acceleration level only.
    const Vec3 c = spec.world_axis(nx.R);
    const double lateral = c.dot(nx.p_dot) / c.squaredNorm();
    nx.p_dot -= lateral * c;
    diag.projection = std::abs(lateral);
  }
  nx.p = st.p + nx.p_dot * dt;

  if (nx.step % kReorthonormalizeEvery == 0) {
    nx.R = so3::project(nx.R);
    nx.R_ref = so3::project(nx.R_ref);
  }
  return out;
}

RolloutState initial_state(const DmpModel& model, RolloutMode mode,
                           const ConstraintSpec& spec, double* pre_violation) {
  RolloutState st;
  st.p = model.p0;
  st.p_dot = model.v0;
  st.R = model.R0;
  st.w = model.w0;
  st.R_ref = model.R0;
  st.w_ref = model.w0;
  const double v = violation(spec, st.R, st.p_dot);
  if (pre_violation) *pre_violation = v;
  if (mode != RolloutMode::Nominal)
    st.p_dot = project_initial_velocity(spec, st.R, st.p_dot);
  return st;
}

std::size_t rollout_samples(double dt, double T) {
  if (!(dt > 0.0) || !(T > 0.0))
    throw std::invalid_argument("rollout requires dt > 0 and T > 0");
  // Tolerate representation error in T/dt such as 1.0/0.001.
  const double steps = std::ceil(T / dt - 1e-9);
  return static_cast<std::size_t>(steps) + 1;
}

double Rollout::max_abs_violation() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, std::abs(d.violation));
  return m;
}

double Rollout::max_fcon_norm() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, d.fcon_norm);
  return m;
}

Rollout rollout(const DmpModel& model, RolloutMode mode,
                const ConstraintSpec& spec, double dt, double T,
                const OptimizerConfig& cfg) {
  model.validate();
  const std::size_t n = rollout_samples(dt, T);

  Rollout out;
  out.mode = mode;
  out.trajectory.sample_rate = 1.0 / dt;
  out.trajectory.samples.reserve(n);
  out.states.reserve(n);
  out.diagnostics.reserve(n);

  RolloutState st = initial_state(model, mode, spec, &out.initial_violation);
  for (std::size_t k = 0; k < n; ++k) {
    out.states.push_back(st);
    out.trajectory.samples.push_back({st.t, st.p, st.R});
    StepResult r;
    try {
      r = step(model, st, mode, spec, dt, cfg);
    } catch (const NearPiSingularity& e) {
      throw RolloutFailure(k, RolloutFailure::Cause::NearPi, e.what());
    } catch (const NotConverged& e) {
      throw RolloutFailure(k, RolloutFailure::Cause::NotConverged, e.what());
    } catch (const std::exception& e) {
      throw RolloutFailure(k, RolloutFailure::Cause::Other, e.what());
    }
    out.diagnostics.push_back(r.diag);
    st = r.next;
  }
  return out;
}

}  // namespace nhdmp
