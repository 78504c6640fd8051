#include "nhdmp/orient_opt.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nhdmp/errors.hpp"

namespace nhdmp {

void OptimizerConfig::validate() const {
  if (!(grad_eps > 0.0)) throw std::invalid_argument("grad_eps must be > 0");
  if (!(tol_grad > 0.0)) throw std::invalid_argument("tol_grad must be > 0");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(fcon_weight >= 0.0) || !(rotation_weight >= 0.0))
    throw std::invalid_argument("loss weights must be non-negative");
}

const char* to_string(OptStatus s) {
  switch (s) {
    case OptStatus::GradientTolerance: return "gradient-tolerance";
    case OptStatus::StepTolerance: return "step-tolerance";
    case OptStatus::NoDescent: return "no-descent";
    case OptStatus::MaxIterations: return "max-iterations";
  }
  return "unknown";
}

Mat3 optimized_rotation(const OrientationProblem& pb, const Vec3& w) {
  return so3::exp_map(w, pb.dt) * pb.R_prev;
}

namespace {

struct LossParts {
  double loss;
  double fcon_norm;
};

LossParts loss_parts(const OrientationProblem& pb, const Vec3& w,
                     const OptimizerConfig& cfg) {
  const Mat3 R = optimized_rotation(pb, w);
  const Vec3 f = blade_constraint_force(pb.spec, R, w, pb.p_dot, pb.p_ddot_unc);
  const double fn = f.norm();
  return {cfg.fcon_weight * fn + cfg.rotation_weight * (pb.R_nominal - R).norm(),
          fn};
}

// Weak Wolfe line search by bracketing (bisection once an upper bound is
// known, doubling before that). Works on the kinks of the norm terms,
// where a pure Armijo search tends to stall far from the minimizer.
struct LineSearchResult {
  bool ok = false;
  double t = 0.0;
  double f = 0.0;
  Vec3 g = Vec3::Zero();
};

template <class F, class G>
LineSearchResult weak_wolfe(const F& fun, const G& grad, const Vec3& x,
                            double f0, const Vec3& g0, const Vec3& d) {
  constexpr double c1 = 1e-4;
  constexpr double c2 = 0.9;
  constexpr int kMaxTrials = 80;
  const double slope = g0.dot(d);
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double t = 1.0;
  LineSearchResult best;  // last Armijo-satisfying point
  for (int i = 0; i < kMaxTrials; ++i) {
    const Vec3 xt = x + t * d;
    const double ft = fun(xt);
    if (!(ft <= f0 + c1 * t * slope)) {
      hi = t;
    } else {
      const Vec3 gt = grad(xt);
      best = {true, t, ft, gt};
      if (gt.dot(d) >= c2 * slope) return best;
      lo = t;
    }
    if (std::isinf(hi)) {
      t *= 2.0;
    } else {
      t = 0.5 * (lo + hi);
      if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
    }
  }
  // Fall back to the last point with sufficient decrease, if any.
  if (best.ok && best.f < f0) return best;
  return {};
}

}  // namespace

double loss(const OrientationProblem& pb, const Vec3& w,
            const OptimizerConfig& cfg) {
  return loss_parts(pb, w, cfg).loss;
}

Vec3 loss_gradient(const OrientationProblem& pb, const Vec3& w, double h,
                   const OptimizerConfig& cfg) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 wp = w, wm = w;
    wp(i) += h;
    wm(i) -= h;
    g(i) = (loss(pb, wp, cfg) - loss(pb, wm, cfg)) / (2.0 * h);
  }
  return g;
}

namespace {

OptStepResult bfgs(const OrientationProblem& pb, const OptimizerConfig& cfg,
                   const Vec3& start) {
  const auto fun = [&](const Vec3& w) { return loss(pb, w, cfg); };
  const auto grad = [&](const Vec3& w) {
    return loss_gradient(pb, w, cfg.grad_eps, cfg);
  };

  Vec3 x = start;
  double f = fun(x);
  Vec3 g = grad(x);
  Mat3 H = Mat3::Identity();
  bool identity_H = true;

  OptStepResult res;
  res.status = OptStatus::MaxIterations;
  int it = 0;
  while (true) {
    if (g.norm() <= cfg.tol_grad || f == 0.0) {
      res.status = OptStatus::GradientTolerance;
      break;
    }
    if (it >= cfg.max_iters) break;

    Vec3 d = -H * g;
    if (!(g.dot(d) < 0.0)) {
      H.setIdentity();
      identity_H = true;
      d = -g;
    }
    LineSearchResult ls = weak_wolfe(fun, grad, x, f, g, d);
    if (!ls.ok && !identity_H) {
      H.setIdentity();
      identity_H = true;
      d = -g;
      ls = weak_wolfe(fun, grad, x, f, g, d);
    }
    if (!ls.ok) {
      res.status = OptStatus::NoDescent;
      break;
    }

    const Vec3 s = ls.t * d;
    const Vec3 y = ls.g - g;
    x += s;
    f = ls.f;
    g = ls.g;
    ++it;

    const double sy = s.dot(y);
    if (sy > 1e-300) {
      if (identity_H) H *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Mat3 V = Mat3::Identity() - rho * s * y.transpose();
      H = V * H * V.transpose() + rho * s * s.transpose();
      identity_H = false;
    }
    if (s.norm() <= cfg.step_tol * (1.0 + x.norm())) {
      res.status = OptStatus::StepTolerance;
      break;
    }
  }

  const LossParts parts = loss_parts(pb, x, cfg);
  res.w_opt = x;
  res.R_opt = optimized_rotation(pb, x);
  res.loss = parts.loss;
  res.f_con_norm = parts.fcon_norm;
  res.iterations = it;
  res.gradient_norm = g.norm();
  return res;
}

}  // namespace

OptStepResult optimize_step(const OrientationProblem& pb,
                            const OptimizerConfig& cfg, const Vec3& w_warm) {
  cfg.validate();
  if (!(pb.dt > 0.0)) throw std::invalid_argument("optimizer requires dt > 0");

  const Vec3 start = cfg.warm_start ? w_warm : Vec3::Zero();
  OptStepResult best = bfgs(pb, cfg, start);
  if (cfg.restart_fcon_threshold < 0.0 ||
      best.f_con_norm <= cfg.restart_fcon_threshold)
    return best;

  // The warm start can sit in a local minimum where the lateral axis is
  // (anti)parallel to the demanded acceleration; quarter turns escape it.
  int total = best.iterations;
  const double quarter = 0.5 * std::numbers::pi / pb.dt;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      const OptStepResult r =
          bfgs(pb, cfg, start + sign * quarter * Vec3::Unit(axis));
      total += r.iterations;
      if (r.converged() && (r.loss < best.loss || !best.converged())) best = r;
    }
  }
  best.iterations = total;
  return best;
}

void require_converged(const OptStepResult& r) {
  if (!r.converged()) throw NotConverged(r.iterations, r.gradient_norm);
}

}  // namespace nhdmp
