#include "nhdmp/canonical_forcing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nhdmp/errors.hpp"

namespace nhdmp {

CanonicalSystem CanonicalSystem::step(double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("phase step requires dt > 0");
  CanonicalSystem next = *this;
  next.s = s / (1.0 + dt * alpha_s / tau);
  return next;
}

double CanonicalSystem::phase_after(std::size_t k, double dt, double tau,
                                    double alpha_s) {
  double s = 1.0;
  const double q = 1.0 + dt * alpha_s / tau;
  for (std::size_t i = 0; i < k; ++i) s /= q;
  return s;
}

ForcingTerm::ForcingTerm(std::vector<double> centers,
                         std::vector<double> widths,
                         std::vector<double> weights)
    : centers_(std::move(centers)),
      widths_(std::move(widths)),
      weights_(std::move(weights)) {
  if (centers_.size() < 2)
    throw std::invalid_argument("forcing term needs at least 2 basis functions");
  if (widths_.size() != centers_.size() || weights_.size() != centers_.size())
    throw std::invalid_argument("forcing term arrays differ in length");
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (!(widths_[i] > 0.0))
      throw std::invalid_argument("basis widths must be positive");
    if (i > 0 && !(centers_[i] < centers_[i - 1]))
      throw std::invalid_argument("basis centers must be strictly decreasing");
  }
}

ForcingTerm ForcingTerm::equally_spaced(std::size_t n, double duration,
                                        double tau, double alpha_s) {
  if (n < 2)
    throw std::invalid_argument("forcing term needs at least 2 basis functions");
  std::vector<double> c(n), h(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = duration * static_cast<double>(i) / static_cast<double>(n - 1);
    c[i] = std::exp(-alpha_s * t / tau);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = c[i + 1] - c[i];
    h[i] = 1.0 / (d * d);
  }
  h[n - 1] = h[n - 2];
  return ForcingTerm(std::move(c), std::move(h), std::vector<double>(n, 0.0));
}

double ForcingTerm::activation(std::size_t i, double s) const {
  const double d = s - centers_[i];
  return std::exp(-widths_[i] * d * d);
}

std::vector<double> ForcingTerm::normalized_activations(double s) const {
  const std::size_t n = centers_.size();
  std::vector<double> e(n);
  double emax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = s - centers_[i];
    e[i] = -widths_[i] * d * d;
    emax = std::max(emax, e[i]);
  }
  double sum = 0.0;
  for (auto& v : e) {
    v = std::exp(v - emax);
    sum += v;
  }
  for (auto& v : e) v /= sum;
  return e;
}

double ForcingTerm::operator()(double s) const {
  if (centers_.empty()) return 0.0;
  const auto psi = normalized_activations(s);
  double acc = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) acc += psi[i] * weights_[i];
  return s * acc;
}

ForcingTerm ForcingTerm::with_weights(std::vector<double> weights) const {
  return ForcingTerm(centers_, widths_, std::move(weights));
}

FitResult fit_weights(const ForcingTerm& basis, std::span<const double> phases,
                      std::span<const double> targets) {
  const std::size_t n = basis.size();
  if (phases.size() != targets.size())
    throw std::invalid_argument("phases and targets differ in length");
  if (phases.size() < n)
    throw std::invalid_argument("fewer samples than basis functions");
  for (std::size_t t = 1; t < phases.size(); ++t)
    if (!(phases[t] < phases[t - 1]))
      throw std::invalid_argument("phases must be strictly decreasing");

  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t < phases.size(); ++t) {
      const double s = phases[t];
      const double psi = basis.activation(i, s);
      num += psi * s * targets[t];
      den += psi * s * s;
    }
    if (den < 1e-12) throw DegenerateBasis(i, den);
    theta[i] = num / den;
  }

  FitResult out{basis.with_weights(std::move(theta)), 0.0};
  double sq = 0.0;
  for (std::size_t t = 0; t < phases.size(); ++t) {
    const double e = out.forcing(phases[t]) - targets[t];
    sq += e * e;
  }
  out.rmse = std::sqrt(sq / static_cast<double>(phases.size()));
  return out;
}

FitResult fit_weights(std::span<const double> phases,
                      std::span<const double> targets, std::size_t n,
                      double duration, double tau, double alpha_s) {
  return fit_weights(ForcingTerm::equally_spaced(n, duration, tau, alpha_s),
                     phases, targets);
}

}  // namespace nhdmp
