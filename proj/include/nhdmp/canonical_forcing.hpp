#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nhdmp {

/// Phase variable of the DMP, tau * ds/dt = -alpha_s * s.
struct CanonicalSystem {
  double tau = 1.0;
  double alpha_s = 1.0;
  double s = 1.0;

  /// Implicit Euler step of the linear decay. Requires dt > 0.
  CanonicalSystem step(double dt) const;

  /// Phase after k steps of size dt starting from s = 1.
  static double phase_after(std::size_t k, double dt, double tau,
                            double alpha_s);
};

inline CanonicalSystem phase_step(const CanonicalSystem& cs, double dt) {
  return cs.step(dt);
}

/// Normalized Gaussian basis forcing term
///   f(s) = s * sum_i psi_i(s) theta_i / sum_i psi_i(s),
///   psi_i(s) = exp(-h_i (s - c_i)^2).
class ForcingTerm {
 public:
  ForcingTerm() = default;
  ForcingTerm(std::vector<double> centers, std::vector<double> widths,
              std::vector<double> weights);

  /// Centers equally spaced in time over `duration`, widths from the
  /// spacing of neighbouring centers, all weights zero.
  static ForcingTerm equally_spaced(std::size_t n, double duration, double tau,
                                    double alpha_s);

  double operator()(double s) const;

  /// Normalized activations psi_i(s) / sum_j psi_j(s). The normalization
  /// is done in the log domain so phases far from every center still
  /// resolve to the nearest basis instead of 0/0.
  std::vector<double> normalized_activations(double s) const;

  double activation(std::size_t i, double s) const;

  std::size_t size() const noexcept { return centers_.size(); }
  const std::vector<double>& centers() const noexcept { return centers_; }
  const std::vector<double>& widths() const noexcept { return widths_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  ForcingTerm with_weights(std::vector<double> weights) const;

 private:
  std::vector<double> centers_;
  std::vector<double> widths_;
  std::vector<double> weights_;
};

inline double forcing_eval(const ForcingTerm& f, double s) { return f(s); }

struct FitResult {
  ForcingTerm forcing;
  double rmse = 0.0;  // reconstruction error on the training targets
};

/// Locally weighted regression of one scalar target per phase sample,
/// independently for each basis of `basis`:
///   theta_i = sum_t psi_i(s_t) s_t f_t / sum_t psi_i(s_t) s_t^2.
/// Requires phases strictly decreasing and at least basis.size() samples.
/// Throws DegenerateBasis when a denominator is below 1e-12.
FitResult fit_weights(const ForcingTerm& basis, std::span<const double> phases,
                      std::span<const double> targets);

/// Convenience overload using equally_spaced(n, ...) placement.
FitResult fit_weights(std::span<const double> phases,
                      std::span<const double> targets, std::size_t n,
                      double duration, double tau, double alpha_s);

}  // namespace nhdmp
