#include "nhdmp/errors.hpp"

#include <cstdio>

namespace nhdmp {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

NearPiSingularity::NearPiSingularity(double angle)
    : Error("rotation angle " + format_double(angle) +
            " rad is too close to pi for the logarithmic map"),
      angle_(angle) {}

DegenerateBasis::DegenerateBasis(std::size_t basis, double denominator)
    : Error("basis function " + std::to_string(basis) +
            " is never activated (regression denominator " +
            format_double(denominator) + ")"),
      basis_(basis) {}

NyquistViolation::NyquistViolation(double cutoff_hz, double sample_rate_hz)
    : Error("cutoff " + format_double(cutoff_hz) +
            " Hz is not below the Nyquist frequency of " +
            format_double(sample_rate_hz / 2.0) + " Hz") {}

NotConverged::NotConverged(int iterations, double gradient_norm)
    : Error("optimizer did not converge after " + std::to_string(iterations) +
            " iterations (gradient norm " + format_double(gradient_norm) + ")"),
      gradient_norm_(gradient_norm) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

RolloutFailure::RolloutFailure(std::size_t step, Cause cause,
                               const std::string& what)
    : Error("rollout failed at step " + std::to_string(step) + ": " + what),
      step_(step),
      cause_(cause) {}

}  // namespace nhdmp
