#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nhdmp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// log_map was asked for a rotation whose angle is too close to pi for the
/// axis to be recovered from the antisymmetric part.
class NearPiSingularity : public Error {
 public:
  explicit NearPiSingularity(double angle);
  double angle() const noexcept { return angle_; }

 private:
  double angle_;
};

/// A radial basis function received (almost) no activation from the
/// training phases, so its weight is undetermined.
class DegenerateBasis : public Error {
 public:
  DegenerateBasis(std::size_t basis, double denominator);
  std::size_t basis() const noexcept { return basis_; }

 private:
  std::size_t basis_;
};

/// Low-pass cutoff at or above the Nyquist frequency.
class NyquistViolation : public Error {
 public:
  NyquistViolation(double cutoff_hz, double sample_rate_hz);
};

/// The orientation optimizer ran out of iterations.
class NotConverged : public Error {
 public:
  NotConverged(int iterations, double gradient_norm);
  double gradient_norm() const noexcept { return gradient_norm_; }

 private:
  double gradient_norm_;
};

/// Malformed trajectory or model file. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Wraps a failure raised while integrating a rollout and records where.
class RolloutFailure : public Error {
 public:
  enum class Cause { NearPi, NotConverged, Other };

  RolloutFailure(std::size_t step, Cause cause, const std::string& what);
  std::size_t step() const noexcept { return step_; }
  Cause cause() const noexcept { return cause_; }

 private:
  std::size_t step_;
  Cause cause_;
};

}  // namespace nhdmp
