#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nhdmp {

/// Digital IIR coefficients, a[0] == 1.
struct IirCoefficients {
  std::vector<double> b;
  std::vector<double> a;
};

/// Butterworth low-pass of the given order by bilinear transform with
/// frequency prewarping. Throws NyquistViolation when
/// cutoff_hz >= sample_rate_hz / 2.
IirCoefficients butterworth_lowpass(int order, double cutoff_hz,
                                    double sample_rate_hz);

/// Gain at z = 1.
double dc_gain(const IirCoefficients& c);

/// Direct-form II transposed filtering with initial state zi (may be empty).
std::vector<double> lfilter(const IirCoefficients& c, std::span<const double> x,
                            std::span<const double> zi = {});

/// Steady-state filter state for a unit step input.
std::vector<double> lfilter_zi(const IirCoefficients& c);

/// Zero-phase forward-backward filtering. The signal is extended at both
/// ends by `padlen` samples (clamped to size - 1) with a continuation that
/// matches value, curvature and a least-squares end slope, and each pass
/// starts from the steady state of its first sample. Linear in x.
std::vector<double> filtfilt(const IirCoefficients& c, std::span<const double> x,
                             std::size_t padlen);

}  // namespace nhdmp
