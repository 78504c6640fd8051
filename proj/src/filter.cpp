#include "nhdmp/filter.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nhdmp/errors.hpp"

namespace nhdmp {
namespace {

using Poly = std::vector<double>;  // coefficients of z^-k, k = 0..deg

// Slope at sample 0 (per sample) of a least-squares cubic through the
// first w samples of x, read in the given direction.
double edge_slope(std::span<const double> x, std::size_t w, bool from_end) {
  const std::size_t n = x.size();
  w = std::min(w, n);
  const Eigen::Index deg = std::min<Eigen::Index>(3, static_cast<Eigen::Index>(w) - 1);
  Eigen::MatrixXd V(w, deg + 1);
  Eigen::VectorXd y(w);
  for (std::size_t k = 0; k < w; ++k) {
    const double t = static_cast<double>(k);
    double pw = 1.0;
    for (Eigen::Index j = 0; j <= deg; ++j, pw *= t) V(k, j) = pw;
    y(k) = from_end ? x[n - 1 - k] : x[k];
  }
  const Eigen::VectorXd coef = V.colPivHouseholderQr().solve(y);
  return from_end ? -coef(1) : coef(1);
}

Poly multiply(const Poly& p, const Poly& q) {
  Poly r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

Poly power(const Poly& p, int k) {
  Poly r{1.0};
  for (int i = 0; i < k; ++i) r = multiply(r, p);
  return r;
}

// Normalized analog Butterworth denominator, ascending powers of s.
Poly butterworth_polynomial(int order) {
  const double g = std::numbers::pi / (2.0 * order);
  Poly c(order + 1);
  c[0] = 1.0;
  for (int k = 1; k <= order; ++k)
    c[k] = c[k - 1] * std::cos((k - 1) * g) / std::sin(k * g);
  return c;
}

}  // namespace

IirCoefficients butterworth_lowpass(int order, double cutoff_hz,
                                    double sample_rate_hz) {
  if (order < 1) throw std::invalid_argument("filter order must be >= 1");
  if (!(sample_rate_hz > 0.0) || !(cutoff_hz > 0.0))
    throw std::invalid_argument("cutoff and sample rate must be positive");
  if (cutoff_hz >= 0.5 * sample_rate_hz)
    throw NyquistViolation(cutoff_hz, sample_rate_hz);

  // H(s) = 1 / B(s / wa) with prewarped wa; substituting
  // s = 2 fs (1 - z^-1) / (1 + z^-1) gives s / wa = r (1 - z^-1) / (1 + z^-1).
  const double r = 1.0 / std::tan(std::numbers::pi * cutoff_hz / sample_rate_hz);
  const Poly B = butterworth_polynomial(order);
  const Poly minus{1.0, -1.0};
  const Poly plus{1.0, 1.0};

  Poly den(order + 1, 0.0);
  double rk = 1.0;
  for (int k = 0; k <= order; ++k) {
    const Poly term = multiply(power(minus, k), power(plus, order - k));
    for (int i = 0; i <= order; ++i) den[i] += B[k] * rk * term[i];
    rk *= r;
  }
  Poly num = power(plus, order);

  const double a0 = den[0];
  for (auto& v : den) v /= a0;
  for (auto& v : num) v /= a0;
  return {std::move(num), std::move(den)};
}

double dc_gain(const IirCoefficients& c) {
  double nb = 0.0, na = 0.0;
  for (double v : c.b) nb += v;
  for (double v : c.a) na += v;
  return nb / na;
}

std::vector<double> lfilter(const IirCoefficients& c, std::span<const double> x,
                            std::span<const double> zi) {
  const std::size_t m = std::max(c.a.size(), c.b.size());
  std::vector<double> b = c.b, a = c.a;
  b.resize(m, 0.0);
  a.resize(m, 0.0);
  std::vector<double> z(m - 1, 0.0);
  if (!zi.empty()) {
    if (zi.size() != z.size())
      throw std::invalid_argument("initial state has the wrong size");
    std::copy(zi.begin(), zi.end(), z.begin());
  }
  std::vector<double> y(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double xn = x[n];
    const double yn = b[0] * xn + (z.empty() ? 0.0 : z[0]);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const double next = i + 2 < m ? z[i + 1] : 0.0;
      z[i] = b[i + 1] * xn - a[i + 1] * yn + next;
    }
    y[n] = yn;
  }
  return y;
}

std::vector<double> lfilter_zi(const IirCoefficients& c) {
  const std::size_t m = std::max(c.a.size(), c.b.size());
  std::vector<double> b = c.b, a = c.a;
  b.resize(m, 0.0);
  a.resize(m, 0.0);
  const double y = dc_gain(c);
  std::vector<double> z(m - 1, 0.0);
  for (std::size_t i = m - 1; i-- > 0;) {
    const double next = i + 1 < m - 1 ? z[i + 1] : 0.0;
    z[i] = b[i + 1] - a[i + 1] * y + next;
  }
  return z;
}

std::vector<double> filtfilt(const IirCoefficients& c, std::span<const double> x,
                             std::size_t padlen) {
  const std::size_t n = x.size();
  if (n < 2) return {x.begin(), x.end()};
  padlen = std::min(padlen, n - 1);

  // End slopes (per sample) from a cubic fitted over about half a cutoff
  // period, so a single noisy sample cannot tilt the whole extension.
  const std::size_t w = std::max<std::size_t>(4, (padlen + 11) / 12);
  const double d0 = edge_slope(x, w, false);
  const double d1 = edge_slope(x, w, true);

  std::vector<double> ext;
  ext.reserve(n + 2 * padlen);
  for (std::size_t k = padlen; k >= 1; --k)
    ext.push_back(x[k] - 2.0 * d0 * static_cast<double>(k));
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t k = 1; k <= padlen; ++k)
    ext.push_back(x[n - 1 - k] + 2.0 * d1 * static_cast<double>(k));

  const std::vector<double> zi = lfilter_zi(c);
  std::vector<double> z0(zi.size());

  for (std::size_t i = 0; i < zi.size(); ++i) z0[i] = zi[i] * ext.front();
  std::vector<double> y = lfilter(c, ext, z0);
  std::reverse(y.begin(), y.end());
  for (std::size_t i = 0; i < zi.size(); ++i) z0[i] = zi[i] * y.front();
  y = lfilter(c, y, z0);
  std::reverse(y.begin(), y.end());

  return {y.begin() + static_cast<std::ptrdiff_t>(padlen),
          y.begin() + static_cast<std::ptrdiff_t>(padlen + n)};
}

}  // namespace nhdmp
