#pragma once

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "vh/core_types.hpp"
#include "vh/errors.hpp"
#include "vh/nu_engine.hpp"

namespace vh {

/// Jacobi polynomial P_n^{(alpha,beta)}(y) by the three-term recurrence in n.
inline double jacobi(int n, double alpha, double beta, double y) {
  if (n < 0)
    throw DomainError("Jacobi degree must be >= 0");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw DomainError("Jacobi parameters must exceed -1");
  if (n == 0)
    return 1.0;
  const double ab = alpha + beta;
  double prev = 1.0;
  double cur = (alpha + 1.0) + 0.5 * (ab + 2.0) * (y - 1.0);
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + ab;
    const double a1 = 2.0 * (k + 1) * (k + ab + 1.0) * c;
    const double a2 = (c + 1.0) * (alpha * alpha - beta * beta);
    const double a3 = c * (c + 1.0) * (c + 2.0);
    const double a4 = 2.0 * (k + alpha) * (k + beta) * (c + 2.0);
    const double next = ((a2 + a3 * y) * cur - a4 * prev) / a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

enum class NormSource { analytic, numeric };

/// psi(x) = N x^a (1-x)^{1/2+s} P_n^{(2a, 2s)}(1-2x), x = e^{-delta r}.
///
/// `a` is the quantization root (sqrt(eps+gamma) or sqrt(eps) depending on the
/// equation family) and must be positive for psi to vanish at r -> inf.
struct WavefunctionSpec {
  double a = 1.0;
  double s = 0.5;
  int n = 0;
  double delta = 1.0;
  NormSource norm_source = NormSource::numeric;
};

inline void validate(const WavefunctionSpec& w) {
  if (!(w.a > 0.0))
    throw DomainError("wavefunction exponent a must be positive");
  if (!(w.s >= 0.0))
    throw DomainError("wavefunction exponent s must be >= 0");
  if (w.n < 0)
    throw DomainError("radial quantum number n must be >= 0");
  if (!(w.delta > 0.0))
    throw DomainError("delta must be positive");
}

inline WavefunctionSpec make_wavefunction_spec(const PotentialParams& p, const UnitSystem& units,
                                               const QuantumState& state, SpectrumVariant v,
                                               NormSource source = NormSource::numeric) {
  const double root = quantization_root(nu_inputs(p, units, state), state.n(), v);
  return {root, state.s(), state.n(), p.delta, source};
}

namespace detail {

/// Polynomial factor P_n^{(2a, 2s)}(1 - 2x).
inline double wavefunction_polynomial(const WavefunctionSpec& w, double x) {
  return jacobi(w.n, 2.0 * w.a, 2.0 * w.s, 1.0 - 2.0 * x);
}

} // namespace detail

/// psi at radius r, scaled by `norm`. The envelope x^a (1-x)^{1/2+s} is
/// evaluated in log space so large a does not underflow before the product.
inline double psi(const WavefunctionSpec& w, double norm, double r) {
  if (r < 0.0)
    throw DomainError("radius must be >= 0");
  if (r == 0.0 || std::isinf(r))
    return 0.0;
  const double dr = w.delta * r;
  const double x = std::exp(-dr);
  const double log_env = -w.a * dr + (0.5 + w.s) * std::log(-std::expm1(-dr));
  return norm * std::exp(log_env) * detail::wavefunction_polynomial(w, x);
}

/// Closed-form normalization constant
///   N = sqrt( n! u delta Gamma(u+nu+n+1) / (2 Gamma(u+n+1) Gamma(nu+n+1)) ),
/// u = 2a, nu = 1 + 2s, evaluated as printed.
inline double norm_analytic(const WavefunctionSpec& w) {
  const double u = 2.0 * w.a;
  const double nu = 1.0 + 2.0 * w.s;
  const double n = w.n;
  if (!(u > 0.0) || !(u + n + 1.0 > 0.0) || !(nu + n + 1.0 > 0.0) || !(w.delta > 0.0))
    throw DomainError("normalization constant needs positive Gamma arguments");
  const double log_sq = std::lgamma(n + 1.0) + std::log(u) + std::log(w.delta) +
                        std::lgamma(u + nu + n + 1.0) - std::log(2.0) -
                        std::lgamma(u + n + 1.0) - std::lgamma(nu + n + 1.0);
  return std::exp(0.5 * log_sq);
}

/// Integral of |psi|^2 dr at unit norm.
///
/// With u = delta r = -ln x the integrand is e^{-2au} (1 - e^{-u})^{1+2s} P^2 / delta.
/// 1 + 2s is an integer, so it is smooth on [0, inf) and decays like e^{-2au};
/// the domain is cut where that factor drops below e^{-80}. Composite 20-point
/// Gauss-Legendre panels are doubled until two successive estimates agree to
/// 1e-12 (relative). (The x-form x^{2a-1} dx has a t^{1/a}-type endpoint
/// singularity under any power substitution and converges only algebraically.)
inline double unit_norm_integral(const WavefunctionSpec& w) {
  validate(w);
  const double nu = 1.0 + 2.0 * w.s;
  const auto integrand = [&w, nu](double u) {
    const double x = std::exp(-u);
    const double p = detail::wavefunction_polynomial(w, x);
    return std::exp(-2.0 * w.a * u + nu * std::log(-std::expm1(-u))) * p * p;
  };
  const double u_max = 40.0 / w.a;
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto composite = [&](int panels) {
    double sum = 0.0;
    const double width = u_max / panels;
    for (int i = 0; i < panels; ++i)
      sum += rule::integrate(integrand, i * width, (i + 1) * width);
    return sum;
  };

  constexpr int max_panels = 1 << 16;
  double previous = composite(8);
  for (int panels = 16; panels <= max_panels; panels *= 2) {
    const double current = composite(panels);
    if (std::abs(current - previous) <= 1e-12 * std::abs(current))
      return current / w.delta;
    previous = current;
  }
  throw NumericalError("normalization quadrature did not converge");
}

/// Constant that makes the integral of |psi|^2 over r equal to one.
inline double norm_numeric(const WavefunctionSpec& w) {
  const double integral = unit_norm_integral(w);
  if (!(integral > 0.0))
    throw NumericalError("normalization integral is not positive");
  return 1.0 / std::sqrt(integral);
}

inline double normalization(const WavefunctionSpec& w) {
  return w.norm_source == NormSource::analytic ? norm_analytic(w) : norm_numeric(w);
}

struct NormComparison {
  double analytic = 0.0;
  double numeric = 0.0;
  double relative_difference = 0.0; // (analytic - numeric) / numeric
};

inline NormComparison compare_norms(const WavefunctionSpec& w) {
  NormComparison c;
  c.analytic = norm_analytic(w);
  c.numeric = norm_numeric(w);
  c.relative_difference = (c.analytic - c.numeric) / c.numeric;
  return c;
}

/// Strict sign changes of psi on (0, 40/delta). The envelope is positive there,
/// so the sign is that of norm * P_n(1 - 2x).
inline int count_nodes(const WavefunctionSpec& w, double norm) {
  validate(w);
  constexpr int samples = 200000;
  const double r_cut = 40.0 / w.delta;
  int nodes = 0;
  int last_sign = 0;
  for (int i = 1; i < samples; ++i) {
    const double r = r_cut * i / samples;
    const double v = norm * detail::wavefunction_polynomial(w, std::exp(-w.delta * r));
    const int sign = (v > 0.0) - (v < 0.0);
    if (sign == 0)
      continue;
    if (last_sign != 0 && sign != last_sign)
      ++nodes;
    last_sign = sign;
  }
  return nodes;
}

} // namespace vh
