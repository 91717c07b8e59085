#pragma once

#include <cmath>
#include <string>

#include "vh/core_types.hpp"
#include "vh/errors.hpp"
#include "vh/variant.hpp"

namespace vh {

/// Dimensionless couplings of the radial equation in x = e^{-delta r}:
///   beta0 = 2 mu eta0 eta1 / (hbar^2 delta) + 2 mu eta2 / (hbar^2 delta^2)
///   gamma = (N+2l-1)(N+2l-3)/4
struct NuInputs {
  double beta0 = 0.0;
  double gamma = 0.0;
};

inline NuInputs nu_inputs(const PotentialParams& p, const UnitSystem& units,
                          const QuantumState& state) {
  validate(p);
  validate(units);
  const double k = units.kinetic();
  return {(p.eta0 * p.eta1 / p.delta + p.eta2 / (p.delta * p.delta)) / k, state.gamma()};
}

/// Every intermediate of the Nikiforov-Uvarov reduction at a trial epsilon.
///
/// The equation is psi'' + (1-x)/(x(1-x)) psi' + (-a x^2 + b x - c)/(x(1-x))^2 psi = 0
/// with sigma = x(1-x), tau~ = 1-x. Under the radical of pi(x) sits
/// (A-k) x^2 + (k+B) x + C; k is fixed by a vanishing discriminant.
struct NuIntermediates {
  NuFamily family = NuFamily::centrifugal_plain;
  double epsilon = 0.0;
  double A = 0.0, B = 0.0, C = 0.0;
  double k_minus = 0.0, k_plus = 0.0;
  double sqrt_c = 0.0; // sqrt(C): sqrt(eps+gamma) for the plain family, sqrt(eps) otherwise
  double s = 0.0;      // sqrt(gamma + 1/4)
  // Selected branch: pi(x) = pi_intercept + pi_slope x, tau(x) = tau_intercept + tau_slope x.
  double pi_slope = 0.0, pi_intercept = 0.0;
  double tau_slope = 0.0, tau_intercept = 0.0;
  // The k_plus branch gives psi ~ (1-x)^{1/2-s}, irregular at r = 0; kept for audit only.
  double k_plus_tau_slope = 0.0;
  bool k_plus_physical = false;
  double lambda = 0.0;

  /// lambda_n = -n tau' - n(n-1) sigma''/2 = n^2 + n + 2n(sqrt(C) + s).
  double lambda_n(int n) const noexcept {
    const double dn = n;
    return dn * dn + dn + 2.0 * dn * (sqrt_c + s);
  }

  /// Discriminant of (A-k) x^2 + (k+B) x + C.
  double discriminant(double k) const noexcept {
    return (k + B) * (k + B) - 4.0 * (A - k) * C;
  }
};

inline NuIntermediates nu_intermediates(const NuInputs& in, double epsilon,
                                        NuFamily family = NuFamily::centrifugal_plain) {
  NuIntermediates out;
  out.family = family;
  out.epsilon = epsilon;
  out.A = 0.25 + epsilon + in.beta0;
  if (family == NuFamily::centrifugal_plain) {
    out.B = -(2.0 * epsilon + in.beta0);
    out.C = epsilon + in.gamma;
  } else {
    out.B = -(2.0 * epsilon + in.beta0 - in.gamma);
    out.C = epsilon;
  }
  if (out.C < 0.0)
    throw DomainError("non-normalizable regime: C = " + std::to_string(out.C) + " < 0");

  out.sqrt_c = std::sqrt(out.C);
  // A + B + C = gamma + 1/4 in both families.
  out.s = std::sqrt(in.gamma + 0.25);
  const double centre = -(out.B + 2.0 * out.C);
  const double half_width = 2.0 * out.sqrt_c * out.s;
  out.k_minus = centre - half_width;
  out.k_plus = centre + half_width;

  // At k_minus the radicand is ((sqrt(C) + s) x - sqrt(C))^2; the minus sign of
  // the root gives tau' < 0.
  out.pi_slope = -0.5 - (out.sqrt_c + out.s);
  out.pi_intercept = out.sqrt_c;
  out.tau_slope = -1.0 + 2.0 * out.pi_slope;
  out.tau_intercept = 1.0 + 2.0 * out.pi_intercept;
  out.k_plus_tau_slope = -2.0 * (1.0 + out.sqrt_c - out.s);
  out.k_plus_physical = false;

  out.lambda = out.k_minus + out.pi_slope;
  return out;
}

/// Effective quantization constant Q in root = (Q - M^2) / (2M).
inline double quantization_constant(const NuInputs& in, SpectrumVariant v) noexcept {
  switch (v) {
  case SpectrumVariant::as_printed: return in.beta0 + in.gamma;
  case SpectrumVariant::ga1_consistent: return in.beta0 - in.gamma;
  case SpectrumVariant::ga2_standard:
  case SpectrumVariant::table_empirical: return in.beta0;
  }
  return in.beta0;
}

/// Smallest admissible quantization root: sqrt(gamma) for the plain family
/// (so that epsilon > 0), zero otherwise.
inline double root_floor(const NuInputs& in, SpectrumVariant v) noexcept {
  return family_of(v) == NuFamily::centrifugal_plain ? std::sqrt(in.gamma) : 0.0;
}

/// (Q - M^2)/(2M) with M = n + 1/2 + sqrt(gamma + 1/4), without checking binding.
inline double quantization_root_unchecked(const NuInputs& in, int n, SpectrumVariant v) {
  if (n < 0)
    throw ValidationError("radial quantum number n must be >= 0");
  const double M = n + 0.5 + std::sqrt(in.gamma + 0.25);
  return (quantization_constant(in, v) - M * M) / (2.0 * M);
}

/// Solves lambda = lambda_n for the square root of the constant term C:
/// sqrt(eps + gamma) for the plain family, sqrt(eps) for the expfactor family.
/// Throws NoBoundState unless the root exceeds root_floor() (epsilon > 0).
inline double quantization_root(const NuInputs& in, int n, SpectrumVariant v) {
  const double root = quantization_root_unchecked(in, n, v);
  const double floor = root_floor(in, v);
  if (!(root > floor) || !(root > 0.0)) {
    const double M = n + 0.5 + std::sqrt(in.gamma + 0.25);
    throw NoBoundState(in.beta0, in.gamma, M, root, floor);
  }
  return root;
}

/// epsilon = 2 mu (eta0 - E) / (hbar^2 delta^2) recovered from a quantization root.
inline double epsilon_from_root(double root, double gamma, NuFamily family) noexcept {
  return family == NuFamily::centrifugal_plain ? root * root - gamma : root * root;
}

} // namespace vh
