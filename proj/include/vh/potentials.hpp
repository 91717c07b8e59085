#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "vh/core_types.hpp"

namespace vh {

/// How the 1/r^2 centrifugal term (and the Yukawa e^{-delta r}/r term) enter
/// the effective potential.
///
///   exact         1/r^2 and e^{-dr}/r as they are
///   ga_plain      1/r^2 ~ d^2 / (1 - e^{-dr})^2
///   ga_expfactor  1/r^2 ~ d^2 e^{-dr} / (1 - e^{-dr})^2
///
/// Both approximate kinds replace e^{-dr}/r by d e^{-dr} / (1 - e^{-dr}), which
/// keeps the radial equation of hypergeometric type.
enum class ApproximationKind { exact, ga_plain, ga_expfactor };

inline std::string_view to_string(ApproximationKind k) {
  switch (k) {
  case ApproximationKind::exact: return "exact";
  case ApproximationKind::ga_plain: return "ga-plain";
  case ApproximationKind::ga_expfactor: return "ga-expfactor";
  }
  return "?";
}

inline ApproximationKind parse_approximation_kind(std::string_view s) {
  if (s == "exact") return ApproximationKind::exact;
  if (s == "ga-plain" || s == "ga_plain") return ApproximationKind::ga_plain;
  if (s == "ga-expfactor" || s == "ga_expfactor") return ApproximationKind::ga_expfactor;
  throw ValidationError("unknown approximation kind '" + std::string(s) +
                        "' (expected exact, ga-plain or ga-expfactor)");
}

namespace detail {

inline void require_positive_r(double r) {
  if (!(r > 0.0))
    throw DomainError("radius must be positive, got " + std::to_string(r));
}

/// 1 - e^{-x} without cancellation for small x.
inline double one_minus_exp(double x) { return -std::expm1(-x); }

} // namespace detail

inline double varshni(const PotentialParams& p, double r) {
  detail::require_positive_r(r);
  return p.eta0 - (p.eta0 * p.eta1 / r) * std::exp(-p.delta * r);
}

inline double hulthen(const PotentialParams& p, double r) {
  detail::require_positive_r(r);
  const double dr = p.delta * r;
  return -p.eta2 * std::exp(-dr) / detail::one_minus_exp(dr);
}

inline double combined(const PotentialParams& p, double r) { return varshni(p, r) + hulthen(p, r); }

/// The selected stand-in for 1/r^2.
inline double centrifugal_approx(ApproximationKind kind, double delta, double r) {
  detail::require_positive_r(r);
  if (!(delta > 0.0))
    throw DomainError("delta must be positive");
  if (kind == ApproximationKind::exact)
    return 1.0 / (r * r);
  const double dr = delta * r;
  const double om = detail::one_minus_exp(dr);
  const double plain = delta * delta / (om * om);
  return kind == ApproximationKind::ga_plain ? plain : plain * std::exp(-dr);
}

/// The selected stand-in for e^{-delta r}/r (the Varshni Yukawa factor).
inline double yukawa_approx(ApproximationKind kind, double delta, double r) {
  detail::require_positive_r(r);
  const double dr = delta * r;
  if (kind == ApproximationKind::exact)
    return std::exp(-dr) / r;
  return delta * std::exp(-dr) / detail::one_minus_exp(dr);
}

/// V(r) + (hbar^2/2mu) gamma <1/r^2>, with both 1/r-type terms replaced per
/// `kind`. With ga_plain this is the potential of the hypergeometric-form
/// radial equation the closed forms solve.
inline double effective_potential(const PotentialParams& p, const QuantumState& state,
                                  const UnitSystem& units, ApproximationKind kind, double r) {
  detail::require_positive_r(r);
  const double yukawa = p.eta0 * p.eta1 * yukawa_approx(kind, p.delta, r);
  return p.eta0 - yukawa + hulthen(p, r) +
         units.kinetic() * state.gamma() * centrifugal_approx(kind, p.delta, r);
}

/// lim_{r->inf} of effective_potential; the continuum threshold.
inline double effective_threshold(const PotentialParams& p, const QuantumState& state,
                                  const UnitSystem& units, ApproximationKind kind) {
  if (kind == ApproximationKind::ga_plain)
    return p.eta0 + units.kinetic() * state.gamma() * p.delta * p.delta;
  return p.eta0;
}

} // namespace vh
