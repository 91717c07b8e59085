#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vh/core_types.hpp"
#include "vh/nu_engine.hpp"
#include "vh/variant.hpp"

namespace vh {

/// An energy with its provenance. Closed forms carry `variant` and a zero
/// error estimate; oracle results leave `variant` empty.
struct EigenResult {
  double energy = 0.0;
  std::optional<SpectrumVariant> variant;
  std::optional<QuantumState> state;
  double error_estimate = 0.0;
  std::string metadata;
};

namespace detail {

inline double energy_from_root(const PotentialParams& p, const UnitSystem& units,
                               const QuantumState& state, SpectrumVariant v, double root) {
  const double scale = units.kinetic() * p.delta * p.delta; // hbar^2 delta^2 / (2 mu)
  switch (v) {
  case SpectrumVariant::as_printed:
  case SpectrumVariant::ga1_consistent:
    return p.eta0 + scale * state.gamma() - scale * root * root;
  case SpectrumVariant::ga2_standard:
    return p.eta0 - scale * root * root;
  case SpectrumVariant::table_empirical:
    return p.eta0 - p.eta2 * p.delta - scale * root * root;
  }
  return 0.0;
}

} // namespace detail

/// The closed-form expression of `v` evaluated as a formula, whether or not
/// the quantization root admits a bound state. Table audits use this.
inline double closed_form_energy(const PotentialParams& p, const UnitSystem& units,
                                 const QuantumState& state, SpectrumVariant v) {
  const NuInputs in = nu_inputs(p, units, state);
  return detail::energy_from_root(p, units, state, v,
                                  quantization_root_unchecked(in, state.n(), v));
}

/// Bound-state energy of `state` under `v`. Throws NoBoundState when the
/// quantization root is not admissible.
inline EigenResult energy(const PotentialParams& p, const UnitSystem& units,
                          const QuantumState& state, SpectrumVariant v) {
  const NuInputs in = nu_inputs(p, units, state);
  const double root = quantization_root(in, state.n(), v);
  EigenResult r;
  r.energy = detail::energy_from_root(p, units, state, v, root);
  r.variant = v;
  r.state = state;
  r.metadata = "closed form " + std::string(to_string(v));
  return r;
}

/// Bound states n = 0, 1, ... n_max_cap (inclusive) of one (l, N) channel,
/// stopping at the first n without a bound state.
inline std::vector<EigenResult> enumerate_bound_states(const PotentialParams& p,
                                                       const UnitSystem& units, int l, int dim,
                                                       SpectrumVariant v, int n_max_cap) {
  if (n_max_cap < 0)
    throw ValidationError("n_max_cap must be >= 0");
  std::vector<EigenResult> out;
  for (int n = 0; n <= n_max_cap; ++n) {
    try {
      out.push_back(energy(p, units, QuantumState(n, l, dim), v));
    } catch (const NoBoundState&) {
      break;
    }
  }
  return out;
}

/// Pure Varshni spectrum: the published formula with eta2 = 0.
inline EigenResult varshni_energy(PotentialParams p, const UnitSystem& units,
                                  const QuantumState& state) {
  p.eta2 = 0.0;
  auto r = energy(p, units, state, SpectrumVariant::as_printed);
  r.metadata = "varshni reduction (eta2 = 0)";
  return r;
}

/// Pure Hulthen spectrum: eta0 = eta1 = 0 under `v`.
inline EigenResult hulthen_energy(PotentialParams p, const UnitSystem& units,
                                  const QuantumState& state,
                                  SpectrumVariant v = SpectrumVariant::as_printed) {
  p.eta0 = 0.0;
  p.eta1 = 0.0;
  auto r = energy(p, units, state, v);
  r.metadata = "hulthen reduction (eta0 = eta1 = 0), " + std::string(to_string(v));
  return r;
}

/// The published s-wave reduction obtained by setting N = l = 0, taken
/// verbatim: E = eta0 - (hbar^2 delta^2 / 8 mu) [((n+1/2)^2 - beta0) / (n+1/2)]^2.
///
/// N = l = 0 would give gamma = 3/4, which this expression leaves out; it is
/// therefore not the N = 3, l = 0 energy.
inline EigenResult swave_special(const PotentialParams& p, const UnitSystem& units, int n) {
  if (n < 0)
    throw ValidationError("radial quantum number n must be >= 0");
  validate(p);
  validate(units);
  const double beta0 = (p.eta0 * p.eta1 / p.delta + p.eta2 / (p.delta * p.delta)) / units.kinetic();
  const double m = n + 0.5;
  const double root = (beta0 - m * m) / (2.0 * m);
  if (!(root > 0.0))
    throw NoBoundState(beta0, 0.0, m, root, 0.0);
  EigenResult r;
  const double bracket = (m * m - beta0) / m;
  r.energy = p.eta0 - units.kinetic() * p.delta * p.delta / 4.0 * bracket * bracket;
  r.metadata = "s-wave reduction with N = l = 0, n = " + std::to_string(n);
  return r;
}

} // namespace vh
