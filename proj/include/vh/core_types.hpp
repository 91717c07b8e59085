#pragma once

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "vh/errors.hpp"

namespace vh {

/// Reduced Planck constant and reduced mass. Only the combination hbar^2/(2 mu)
/// enters the radial equation.
struct UnitSystem {
  double hbar = 1.0;
  double mu = 1.0;

  /// hbar = 1, 2 mu = 1.
  static constexpr UnitSystem half() noexcept { return {1.0, 0.5}; }
  /// hbar = mu = 1.
  static constexpr UnitSystem atomic() noexcept { return {1.0, 1.0}; }

  /// hbar^2 / (2 mu), the prefactor of -d^2/dr^2.
  constexpr double kinetic() const noexcept { return hbar * hbar / (2.0 * mu); }

  friend bool operator==(const UnitSystem&, const UnitSystem&) = default;
};

inline void validate(const UnitSystem& u) {
  if (!(u.hbar > 0.0) || !std::isfinite(u.hbar))
    throw ValidationError("hbar must be positive and finite");
  if (!(u.mu > 0.0) || !std::isfinite(u.mu))
    throw ValidationError("mu must be positive and finite");
}

inline UnitSystem unit_preset(std::string_view name) {
  if (name == "half")
    return UnitSystem::half();
  if (name == "atomic")
    return UnitSystem::atomic();
  throw ValidationError("unknown unit preset '" + std::string(name) +
                        "' (expected half or atomic)");
}

/// Strengths and screening of V(r) = eta0 - (eta0 eta1 / r) e^{-delta r}
///                                 - eta2 e^{-delta r} / (1 - e^{-delta r}).
struct PotentialParams {
  double eta0 = 0.0;  // energy
  double eta1 = 0.0;  // length
  double eta2 = 0.0;  // energy
  double delta = 1.0; // inverse length

  friend bool operator==(const PotentialParams&, const PotentialParams&) = default;
};

inline void validate(const PotentialParams& p) {
  if (!std::isfinite(p.eta0) || !std::isfinite(p.eta1) || !std::isfinite(p.eta2) ||
      !std::isfinite(p.delta))
    throw ValidationError("potential parameters must be finite");
  if (!(p.delta > 0.0))
    throw ValidationError("screening parameter delta must be positive");
}

/// Radial quantum number n, angular momentum l and space dimension N, with the
/// derived centrifugal constant gamma = (N+2l-1)(N+2l-3)/4, s = sqrt(gamma + 1/4)
/// and the composite index M = n + 1/2 + s.
///
/// gamma + 1/4 = ((N+2l-2)/2)^2 is a perfect square, so s = |N+2l-2|/2 is
/// computed exactly from integers.
class QuantumState {
public:
  QuantumState(int n, int l, int dim) : n_(n), l_(l), dim_(dim) {
    if (n < 0)
      throw ValidationError("radial quantum number n must be >= 0");
    if (l < 0)
      throw ValidationError("angular momentum l must be >= 0");
    if (dim < 1)
      throw ValidationError("space dimension N must be >= 1");
    const long long k = static_cast<long long>(dim) + 2LL * l;
    gamma_ = static_cast<double>((k - 1) * (k - 3)) / 4.0;
    s_ = static_cast<double>(k >= 2 ? k - 2 : 2 - k) / 2.0;
    M_ = static_cast<double>(n) + 0.5 + s_;
  }

  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  int dim() const noexcept { return dim_; }
  /// N + 2l, the only combination of (l, N) the radial equation sees.
  int shifted_dim() const noexcept { return dim_ + 2 * l_; }
  double gamma() const noexcept { return gamma_; }
  double s() const noexcept { return s_; }
  double M() const noexcept { return M_; }

  friend bool operator==(const QuantumState& a, const QuantumState& b) noexcept {
    return a.n_ == b.n_ && a.l_ == b.l_ && a.dim_ == b.dim_;
  }

private:
  int n_, l_, dim_;
  double gamma_, s_, M_;
};

inline QuantumState derive_state(int n, int l, int dim) { return {n, l, dim}; }

struct RadialQuantumNumbers {
  int n;
  int l;
  friend bool operator==(const RadialQuantumNumbers&, const RadialQuantumNumbers&) = default;
};

inline int orbital_letter_to_l(char c) {
  switch (std::tolower(static_cast<unsigned char>(c))) {
  case 's': return 0;
  case 'p': return 1;
  case 'd': return 2;
  case 'f': return 3;
  default: return -1;
  }
}

/// Spectroscopic label "<principal><s|p|d|f>" to (n, l) with n = principal - l - 1.
/// Upper-case letters are accepted ("2P").
inline RadialQuantumNumbers parse_state_label(std::string_view label) {
  if (label.size() != 2 || !std::isdigit(static_cast<unsigned char>(label[0])))
    throw ValidationError("malformed state label '" + std::string(label) +
                          "' (expected e.g. 1s, 2p)");
  const int l = orbital_letter_to_l(label[1]);
  if (l < 0)
    throw ValidationError("unknown orbital letter in state label '" + std::string(label) + "'");
  const int principal = label[0] - '0';
  if (principal <= l)
    throw ValidationError("state label '" + std::string(label) +
                          "' needs principal number > l");
  return {principal - l - 1, l};
}

/// Inverse of parse_state_label for l <= 3; other states print as "n<k>l<m>".
inline std::string state_label(int n, int l) {
  static constexpr char letters[] = {'s', 'p', 'd', 'f'};
  const int principal = n + l + 1;
  if (l <= 3 && principal <= 9)
    return std::to_string(principal) + letters[l];
  return "n" + std::to_string(n) + "l" + std::to_string(l);
}

inline std::string state_label(const QuantumState& s) { return state_label(s.n(), s.l()); }

} // namespace vh
