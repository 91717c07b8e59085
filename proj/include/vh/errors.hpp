#pragma once

#include <stdexcept>
#include <string>

namespace vh {

/// Malformed input: bad label, unknown config key, out-of-range argument.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function (r <= 0, alpha <= -1, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative routine failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Embedded reference data does not match its pinned digest.
class IntegrityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The quantization condition has no normalizable solution for the requested state.
///
/// Carries the inputs of the condition so callers can report how far the state
/// is from binding: a bound state needs the quantization root to exceed
/// `root_floor`, which happens once beta0 grows past roughly M^2.
class NoBoundState : public std::runtime_error {
public:
  NoBoundState(double beta0, double gamma, double M, double root, double root_floor)
      : std::runtime_error(describe(beta0, gamma, M, root, root_floor)),
        beta0_(beta0), gamma_(gamma), M_(M), root_(root), root_floor_(root_floor) {}

  double beta0() const noexcept { return beta0_; }
  double gamma() const noexcept { return gamma_; }
  double M() const noexcept { return M_; }
  double root() const noexcept { return root_; }
  double root_floor() const noexcept { return root_floor_; }

private:
  static std::string describe(double beta0, double gamma, double M, double root,
                              double floor) {
    return "no bound state: beta0 = " + std::to_string(beta0) +
           ", gamma = " + std::to_string(gamma) + ", M = " + std::to_string(M) +
           ", quantization root " + std::to_string(root) + " <= " +
           std::to_string(floor);
  }

  double beta0_, gamma_, M_, root_, root_floor_;
};

} // namespace vh
