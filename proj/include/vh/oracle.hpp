#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vh/core_types.hpp"
#include "vh/errors.hpp"
#include "vh/potentials.hpp"
#include "vh/spectrum.hpp"

namespace vh {

/// Radial grid for the finite-difference eigensolver.
///
/// Nodes are r_i = stretch * expm1(alpha * i / points), alpha = log1p(r_max / stretch),
/// so spacing is ~stretch * alpha / points near the origin and grows linearly
/// with r. A large `stretch` approaches a uniform grid. Level k of the
/// Richardson ladder uses points * 2^k intervals.
struct GridSpec {
  double r_max = 1600.0;
  int points = 8000;
  int refinement_levels = 2;
  double stretch = 1.0;
  double bisection_tolerance = 1e-10;

  /// r_max = 40 / delta, capped at 4000.
  static GridSpec for_screening(double delta) {
    GridSpec g;
    g.r_max = std::min(40.0 / delta, 4000.0);
    return g;
  }
};

inline void validate(const GridSpec& g) {
  if (!(g.r_max > 0.0) || !std::isfinite(g.r_max))
    throw ValidationError("grid r_max must be positive");
  if (g.points < 500)
    throw ValidationError("grid needs at least 500 points");
  if (g.refinement_levels < 1 || g.refinement_levels > 6)
    throw ValidationError("refinement_levels must be in [1, 6]");
  if (!(g.stretch > 0.0))
    throw ValidationError("grid stretch must be positive");
  if (!(g.bisection_tolerance > 0.0))
    throw ValidationError("bisection tolerance must be positive");
}

struct OracleResult {
  std::vector<double> energies;         // Richardson-extrapolated, ascending
  std::vector<double> error_estimates;  // per energy
  GridSpec grid;
  std::optional<ApproximationKind> kind; // empty for user-supplied potentials
  double threshold = 0.0;
  std::vector<std::vector<double>> level_energies; // raw eigenvalues per grid level
  int finest_bound_count = 0;                      // full Sturm sweep below threshold
  std::vector<int> node_counts;                    // eigenvector sign changes, finest grid
};

namespace detail {

/// Symmetric tridiagonal matrix: diag[i], off[i] couples i and i+1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

inline std::vector<double> stretched_grid(double r_max, int intervals, double stretch) {
  std::vector<double> r(static_cast<std::size_t>(intervals) + 1);
  const double alpha = std::log1p(r_max / stretch);
  for (int i = 0; i <= intervals; ++i)
    r[i] = stretch * std::expm1(alpha * i / intervals);
  r.back() = r_max;
  return r;
}

/// Three-point discretization of -kinetic u'' + v u with u(r_0) = u(r_N) = 0.
/// The non-uniform stencil is symmetric in the inner product with node weights
/// w_i = (h_{i-1} + h_i)/2; scaling by w^{1/2} gives a symmetric matrix.
inline Tridiagonal discretize(const std::function<double(double)>& v, double kinetic,
                              const std::vector<double>& r) {
  const std::size_t m = r.size() - 2; // interior nodes
  Tridiagonal t;
  t.diag.resize(m);
  t.off.resize(m > 0 ? m - 1 : 0);
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double hl = r[i + 1] - r[i];
    const double hr = r[i + 2] - r[i + 1];
    w[i] = 0.5 * (hl + hr);
    t.diag[i] = kinetic * (1.0 / hl + 1.0 / hr) / w[i] + v(r[i + 1]);
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double h = r[i + 2] - r[i + 1];
    t.off[i] = -kinetic / (h * std::sqrt(w[i] * w[i + 1]));
  }
  return t;
}

/// Number of eigenvalues strictly below x (LDL^T inertia).
inline int sturm_count(const Tridiagonal& t, double x) {
  constexpr double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double coupling = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1] / q;
    q = t.diag[i] - x - coupling;
    if (q == 0.0)
      q = -tiny;
    if (q < 0.0)
      ++count;
  }
  return count;
}

inline double gershgorin_lower(const Tridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    double radius = 0.0;
    if (i > 0)
      radius += std::abs(t.off[i - 1]);
    if (i < t.off.size())
      radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
  }
  return lo;
}

/// k-th eigenvalue (0-based) in [lo, hi), given sturm_count(lo) <= k < sturm_count(hi).
inline double bisect_eigenvalue(const Tridiagonal& t, int k, double lo, double hi, double tol) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol * std::max(1.0, std::abs(mid)))
      return mid;
    if (sturm_count(t, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  throw NumericalError("eigenvalue bisection did not converge");
}

/// Inverse iteration at `shift`; returns an approximate eigenvector.
inline std::vector<double> inverse_iteration(const Tridiagonal& t, double shift) {
  const std::size_t m = t.diag.size();
  std::vector<double> y(m, 1.0), c(m), d(m);
  constexpr double tiny = 1e-300;
  for (int sweep = 0; sweep < 3; ++sweep) {
    // Thomas algorithm on (T - shift I) z = y.
    double denom = t.diag[0] - shift;
    if (std::abs(denom) < tiny)
      denom = tiny;
    c[0] = m > 1 ? t.off[0] / denom : 0.0;
    d[0] = y[0] / denom;
    for (std::size_t i = 1; i < m; ++i) {
      denom = t.diag[i] - shift - t.off[i - 1] * c[i - 1];
      if (std::abs(denom) < tiny)
        denom = tiny;
      c[i] = i + 1 < m ? t.off[i] / denom : 0.0;
      d[i] = (y[i] - t.off[i - 1] * d[i - 1]) / denom;
    }
    y[m - 1] = d[m - 1];
    for (std::size_t i = m - 1; i-- > 0;)
      y[i] = d[i] - c[i] * y[i + 1];
    double scale = 0.0;
    for (double v : y)
      scale = std::max(scale, std::abs(v));
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw NumericalError("inverse iteration broke down");
    for (double& v : y)
      v /= scale;
  }
  return y;
}

/// Sign changes, ignoring entries below `floor` (relative to the max).
inline int sign_changes(const std::vector<double>& y, double floor = 1e-8) {
  double peak = 0.0;
  for (double v : y)
    peak = std::max(peak, std::abs(v));
  int changes = 0, last = 0;
  for (double v : y) {
    if (std::abs(v) <= floor * peak)
      continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last != 0 && sign != last)
      ++changes;
    last = sign;
  }
  return changes;
}

struct LevelSolution {
  std::vector<double> energies;
  int bound_count = 0;
  std::vector<int> nodes;
};

inline LevelSolution solve_level(const std::function<double(double)>& v, double kinetic,
                                 double threshold, const GridSpec& g, int intervals, int count,
                                 bool with_nodes) {
  const auto r = stretched_grid(g.r_max, intervals, g.stretch);
  const auto t = discretize(v, kinetic, r);
  LevelSolution out;
  out.bound_count = sturm_count(t, threshold);
  const int wanted = std::min(count, out.bound_count);
  const double lo = gershgorin_lower(t);
  double floor = lo;
  for (int k = 0; k < wanted; ++k) {
    const double e = bisect_eigenvalue(t, k, floor, threshold, g.bisection_tolerance);
    out.energies.push_back(e);
    if (with_nodes) {
      const double nudge = 1e-9 * std::max(1.0, std::abs(e));
      out.nodes.push_back(sign_changes(inverse_iteration(t, e - nudge)));
    }
  }
  return out;
}

} // namespace detail

/// Lowest `count` eigenvalues below `threshold` of -kinetic u'' + v_eff u = E u
/// on (0, r_max) with Dirichlet ends, each Richardson-extrapolated over the
/// grid ladder. Returns fewer energies when fewer bound states exist.
inline OracleResult solve_radial(const std::function<double(double)>& v_eff, double kinetic,
                                 double threshold, const GridSpec& grid, int count) {
  validate(grid);
  if (count < 1)
    throw ValidationError("oracle count must be >= 1");
  if (!(kinetic > 0.0))
    throw ValidationError("kinetic prefactor must be positive");

  const int levels = grid.refinement_levels;
  std::vector<std::future<detail::LevelSolution>> jobs;
  for (int k = 0; k <= levels; ++k) {
    const int intervals = grid.points << k;
    jobs.push_back(std::async(std::launch::async, [&, intervals, k] {
      return detail::solve_level(v_eff, kinetic, threshold, grid, intervals, count, k == levels);
    }));
  }
  std::vector<detail::LevelSolution> sols;
  for (auto& j : jobs)
    sols.push_back(j.get());

  std::size_t found = sols.front().energies.size();
  for (const auto& s : sols)
    found = std::min(found, s.energies.size());

  OracleResult out;
  out.grid = grid;
  out.threshold = threshold;
  out.finest_bound_count = sols.back().bound_count;
  for (const auto& s : sols)
    out.level_energies.push_back(s.energies);
  for (std::size_t i = 0; i < found; ++i) {
    std::vector<double> rich;
    for (int k = 1; k <= levels; ++k)
      rich.push_back((4.0 * sols[k].energies[i] - sols[k - 1].energies[i]) / 3.0);
    out.energies.push_back(rich.back());
    out.error_estimates.push_back(
        levels >= 2 ? std::abs(rich[levels - 1] - rich[levels - 2])
                    : std::abs(sols[1].energies[i] - sols[0].energies[i]) / 3.0);
    out.node_counts.push_back(sols.back().nodes[i]);
  }
  return out;
}

/// Oracle for the (l, N) channel of the combined potential with the 1/r-type
/// terms treated per `kind`.
inline OracleResult solve_radial(const PotentialParams& p, const UnitSystem& units, int l, int dim,
                                 ApproximationKind kind, const GridSpec& grid, int count) {
  validate(p);
  validate(units);
  const QuantumState channel(0, l, dim);
  auto v = [&p, &units, &channel, kind](double r) {
    return effective_potential(p, channel, units, kind, r);
  };
  auto out = solve_radial(v, units.kinetic(), effective_threshold(p, channel, units, kind), grid,
                          count);
  out.kind = kind;
  return out;
}

inline OracleResult solve_radial(const PotentialParams& p, const UnitSystem& units, int l, int dim,
                                 ApproximationKind kind, int count) {
  return solve_radial(p, units, l, dim, kind, GridSpec::for_screening(p.delta), count);
}

/// Closed-form energy of `variant` minus the oracle energy of the exact
/// (un-approximated) radial equation: the physical error of the closed form.
inline double ga_error(const PotentialParams& p, const UnitSystem& units,
                       const QuantumState& state, SpectrumVariant variant,
                       std::optional<GridSpec> grid = std::nullopt) {
  const double closed = energy(p, units, state, variant).energy;
  const auto res = solve_radial(p, units, state.l(), state.dim(), ApproximationKind::exact,
                                grid.value_or(GridSpec::for_screening(p.delta)), state.n() + 1);
  if (res.energies.size() <= static_cast<std::size_t>(state.n())) {
    const auto in = nu_inputs(p, units, state);
    throw NoBoundState(in.beta0, in.gamma, state.M(), std::nan(""), 0.0);
  }
  return closed - res.energies[state.n()];
}

/// Potential tabulated as (r, V) pairs. Interpolates r*V linearly, which is
/// exact for Coulomb tails; beyond the last node V is held at its last value.
class TabulatedPotential {
public:
  TabulatedPotential(std::vector<double> r, std::vector<double> v) : r_(std::move(r)) {
    if (r_.size() < 2 || r_.size() != v.size())
      throw ValidationError("potential table needs at least two (r, V) rows");
    rv_.resize(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i) {
      if (!(r_[i] > 0.0) || (i > 0 && !(r_[i] > r_[i - 1])))
        throw ValidationError("potential table radii must be positive and increasing");
      rv_[i] = r_[i] * v[i];
    }
  }

  double operator()(double r) const {
    if (r >= r_.back())
      return rv_.back() / r_.back();
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t hi = it == r_.begin() ? 1 : static_cast<std::size_t>(it - r_.begin());
    const std::size_t lo = hi - 1;
    const double f = (r - r_[lo]) / (r_[hi] - r_[lo]);
    return (rv_[lo] + f * (rv_[hi] - rv_[lo])) / r;
  }

  /// Value held beyond the table, i.e. the continuum threshold.
  double tail() const { return rv_.back() / r_.back(); }

private:
  std::vector<double> r_, rv_;
};

/// Reads `r,V` rows; a non-numeric first line is treated as a header.
inline TabulatedPotential load_potential_table(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open potential table '" + path + "'");
  std::vector<double> r, v;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a = 0.0, b = 0.0;
    if (!(ss >> a >> b)) {
      if (first) {
        first = false;
        continue;
      }
      throw ValidationError("malformed potential table row: '" + line + "'");
    }
    first = false;
    r.push_back(a);
    v.push_back(b);
  }
  return TabulatedPotential(std::move(r), std::move(v));
}

} // namespace vh
