#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/jacobi.hpp>
#include <gtest/gtest.h>

#include "vh/spectrum.hpp"
#include "vh/wavefunctions.hpp"

using namespace vh;

namespace {

const PotentialParams base{-1.0, -1.0, 0.025, 0.025};

// Terminating hypergeometric series
//   P_n^{(a,b)}(y) = (a+1)_n / n! * 2F1(-n, n+a+b+1; a+1; (1-y)/2).
double jacobi_series(int n, double a, double b, double y) {
  double pref = 1.0;
  for (int k = 1; k <= n; ++k)
    pref *= (a + k) / k;
  const double z = (1.0 - y) / 2.0;
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= (-n + k) * (n + a + b + 1.0 + k) / ((a + 1.0 + k) * (k + 1.0)) * z;
    sum += term;
  }
  return pref * sum;
}

// Integral of psi^2 over r in (0, inf) by double-exponential quadrature.
double integrate_in_r(const WavefunctionSpec& w, double norm) {
  boost::math::quadrature::exp_sinh<double> integrator;
  const auto f = [&](double r) {
    const double v = psi(w, norm, r);
    return v * v;
  };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
}

std::vector<std::pair<QuantumState, SpectrumVariant>> base_bound_states() {
  std::vector<std::pair<QuantumState, SpectrumVariant>> out;
  for (auto v : {SpectrumVariant::as_printed, SpectrumVariant::ga1_consistent,
                 SpectrumVariant::ga2_standard})
    for (int l = 0; l <= 3; ++l)
      for (const auto& e : enumerate_bound_states(base, UnitSystem::half(), l, 3, v, 3))
        out.emplace_back(*e.state, v);
  return out;
}

} // namespace

TEST(Jacobi, LowOrderClosedForms) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> par(-0.99, 60.0), y(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = par(rng), b = par(rng), x = y(rng);
    EXPECT_EQ(jacobi(0, a, b, x), 1.0);
    const double p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    EXPECT_NEAR(jacobi(1, a, b, x), p1, 1e-12 * std::max(1.0, std::abs(p1)));
  }
}

TEST(Jacobi, ValueAtOne) {
  for (int n = 0; n <= 10; ++n)
    for (double a : {0.0, 0.5, 3.0, 17.25, 79.0}) {
      const double expected = std::exp(std::lgamma(n + a + 1) - std::lgamma(n + 1) -
                                       std::lgamma(a + 1));
      EXPECT_NEAR(jacobi(n, a, 1.0, 1.0), expected, 1e-12 * expected);
    }
}

TEST(Jacobi, AgreesWithSeriesAndBoost) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> par(-0.5, 80.0), y(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const int n = i % 11;
    const double a = par(rng), b = par(rng), x = y(rng);
    const double ours = jacobi(n, a, b, x);
    const double series = jacobi_series(n, a, b, x);
    // For a, b >= -1/2 the sup norm on [-1, 1] is attained at an endpoint.
    const double scale =
        std::max({1.0, std::abs(jacobi(n, a, b, 1.0)), std::abs(jacobi(n, a, b, -1.0))});
    EXPECT_NEAR(ours, series, 1e-10 * scale) << n << ' ' << a << ' ' << b << ' ' << x;
    EXPECT_NEAR(ours, boost::math::jacobi(static_cast<unsigned>(n), a, b, x), 1e-10 * scale);
  }
}

TEST(Jacobi, DomainErrors) {
  EXPECT_THROW(jacobi(2, -1.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(jacobi(2, 0.0, -1.5, 0.0), DomainError);
  EXPECT_THROW(jacobi(-1, 0.0, 0.0, 0.0), DomainError);
}

TEST(Wavefunction, SpecFromState) {
  const auto w = make_wavefunction_spec(base, UnitSystem::half(), QuantumState(0, 0, 3),
                                        SpectrumVariant::ga1_consistent);
  EXPECT_DOUBLE_EQ(w.a, 39.5);
  EXPECT_EQ(w.s, 0.5);
  EXPECT_EQ(w.n, 0);
  EXPECT_THROW(make_wavefunction_spec(base, UnitSystem::half(), QuantumState(9, 0, 3),
                                      SpectrumVariant::ga1_consistent),
               NoBoundState);
}

TEST(Wavefunction, PsiBoundaryValues) {
  const WavefunctionSpec w{2.0, 0.5, 1, 0.1};
  EXPECT_EQ(psi(w, 1.0, 0.0), 0.0);
  EXPECT_EQ(psi(w, 1.0, std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_THROW(psi(w, 1.0, -1.0), DomainError);
  // Direct product form at a moderate radius.
  const double r = 3.0, x = std::exp(-0.3);
  const double direct = std::pow(x, 2.0) * std::pow(1 - x, 1.0) * jacobi_series(1, 4.0, 1.0, 1 - 2 * x);
  EXPECT_NEAR(psi(w, 1.0, r), direct, 1e-14);
  // Large exponent far out: underflows gracefully to a finite number.
  const WavefunctionSpec big{40.0, 0.5, 0, 0.025};
  EXPECT_TRUE(std::isfinite(psi(big, 80.0, 30.0)));
}

TEST(Wavefunction, SpecValidation) {
  EXPECT_THROW(validate(WavefunctionSpec{0.0, 0.5, 0, 0.1}), DomainError);
  EXPECT_THROW(validate(WavefunctionSpec{1.0, -0.5, 0, 0.1}), DomainError);
  EXPECT_THROW(validate(WavefunctionSpec{1.0, 0.5, -1, 0.1}), DomainError);
  EXPECT_THROW(validate(WavefunctionSpec{1.0, 0.5, 0, 0.0}), DomainError);
}

TEST(Normalization, BetaIntegral) {
  // n = 0, u = 2a = 2, nu = 1 + 2s = 2: the x-integrand is x (1-x)^2, B(2, 3) = 1/12.
  const WavefunctionSpec w{1.0, 0.5, 0, 0.05};
  EXPECT_NEAR(boost::math::beta(2.0, 3.0), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(unit_norm_integral(w), boost::math::beta(2.0, 3.0) / 0.05, 1e-12);

  // General n = 0: integral of x^{2a-1} (1-x)^{nu} dx / delta = B(2a, nu + 1) / delta.
  for (double a : {0.05, 0.7, 3.3, 39.5})
    for (double s : {0.5, 1.5, 2.5}) {
      const WavefunctionSpec q{a, s, 0, 0.1};
      const double expected = boost::math::beta(2 * a, 2 + 2 * s) / 0.1;
      EXPECT_NEAR(unit_norm_integral(q), expected, 1e-11 * expected) << a << ' ' << s;
    }
}

TEST(Normalization, Idempotent) {
  const WavefunctionSpec w{3.0, 1.5, 2, 0.05};
  const double n1 = norm_numeric(w);
  EXPECT_NEAR(n1 * n1 * unit_norm_integral(w), 1.0, 1e-12);
}

TEST(Normalization, BaseConfigurationStatesIntegrateToOne) {
  const auto states = base_bound_states();
  ASSERT_GE(states.size(), 30u);
  for (const auto& [st, v] : states) {
    const auto w = make_wavefunction_spec(base, UnitSystem::half(), st, v);
    const double norm = norm_numeric(w);
    EXPECT_NEAR(integrate_in_r(w, norm), 1.0, 1e-8)
        << state_label(st) << ' ' << to_string(v);
  }
}

TEST(Normalization, AnalyticConstantAsPrinted) {
  const WavefunctionSpec w{1.25, 1.5, 2, 0.1};
  const double u = 2.5, nu = 4.0;
  const double expected = std::sqrt(std::tgamma(3.0) * u * 0.1 * std::tgamma(u + nu + 3.0) /
                                    (2.0 * std::tgamma(u + 3.0) * std::tgamma(nu + 3.0)));
  EXPECT_NEAR(norm_analytic(w), expected, 1e-12 * expected);

  const auto cmp = compare_norms(w);
  EXPECT_EQ(cmp.analytic, norm_analytic(w));
  EXPECT_EQ(cmp.numeric, norm_numeric(w));
  EXPECT_DOUBLE_EQ(cmp.relative_difference, (cmp.analytic - cmp.numeric) / cmp.numeric);
  // The printed constant does not normalize psi.
  EXPECT_GT(std::abs(cmp.relative_difference), 1e-3);
}

TEST(Normalization, SourceDispatch) {
  WavefunctionSpec w{2.0, 0.5, 1, 0.1};
  w.norm_source = NormSource::analytic;
  EXPECT_EQ(normalization(w), norm_analytic(w));
  w.norm_source = NormSource::numeric;
  EXPECT_EQ(normalization(w), norm_numeric(w));
}

TEST(Nodes, MatchRadialNumber) {
  for (const auto& [st, v] : base_bound_states()) {
    const auto w = make_wavefunction_spec(base, UnitSystem::half(), st, v);
    EXPECT_EQ(count_nodes(w, norm_numeric(w)), st.n()) << state_label(st) << ' ' << to_string(v);
  }
  const auto w3s = make_wavefunction_spec(base, UnitSystem::half(), QuantumState(2, 0, 3),
                                          SpectrumVariant::ga1_consistent);
  EXPECT_EQ(count_nodes(w3s, 1.0), 2);
  EXPECT_EQ(count_nodes(WavefunctionSpec{5.0, 0.5, 0, 0.1}, 1.0), 0);
}
