#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "vh/nu_engine.hpp"

using namespace vh;

TEST(NuInputs, TableConfigurations) {
  const auto t1 = nu_inputs({-1, -1, 0.025, 0.025}, UnitSystem::half(), QuantumState(0, 0, 3));
  EXPECT_NEAR(t1.beta0, 80.0, 1e-12);
  EXPECT_EQ(t1.gamma, 0.0);

  for (int l = 0; l <= 3; ++l) {
    const QuantumState st(0, l, 3);
    const auto t4 = nu_inputs({0, 0, 0.025, 0.025}, UnitSystem::atomic(), st);
    EXPECT_NEAR(t4.beta0, 2.0 / 0.025, 1e-12);
    EXPECT_EQ(t4.gamma, st.gamma());
  }

  EXPECT_EQ(nu_inputs({0, 5, 0, 0.3}, UnitSystem::half(), QuantumState(0, 0, 3)).beta0, 0.0);
}

TEST(NuIntermediates, QuantizedGroundState) {
  const NuInputs in{80.0, 0.0};
  const auto nu = nu_intermediates(in, 1560.25);
  EXPECT_DOUBLE_EQ(nu.sqrt_c, 39.5);
  EXPECT_DOUBLE_EQ(nu.k_minus, 40.5);
  EXPECT_NEAR(nu.lambda, 0.0, 1e-12);
  EXPECT_EQ(nu.lambda_n(0), 0.0);
}

TEST(NuIntermediates, ZeroCoupling) {
  const auto nu = nu_intermediates({0.0, 0.0}, 0.0);
  EXPECT_EQ(nu.k_minus, 0.0);
  EXPECT_EQ(nu.lambda, -1.0);
  EXPECT_EQ(nu.lambda_n(0), 0.0);
}

TEST(NuIntermediates, CoefficientsAndBranches) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> beta(0.0, 300.0), eps(0.0, 500.0);
  std::uniform_int_distribution<int> k(1, 9);
  for (int i = 0; i < 200; ++i) {
    const int shifted = k(rng);
    const double gamma = (shifted - 1) * (shifted - 3) / 4.0;
    const NuInputs in{beta(rng), gamma};
    const double e = eps(rng) + std::max(0.0, -gamma);
    for (auto fam : {NuFamily::centrifugal_plain, NuFamily::centrifugal_expfactor}) {
      const auto nu = nu_intermediates(in, e, fam);
      EXPECT_DOUBLE_EQ(nu.A, 0.25 + e + in.beta0);
      if (fam == NuFamily::centrifugal_plain) {
        EXPECT_DOUBLE_EQ(nu.B, -(2 * e + in.beta0));
        EXPECT_DOUBLE_EQ(nu.C, e + gamma);
        // Printed closed form of k for this family.
        const double printed =
            in.beta0 - 2 * gamma - 2 * std::sqrt(e + gamma) * std::sqrt(gamma + 0.25);
        EXPECT_NEAR(nu.k_minus, printed, 1e-10 * (1 + std::abs(printed)));
        const double lam = -0.5 - std::sqrt(e + gamma) - std::sqrt(gamma + 0.25) + printed;
        EXPECT_NEAR(nu.lambda, lam, 1e-10 * (1 + std::abs(lam)));
      } else {
        EXPECT_DOUBLE_EQ(nu.B, -(2 * e + in.beta0 - gamma));
        EXPECT_DOUBLE_EQ(nu.C, e);
      }
      const double scale = 1.0 + nu.A * nu.A + nu.B * nu.B;
      EXPECT_LE(std::abs(nu.discriminant(nu.k_minus)), 1e-10 * scale);
      EXPECT_LE(std::abs(nu.discriminant(nu.k_plus)), 1e-10 * scale);
      EXPECT_LT(nu.tau_slope, 0.0);
      EXPECT_FALSE(nu.k_plus_physical);
      // At k_minus the radicand is a perfect square (sqrt(C) - (sqrt(C)+s) x)^2.
      for (double x : {0.1, 0.5, 0.9}) {
        const double rad = (nu.A - nu.k_minus) * x * x + (nu.k_minus + nu.B) * x + nu.C;
        const double sq = nu.sqrt_c - (nu.sqrt_c + nu.s) * x;
        EXPECT_NEAR(rad, sq * sq, 1e-9 * (1 + sq * sq));
      }
    }
  }
}

TEST(NuIntermediates, NonNormalizableRegime) {
  EXPECT_THROW(nu_intermediates({10.0, 2.0}, -2.5), DomainError);
  EXPECT_THROW(nu_intermediates({10.0, 2.0}, -0.1, NuFamily::centrifugal_expfactor), DomainError);
  EXPECT_NO_THROW(nu_intermediates({10.0, 2.0}, -2.0));
}

TEST(QuantizationRoot, Examples) {
  const NuInputs in{80.0, 2.0};
  EXPECT_DOUBLE_EQ(quantization_root(in, 0, SpectrumVariant::ga2_standard), 19.0);
  EXPECT_DOUBLE_EQ(epsilon_from_root(19.0, 2.0, NuFamily::centrifugal_expfactor), 361.0);
  EXPECT_DOUBLE_EQ(quantization_root(in, 0, SpectrumVariant::ga1_consistent), 18.5);
  EXPECT_DOUBLE_EQ(quantization_root(in, 0, SpectrumVariant::as_printed), 19.5);
}

TEST(QuantizationRoot, ThresholdIsNoBoundState) {
  // Family I with beta0 = M^2 + gamma: root 0.
  const NuInputs in{4.0 + 2.0, 2.0};
  try {
    quantization_root(in, 0, SpectrumVariant::ga1_consistent);
    FAIL() << "expected NoBoundState";
  } catch (const NoBoundState& e) {
    EXPECT_EQ(e.M(), 2.0);
    EXPECT_EQ(e.root(), 0.0);
    EXPECT_DOUBLE_EQ(e.root_floor(), std::sqrt(2.0));
    EXPECT_EQ(e.beta0(), 6.0);
  }
  // Positive root but epsilon <= 0 in family I.
  EXPECT_THROW(quantization_root({4.0 + 2.0 + 4.0, 2.0}, 0, SpectrumVariant::ga1_consistent),
               NoBoundState);
  EXPECT_THROW(quantization_root({0.0, 0.0}, 0, SpectrumVariant::ga2_standard), NoBoundState);
  EXPECT_THROW(quantization_root({80.0, 0.0}, -1, SpectrumVariant::ga2_standard), ValidationError);
}

TEST(QuantizationRoot, ResidualVanishes) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> beta(1.0, 400.0);
  std::uniform_int_distribution<int> k(1, 9), n(0, 6);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    const int shifted = k(rng);
    const NuInputs in{beta(rng), (shifted - 1) * (shifted - 3) / 4.0};
    const int nn = n(rng);
    for (auto v : {SpectrumVariant::ga1_consistent, SpectrumVariant::ga2_standard}) {
      double root = 0.0;
      try {
        root = quantization_root(in, nn, v);
      } catch (const NoBoundState&) {
        continue;
      }
      const auto fam = family_of(v);
      const double eps = epsilon_from_root(root, in.gamma, fam);
      EXPECT_GT(eps, 0.0);
      const auto nu = nu_intermediates(in, eps, fam);
      EXPECT_LE(std::abs(nu.lambda - nu.lambda_n(nn)), 1e-10 * (1 + std::abs(nu.lambda)));
      ++checked;
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(QuantizationRoot, PrintedConstantFailsTheResidual) {
  // The published Q = beta0 + gamma does not satisfy lambda = lambda_n when gamma != 0.
  const NuInputs in{80.0, 2.0};
  const double root = quantization_root(in, 0, SpectrumVariant::as_printed);
  const auto nu = nu_intermediates(in, root * root - in.gamma);
  EXPECT_GT(std::abs(nu.lambda - nu.lambda_n(0)), 1.0);
}

TEST(QuantizationRoot, DecreasingInN) {
  for (auto v : all_variants) {
    const NuInputs in{150.0, 2.0};
    double prev = quantization_root_unchecked(in, 0, v);
    for (int n = 1; n < 15; ++n) {
      const double r = quantization_root_unchecked(in, n, v);
      EXPECT_LT(r, prev);
      prev = r;
    }
  }
}

TEST(QuantizationRoot, FamiliesAgreeWithoutCentrifugalTerm) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> beta(1.0, 500.0);
  for (int i = 0; i < 100; ++i) {
    const NuInputs in{beta(rng), 0.0};
    for (int n = 0; n < 5; ++n) {
      const double a = quantization_root_unchecked(in, n, SpectrumVariant::ga1_consistent);
      const double b = quantization_root_unchecked(in, n, SpectrumVariant::ga2_standard);
      const double c = quantization_root_unchecked(in, n, SpectrumVariant::as_printed);
      EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(b)));
      EXPECT_NEAR(c, b, 1e-12 * std::max(1.0, std::abs(b)));
    }
  }
}
