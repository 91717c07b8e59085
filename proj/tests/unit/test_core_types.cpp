#include <gtest/gtest.h>

#include "vh/config.hpp"
#include "vh/core_types.hpp"

using namespace vh;

TEST(UnitSystem, PresetsAndKinetic) {
  EXPECT_EQ(unit_preset("half"), (UnitSystem{1.0, 0.5}));
  EXPECT_EQ(unit_preset("atomic"), (UnitSystem{1.0, 1.0}));
  EXPECT_DOUBLE_EQ(UnitSystem::half().kinetic(), 1.0);
  EXPECT_DOUBLE_EQ(UnitSystem::atomic().kinetic(), 0.5);
  EXPECT_DOUBLE_EQ((UnitSystem{2.0, 4.0}).kinetic(), 0.5);
  EXPECT_THROW(unit_preset("cgs"), ValidationError);
}

TEST(UnitSystem, RejectsNonPositive) {
  EXPECT_THROW(validate(UnitSystem{0.0, 1.0}), ValidationError);
  EXPECT_THROW(validate(UnitSystem{1.0, -1.0}), ValidationError);
  EXPECT_THROW(validate(UnitSystem{1.0, std::numeric_limits<double>::infinity()}),
               ValidationError);
  EXPECT_NO_THROW(validate(UnitSystem::half()));
}

TEST(PotentialParams, Validation) {
  EXPECT_NO_THROW(validate(PotentialParams{-1, -1, 0.025, 0.025}));
  EXPECT_THROW(validate(PotentialParams{-1, -1, 0.025, 0.0}), ValidationError);
  EXPECT_THROW(validate(PotentialParams{-1, -1, 0.025, -0.1}), ValidationError);
  EXPECT_THROW(validate(PotentialParams{std::nan(""), -1, 0.025, 0.1}), ValidationError);
  EXPECT_THROW(validate(PotentialParams{-1, std::numeric_limits<double>::infinity(), 0, 0.1}),
               ValidationError);
}

TEST(QuantumState, DerivedQuantities) {
  const auto a = derive_state(0, 0, 3);
  EXPECT_EQ(a.gamma(), 0.0);
  EXPECT_EQ(a.s(), 0.5);
  EXPECT_EQ(a.M(), 1.0);

  const auto b = derive_state(0, 1, 3);
  EXPECT_EQ(b.gamma(), 2.0);
  EXPECT_EQ(b.s(), 1.5);
  EXPECT_EQ(b.M(), 2.0);

  const auto c = derive_state(0, 0, 5);
  EXPECT_EQ(c.gamma(), b.gamma());
  EXPECT_EQ(c.s(), b.s());
  EXPECT_EQ(c.M(), b.M());

  const auto d = derive_state(0, 0, 1); // (0)(-2)/4
  EXPECT_EQ(d.gamma(), 0.0);
}

TEST(QuantumState, RejectsInvalid) {
  EXPECT_THROW(derive_state(-1, 0, 3), ValidationError);
  EXPECT_THROW(derive_state(0, -1, 3), ValidationError);
  EXPECT_THROW(derive_state(0, 0, 0), ValidationError);
}

TEST(QuantumState, DependsOnlyOnShiftedDimension) {
  for (int n = 0; n < 4; ++n) {
    for (int l = 0; l <= 4; ++l) {
      for (int N = 1; N <= 7; ++N) {
        const QuantumState st(n, l, N);
        const int k = N + 2 * l;
        // gamma + 1/4 is the perfect square ((k-2)/2)^2.
        EXPECT_EQ(st.gamma() + 0.25, (k - 2) * (k - 2) / 4.0);
        if (k >= 2) {
          EXPECT_EQ(2.0 * st.s(), k - 2);
        }
        for (int l2 = 0; l2 <= 4; ++l2) {
          const int N2 = k - 2 * l2;
          if (N2 < 1)
            continue;
          const QuantumState other(n, l2, N2);
          EXPECT_EQ(other.gamma(), st.gamma());
          EXPECT_EQ(other.s(), st.s());
          EXPECT_EQ(other.M(), st.M());
        }
      }
    }
  }
}

TEST(StateLabel, ParsesSpectroscopicLabels) {
  EXPECT_EQ(parse_state_label("1s"), (RadialQuantumNumbers{0, 0}));
  EXPECT_EQ(parse_state_label("2p"), (RadialQuantumNumbers{0, 1}));
  EXPECT_EQ(parse_state_label("3d"), (RadialQuantumNumbers{0, 2}));
  EXPECT_EQ(parse_state_label("4f"), (RadialQuantumNumbers{0, 3}));
  EXPECT_EQ(parse_state_label("3s"), (RadialQuantumNumbers{2, 0}));
  EXPECT_EQ(parse_state_label("4P"), (RadialQuantumNumbers{2, 1}));
  EXPECT_EQ(parse_state_label("1S"), (RadialQuantumNumbers{0, 0}));
}

TEST(StateLabel, RejectsMalformed) {
  for (const char* bad : {"", "s1", "1", "1x", "12s", "ss", "1sp", "2d", "1p", "3f"})
    EXPECT_THROW(parse_state_label(bad), ValidationError) << bad;
}

TEST(StateLabel, RoundTrip) {
  for (int n = 0; n < 4; ++n)
    for (int l = 0; l <= 3; ++l) {
      const auto q = parse_state_label(state_label(n, l));
      EXPECT_EQ(q.n, n);
      EXPECT_EQ(q.l, l);
    }
  EXPECT_EQ(state_label(QuantumState(1, 1, 3)), "3p");
}

TEST(StateLabel, TableFourDegeneracyPattern) {
  // 4p, 4d, 4f share M = 4 at N = 3.
  for (const char* label : {"4p", "4d", "4f"}) {
    const auto q = parse_state_label(label);
    EXPECT_EQ(QuantumState(q.n, q.l, 3).M(), 4.0) << label;
  }
}

TEST(Config, ParsesAllKeys) {
  const auto c = parse_config("# base\n eta0 = -1\neta1=-2\neta2 = 0.05\ndelta = 0.1\n"
                              "hbar = 1\nmu = 0.5\nvariant = ga2\nn = 1\nl = 2\nN = 4\n\n");
  EXPECT_EQ(*c.eta0, -1.0);
  EXPECT_EQ(*c.eta1, -2.0);
  EXPECT_EQ(*c.eta2, 0.05);
  EXPECT_EQ(*c.delta, 0.1);
  EXPECT_EQ(*c.hbar, 1.0);
  EXPECT_EQ(*c.mu, 0.5);
  EXPECT_EQ(*c.variant, "ga2");
  EXPECT_EQ(*c.n, 1);
  EXPECT_EQ(*c.l, 2);
  EXPECT_EQ(*c.N, 4);
}

TEST(Config, MissingKeysStayEmpty) {
  const auto c = parse_config("delta = 0.05\n");
  EXPECT_FALSE(c.eta0);
  EXPECT_FALSE(c.variant);
  EXPECT_TRUE(c.delta);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("colour = red\n"), ValidationError);
  EXPECT_THROW(parse_config("eta0 -1\n"), ValidationError);
  EXPECT_THROW(parse_config("eta0 = \n"), ValidationError);
  EXPECT_THROW(parse_config("eta0 = one\n"), ValidationError);
  EXPECT_THROW(parse_config("n = 1.5\n"), ValidationError);
  EXPECT_THROW(parse_config("Eta0 = 1\n"), ValidationError);
  EXPECT_THROW(load_config("/nonexistent/run.cfg"), ValidationError);
}
