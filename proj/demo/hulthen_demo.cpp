// Hulthen screening study: closed forms against the finite-difference oracle.
#include <cstdio>

#include "vh/vh.hpp"

int main() {
  const vh::UnitSystem units = vh::UnitSystem::atomic();

  std::printf("%-6s %-5s %-14s %-14s %-14s %s\n", "delta", "state", "ga2", "exact oracle",
              "ga2 - exact", "oracle error");
  for (double delta : {0.025, 0.05, 0.1}) {
    const vh::PotentialParams p{0.0, 0.0, delta, delta}; // unit charge
    for (const char* label : {"1s", "2p", "3d"}) {
      const auto q = vh::parse_state_label(label);
      const vh::QuantumState st(q.n, q.l, 3);
      const double closed = vh::energy(p, units, st, vh::SpectrumVariant::ga2_standard).energy;
      const auto oracle =
          vh::solve_radial(p, units, q.l, 3, vh::ApproximationKind::exact, q.n + 1);
      const double exact = oracle.energies.at(q.n);
      std::printf("%-6.3f %-5s %-14.9f %-14.9f %-14.3e %.1e\n", delta, label, closed, exact,
                  closed - exact, oracle.error_estimates.at(q.n));
    }
  }

  // Normalized ground state of the combined potential in three dimensions.
  const vh::PotentialParams base{-1.0, -1.0, 0.025, 0.025};
  const vh::QuantumState ground(0, 0, 3);
  const auto w = vh::make_wavefunction_spec(base, vh::UnitSystem::half(), ground,
                                            vh::SpectrumVariant::ga1_consistent);
  const auto norms = vh::compare_norms(w);
  std::printf("\n1s normalization: numeric %.10g, printed closed form %.10g (rel. diff %.2e)\n",
              norms.numeric, norms.analytic, norms.relative_difference);
  return 0;
}
