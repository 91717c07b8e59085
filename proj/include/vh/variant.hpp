#pragma once

#include <array>
#include <string>
#include <string_view>

#include "vh/errors.hpp"

namespace vh {

/// Which closed-form convention produces an energy.
///
///   as_printed       quantization constant Q = beta0 + gamma, as published
///   ga1_consistent   Q = beta0 - gamma: the exact spectrum of the ga_plain equation
///   ga2_standard     the exact spectrum of the ga_expfactor equation
///   table_empirical  ga2_standard shifted by -eta2*delta; reproduces the
///                    published l = 0 table rows, used only for auditing
enum class SpectrumVariant { as_printed, ga1_consistent, ga2_standard, table_empirical };

inline constexpr std::array<SpectrumVariant, 4> all_variants{
    SpectrumVariant::as_printed, SpectrumVariant::ga1_consistent,
    SpectrumVariant::ga2_standard, SpectrumVariant::table_empirical};

inline std::string_view to_string(SpectrumVariant v) {
  switch (v) {
  case SpectrumVariant::as_printed: return "as-printed";
  case SpectrumVariant::ga1_consistent: return "ga1";
  case SpectrumVariant::ga2_standard: return "ga2";
  case SpectrumVariant::table_empirical: return "empirical";
  }
  return "?";
}

inline SpectrumVariant parse_variant(std::string_view s) {
  if (s == "as-printed" || s == "as_printed" || s == "AS_PRINTED")
    return SpectrumVariant::as_printed;
  if (s == "ga1" || s == "ga1-consistent" || s == "GA1_CONSISTENT")
    return SpectrumVariant::ga1_consistent;
  if (s == "ga2" || s == "ga2-standard" || s == "GA2_STANDARD")
    return SpectrumVariant::ga2_standard;
  if (s == "empirical" || s == "table-empirical" || s == "TABLE_EMPIRICAL")
    return SpectrumVariant::table_empirical;
  throw ValidationError("unknown spectrum variant '" + std::string(s) +
                        "' (expected as-printed, ga1, ga2 or empirical)");
}

/// Equation family behind a variant: the centrifugal stand-in either lands in
/// the constant term of the x-polynomial (plain) or in the linear term (expfactor).
enum class NuFamily { centrifugal_plain, centrifugal_expfactor };

inline constexpr NuFamily family_of(SpectrumVariant v) noexcept {
  return (v == SpectrumVariant::ga2_standard || v == SpectrumVariant::table_empirical)
             ? NuFamily::centrifugal_expfactor
             : NuFamily::centrifugal_plain;
}

} // namespace vh
