#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vh/config.hpp"
#include "vh/conformance.hpp"
#include "vh/core_types.hpp"
#include "vh/errors.hpp"
#include "vh/oracle.hpp"
#include "vh/potentials.hpp"
#include "vh/spectrum.hpp"
#include "vh/variant.hpp"
#include "vh/wavefunctions.hpp"

namespace vh::cli {

enum ExitCode : int { ok = 0, invalid = 1, no_bound_state = 2, numerical = 3 };

enum class OutputFormat { text, csv, json };

inline OutputFormat parse_output_format(std::string_view s) {
  if (s == "text") return OutputFormat::text;
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ValidationError("unknown format '" + std::string(s) + "' (expected text, csv or json)");
}

/// Flags shared by every subcommand, as given on the command line.
struct CommonFlags {
  std::optional<double> eta0, eta1, eta2, delta, hbar, mu;
  std::optional<std::string> units, state, variant, config;
  std::optional<int> n, l, N;
  std::string format = "text";
  std::string out;
};

/// Fully resolved inputs. Defaults are the Table 1 base configuration:
/// eta0 = eta1 = -1, eta2 = delta = 0.025, hbar = 2mu = 1, N = 3, 1s, ga1.
struct Resolved {
  PotentialParams params{-1.0, -1.0, 0.025, 0.025};
  UnitSystem units = UnitSystem::half();
  int n = 0;
  int l = 0;
  int N = 3;
  std::vector<SpectrumVariant> variants{SpectrumVariant::ga1_consistent};
  OutputFormat format = OutputFormat::text;

  QuantumState state() const { return {n, l, N}; }
};

/// Parses "as-printed", "ga1,ga2" or "all".
inline std::vector<SpectrumVariant> parse_variant_list(std::string_view s) {
  if (s == "all")
    return {all_variants.begin(), all_variants.end()};
  std::vector<SpectrumVariant> out;
  for (auto part : detail::split(s, ',')) {
    const auto v = parse_variant(part);
    if (std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(v);
  }
  if (out.empty())
    throw ValidationError("empty variant list");
  return out;
}

/// Layers config file < --units < explicit flags.
inline Resolved resolve(const CommonFlags& f) {
  Resolved r;
  if (f.config) {
    const RunConfig c = load_config(*f.config);
    if (c.eta0) r.params.eta0 = *c.eta0;
    if (c.eta1) r.params.eta1 = *c.eta1;
    if (c.eta2) r.params.eta2 = *c.eta2;
    if (c.delta) r.params.delta = *c.delta;
    if (c.hbar) r.units.hbar = *c.hbar;
    if (c.mu) r.units.mu = *c.mu;
    if (c.n) r.n = *c.n;
    if (c.l) r.l = *c.l;
    if (c.N) r.N = *c.N;
    if (c.variant) r.variants = parse_variant_list(*c.variant);
  }
  if (f.units) r.units = unit_preset(*f.units);
  if (f.eta0) r.params.eta0 = *f.eta0;
  if (f.eta1) r.params.eta1 = *f.eta1;
  if (f.eta2) r.params.eta2 = *f.eta2;
  if (f.delta) r.params.delta = *f.delta;
  if (f.hbar) r.units.hbar = *f.hbar;
  if (f.mu) r.units.mu = *f.mu;
  if (f.state) {
    const auto q = parse_state_label(*f.state);
    r.n = q.n;
    r.l = q.l;
  }
  if (f.n) r.n = *f.n;
  if (f.l) r.l = *f.l;
  if (f.N) r.N = *f.N;
  if (f.variant) r.variants = parse_variant_list(*f.variant);
  r.format = parse_output_format(f.format);
  validate(r.params);
  validate(r.units);
  return r;
}

namespace detail {

inline std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

inline std::string g10(double v) { return vh::detail::format_g(v, 10); }

inline nlohmann::ordered_json inputs_json(const Resolved& r) {
  nlohmann::ordered_json j;
  j["eta0"] = r.params.eta0;
  j["eta1"] = r.params.eta1;
  j["eta2"] = r.params.eta2;
  j["delta"] = r.params.delta;
  j["hbar"] = r.units.hbar;
  j["mu"] = r.units.mu;
  j["N"] = r.N;
  return j;
}

inline nlohmann::ordered_json result_json(const std::string& state, std::string_view variant,
                                          double energy, double error_estimate) {
  nlohmann::ordered_json j;
  j["state"] = state;
  j["variant"] = std::string(variant);
  j["energy"] = energy;
  j["error_estimate"] = error_estimate;
  return j;
}

/// Sends `text` to --out when given, otherwise to `out`.
inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw ValidationError("cannot write '" + path + "'");
  f << text;
}

inline void add_common(CLI::App& app, CommonFlags& f, bool with_state = true) {
  app.add_option("--eta0", f.eta0, "Varshni strength eta0 (energy)");
  app.add_option("--eta1", f.eta1, "Varshni range eta1 (length)");
  app.add_option("--eta2", f.eta2, "Hulthen strength eta2 (energy)");
  app.add_option("--delta", f.delta, "screening parameter (inverse length)");
  app.add_option("--units", f.units, "unit preset: half (hbar = 2mu = 1) or atomic (hbar = mu = 1)");
  app.add_option("--hbar", f.hbar, "reduced Planck constant");
  app.add_option("--mu", f.mu, "reduced mass");
  if (with_state) {
    app.add_option("--state", f.state, "spectroscopic label such as 1s or 2p");
    app.add_option("--n", f.n, "radial quantum number");
  }
  app.add_option("--l", f.l, "angular momentum");
  app.add_option("--N", f.N, "space dimension");
  app.add_option("--variant", f.variant, "as-printed, ga1, ga2, empirical, a comma list, or all");
  app.add_option("--format", f.format, "text, csv or json");
  app.add_option("--config", f.config, "key = value run file; explicit flags win");
  app.add_option("--out", f.out, "write output to this file");
}

// ---- energy ---------------------------------------------------------------

inline std::string run_energy(const Resolved& r) {
  const QuantumState st = r.state();
  const std::string label = state_label(st);
  std::vector<EigenResult> results;
  for (auto v : r.variants)
    results.push_back(energy(r.params, r.units, st, v));

  std::ostringstream os;
  switch (r.format) {
  case OutputFormat::text:
    for (const auto& e : results)
      os << label << " N=" << r.N << ' ' << to_string(*e.variant) << ' ' << fixed9(e.energy)
         << '\n';
    break;
  case OutputFormat::csv:
    os << "state,N,variant,energy\n";
    for (const auto& e : results)
      os << label << ',' << r.N << ',' << to_string(*e.variant) << ',' << g10(e.energy) << '\n';
    break;
  case OutputFormat::json: {
    nlohmann::ordered_json j;
    j["inputs"] = inputs_json(r);
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& e : results)
      j["results"].push_back(result_json(label, to_string(*e.variant), e.energy, 0.0));
    os << j.dump(2) << '\n';
    break;
  }
  }
  return os.str();
}

// ---- states ---------------------------------------------------------------

inline std::string run_states(const Resolved& r, int n_max) {
  struct Row {
    SpectrumVariant v;
    EigenResult e;
  };
  std::vector<Row> rows;
  for (auto v : r.variants)
    for (auto& e : enumerate_bound_states(r.params, r.units, r.l, r.N, v, n_max))
      rows.push_back({v, std::move(e)});

  std::ostringstream os;
  switch (r.format) {
  case OutputFormat::text:
    if (rows.empty())
      os << "no bound states for l=" << r.l << " N=" << r.N << '\n';
    for (const auto& row : rows)
      os << state_label(*row.e.state) << " n=" << row.e.state->n() << ' ' << to_string(row.v)
         << ' ' << fixed9(row.e.energy) << '\n';
    break;
  case OutputFormat::csv:
    os << "state,n,l,N,variant,energy\n";
    for (const auto& row : rows)
      os << state_label(*row.e.state) << ',' << row.e.state->n() << ',' << r.l << ',' << r.N
         << ',' << to_string(row.v) << ',' << g10(row.e.energy) << '\n';
    break;
  case OutputFormat::json: {
    nlohmann::ordered_json j;
    j["inputs"] = inputs_json(r);
    j["inputs"]["l"] = r.l;
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& row : rows)
      j["results"].push_back(
          result_json(state_label(*row.e.state), to_string(row.v), row.e.energy, 0.0));
    os << j.dump(2) << '\n';
    break;
  }
  }
  return os.str();
}

// ---- wavefunction ---------------------------------------------------------

struct WavefunctionFlags {
  std::string norm = "numeric";
  std::optional<double> r_max;
  int samples = 400;
};

inline std::string run_wavefunction(const Resolved& r, const WavefunctionFlags& wf) {
  if (wf.samples < 2)
    throw ValidationError("--samples must be >= 2");
  const SpectrumVariant v = r.variants.front();
  const QuantumState st = r.state();
  const NormSource source = wf.norm == "analytic" ? NormSource::analytic
                            : wf.norm == "numeric"
                                ? NormSource::numeric
                                : throw ValidationError("--norm must be analytic or numeric");
  const auto spec = make_wavefunction_spec(r.params, r.units, st, v, source);
  const double norm = normalization(spec);
  const double e = energy(r.params, r.units, st, v).energy;
  const double r_max = wf.r_max.value_or(40.0 / r.params.delta);
  if (!(r_max > 0.0))
    throw ValidationError("--r-max must be positive");

  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= wf.samples; ++i) {
    const double x = r_max * i / wf.samples;
    pts.emplace_back(x, psi(spec, norm, x));
  }

  std::ostringstream os;
  if (r.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["inputs"] = inputs_json(r);
    auto res = result_json(state_label(st), to_string(v), e, 0.0);
    res["norm"] = norm;
    res["norm_source"] = wf.norm;
    res["nodes"] = count_nodes(spec, norm);
    j["results"] = nlohmann::ordered_json::array({res});
    j["samples"] = nlohmann::ordered_json::array();
    for (const auto& [x, y] : pts)
      j["samples"].push_back({x, y});
    os << j.dump(2) << '\n';
    return os.str();
  }
  if (r.format == OutputFormat::text)
    os << "# " << state_label(st) << " N=" << r.N << ' ' << to_string(v)
       << " E=" << fixed9(e) << " norm(" << wf.norm << ")=" << g10(norm) << '\n';
  os << "r,psi\n";
  for (const auto& [x, y] : pts)
    os << g10(x) << ',' << g10(y) << '\n';
  return os.str();
}

// ---- oracle ---------------------------------------------------------------

struct OracleFlags {
  std::string kind = "exact";
  int count = 3;
  std::optional<int> points, levels;
  std::optional<double> r_max, stretch;
  std::optional<std::string> potential_table;
};

inline std::string run_oracle(const Resolved& r, const OracleFlags& of) {
  GridSpec grid = GridSpec::for_screening(r.params.delta);
  if (of.points) grid.points = *of.points;
  if (of.levels) grid.refinement_levels = *of.levels;
  if (of.r_max) grid.r_max = *of.r_max;
  if (of.stretch) grid.stretch = *of.stretch;

  OracleResult res;
  std::optional<SpectrumVariant> compare_with;
  std::string kind_name;
  if (of.potential_table) {
    const auto table = load_potential_table(*of.potential_table);
    const QuantumState channel(0, r.l, r.N);
    const double k = r.units.kinetic();
    const double g = channel.gamma();
    res = solve_radial([&](double x) { return table(x) + k * g / (x * x); }, k, table.tail(),
                       grid, of.count);
    kind_name = "table";
  } else {
    const auto kind = parse_approximation_kind(of.kind);
    res = solve_radial(r.params, r.units, r.l, r.N, kind, grid, of.count);
    kind_name = std::string(to_string(kind));
    if (kind == ApproximationKind::ga_plain) compare_with = SpectrumVariant::ga1_consistent;
    if (kind == ApproximationKind::ga_expfactor) compare_with = SpectrumVariant::ga2_standard;
  }

  const auto closed = [&](int n) -> std::optional<double> {
    if (!compare_with)
      return std::nullopt;
    try {
      return energy(r.params, r.units, QuantumState(n, r.l, r.N), *compare_with).energy;
    } catch (const NoBoundState&) {
      return std::nullopt;
    }
  };

  std::ostringstream os;
  switch (r.format) {
  case OutputFormat::text:
    os << "# kind=" << kind_name << " l=" << r.l << " N=" << r.N << " threshold="
       << fixed9(res.threshold) << " r_max=" << g10(grid.r_max) << " points=" << grid.points
       << " levels=" << grid.refinement_levels << '\n';
    for (std::size_t i = 0; i < res.energies.size(); ++i) {
      const int n = static_cast<int>(i);
      os << state_label(n, r.l) << ' ' << fixed9(res.energies[i]) << " +/- "
         << vh::detail::format_e(res.error_estimates[i], 2) << " nodes=" << res.node_counts[i];
      if (const auto c = closed(n))
        os << ' ' << to_string(*compare_with) << '=' << fixed9(*c) << " diff="
           << vh::detail::format_e(*c - res.energies[i], 2);
      os << '\n';
    }
    if (res.energies.empty())
      os << "no bound states below threshold\n";
    break;
  case OutputFormat::csv:
    os << "state,energy,error_estimate,nodes\n";
    for (std::size_t i = 0; i < res.energies.size(); ++i)
      os << state_label(static_cast<int>(i), r.l) << ',' << g10(res.energies[i]) << ','
         << g10(res.error_estimates[i]) << ',' << res.node_counts[i] << '\n';
    break;
  case OutputFormat::json: {
    nlohmann::ordered_json j;
    j["inputs"] = inputs_json(r);
    j["inputs"]["l"] = r.l;
    j["inputs"]["kind"] = kind_name;
    j["results"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < res.energies.size(); ++i)
      j["results"].push_back(result_json(state_label(static_cast<int>(i), r.l), "oracle:" + kind_name,
                                         res.energies[i], res.error_estimates[i]));
    os << j.dump(2) << '\n';
    break;
  }
  }
  return os.str();
}

// ---- tables ---------------------------------------------------------------

struct TablesFlags {
  std::string table = "all";
  std::string variants = "all";
  std::string report_format = "markdown";
  bool empirical = false;
};

inline std::string run_tables(const TablesFlags& tf, const std::string& out_path,
                              std::ostream& out) {
  const auto variants = parse_variant_list(tf.variants);
  std::vector<TableId> ids;
  if (tf.table == "all")
    ids.assign(all_tables.begin(), all_tables.end());
  else
    for (auto part : vh::detail::split(tf.table, ','))
      ids.push_back(parse_table_id(part));

  std::vector<ConformanceRecord> records;
  for (auto id : ids) {
    auto part = compare_table(id, variants);
    records.insert(records.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  std::string text = emit_report(records, parse_report_format(tf.report_format));
  if (tf.empirical) {
    const auto rep = empirical_l0_check();
    text += tf.report_format == "csv" ? "" : "\n## Empirical l = 0 check\n\n```\n" + rep.text() + "```\n";
    if (!out_path.empty() || tf.report_format == "csv")
      out << "empirical l=0 check: " << (rep.all_passed() ? "PASS" : "FAIL") << " ("
          << rep.checks.size() << " cells)\n";
  }
  if (!out_path.empty()) {
    emit(text, out_path, out);
    std::ostringstream summary;
    for (const auto& g : evaluate_gates(records))
      summary << to_string(g.gate->table) << ' ' << g.gate->description << ": "
              << (g.passed ? "PASS" : "FAIL") << " max |dev| "
              << vh::detail::format_e(g.max_abs_deviation) << '\n';
    summary << "report written to " << out_path << '\n';
    return summary.str();
  }
  return text;
}

// ---- sweep ----------------------------------------------------------------

enum class SweepAxis { N, eta0, eta1, eta2, delta, mu };

inline SweepAxis parse_sweep_axis(std::string_view s) {
  if (s == "N") return SweepAxis::N;
  if (s == "eta0") return SweepAxis::eta0;
  if (s == "eta1") return SweepAxis::eta1;
  if (s == "eta2") return SweepAxis::eta2;
  if (s == "delta") return SweepAxis::delta;
  if (s == "mu") return SweepAxis::mu;
  throw ValidationError("unknown sweep axis '" + std::string(s) +
                        "' (expected N, eta0, eta1, eta2, delta or mu)");
}

struct SweepSpec {
  SweepAxis axis = SweepAxis::delta;
  double start = 0.0;
  double stop = 0.0;
  int steps = 2;
  std::vector<std::string> states{"1s"};
};

struct SweepRow {
  double axis_value = 0.0;
  std::string state;
  SpectrumVariant variant = SpectrumVariant::ga1_consistent;
  std::optional<double> energy;
  std::string flag;
};

inline void validate(const SweepSpec& s) {
  if (s.steps < 2)
    throw ValidationError("sweep needs steps >= 2");
  if (!std::isfinite(s.start) || !std::isfinite(s.stop) || s.start == s.stop)
    throw ValidationError("sweep needs finite start != stop");
  if ((s.axis == SweepAxis::delta || s.axis == SweepAxis::mu) && !(std::min(s.start, s.stop) > 0.0))
    throw ValidationError("delta and mu sweeps must stay positive");
  if (s.axis == SweepAxis::N) {
    for (int i = 0; i < s.steps; ++i) {
      const double v = s.start + (s.stop - s.start) * i / (s.steps - 1);
      if (std::abs(v - std::round(v)) > 1e-9 || std::round(v) < 1.0)
        throw ValidationError("N sweep must land on positive integers");
    }
  }
  if (s.states.empty())
    throw ValidationError("sweep needs at least one state");
  for (const auto& st : s.states)
    parse_state_label(st);
}

/// One row per (axis point, state, variant); axis points run in parallel and
/// rows come back in axis order.
inline std::vector<SweepRow> sweep(const SweepSpec& spec, const Resolved& base) {
  validate(spec);
  const auto point = [&](int i) {
    const double x = i == spec.steps - 1
                         ? spec.stop
                         : spec.start + (spec.stop - spec.start) * i / (spec.steps - 1);
    PotentialParams p = base.params;
    UnitSystem u = base.units;
    int dim = base.N;
    switch (spec.axis) {
    case SweepAxis::N: dim = static_cast<int>(std::lround(x)); break;
    case SweepAxis::eta0: p.eta0 = x; break;
    case SweepAxis::eta1: p.eta1 = x; break;
    case SweepAxis::eta2: p.eta2 = x; break;
    case SweepAxis::delta: p.delta = x; break;
    case SweepAxis::mu: u.mu = x; break;
    }
    std::vector<SweepRow> rows;
    for (const auto& label : spec.states) {
      const auto q = parse_state_label(label);
      for (auto v : base.variants) {
        SweepRow row{x, label, v, std::nullopt, ""};
        try {
          row.energy = energy(p, u, QuantumState(q.n, q.l, dim), v).energy;
        } catch (const NoBoundState&) {
          row.flag = "no-bound-state";
        }
        rows.push_back(std::move(row));
      }
    }
    return rows;
  };
  std::vector<std::future<std::vector<SweepRow>>> jobs;
  for (int i = 0; i < spec.steps; ++i)
    jobs.push_back(std::async(std::launch::async, point, i));
  std::vector<SweepRow> out;
  for (auto& j : jobs) {
    auto rows = j.get();
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

inline std::string run_sweep(const Resolved& r, const SweepSpec& spec) {
  const auto rows = sweep(spec, r);
  std::ostringstream os;
  if (r.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["inputs"] = inputs_json(r);
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      auto e = result_json(row.state, to_string(row.variant), row.energy.value_or(0.0), 0.0);
      if (!row.energy)
        e["energy"] = nullptr;
      e["axis_value"] = row.axis_value;
      e["flag"] = row.flag;
      j["results"].push_back(std::move(e));
    }
    os << j.dump(2) << '\n';
    return os.str();
  }
  os << "axis_value,state,variant,energy,flag\n";
  for (const auto& row : rows)
    os << g10(row.axis_value) << ',' << row.state << ',' << to_string(row.variant) << ','
       << (row.energy ? g10(*row.energy) : std::string()) << ',' << row.flag << '\n';
  return os.str();
}

// ---- potential ------------------------------------------------------------

struct PotentialFlags {
  double r_min = 0.1;
  double r_max = 40.0;
  int samples = 400;
  std::string plot;
};

struct CurvePoint {
  double r, varshni, hulthen, combined;
};

inline std::vector<CurvePoint> potential_curve(const PotentialParams& p, double r_min,
                                               double r_max, int samples) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw ValidationError("potential range needs 0 < r-min < r-max");
  if (samples < 2)
    throw ValidationError("--samples must be >= 2");
  validate(p);
  std::vector<CurvePoint> pts;
  for (int i = 0; i < samples; ++i) {
    const double r = i == samples - 1 ? r_max : r_min + (r_max - r_min) * i / (samples - 1);
    pts.push_back({r, varshni(p, r), hulthen(p, r), combined(p, r)});
  }
  return pts;
}

/// Minimal standalone SVG line plot of the three curves.
inline std::string potential_svg(const std::vector<CurvePoint>& pts) {
  constexpr double W = 640, H = 400, pad = 40;
  double lo = pts.front().combined, hi = lo;
  for (const auto& q : pts)
    for (double v : {q.varshni, q.hulthen, q.combined}) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (hi == lo)
    hi = lo + 1.0;
  const double r0 = pts.front().r, r1 = pts.back().r;
  const auto X = [&](double r) { return pad + (W - 2 * pad) * (r - r0) / (r1 - r0); };
  const auto Y = [&](double v) { return H - pad - (H - 2 * pad) * (v - lo) / (hi - lo); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\""
     << H - pad << "\" stroke=\"black\"/>\n<line x1=\"" << pad << "\" y1=\"" << pad
     << "\" x2=\"" << pad << "\" y2=\"" << H - pad << "\" stroke=\"black\"/>\n";
  const struct {
    const char* name;
    const char* colour;
    double CurvePoint::*field;
  } curves[] = {{"V_varshni", "#1f77b4", &CurvePoint::varshni},
                {"V_hulthen", "#2ca02c", &CurvePoint::hulthen},
                {"V_combined", "#d62728", &CurvePoint::combined}};
  int row = 0;
  for (const auto& c : curves) {
    os << "<polyline fill=\"none\" stroke=\"" << c.colour << "\" points=\"";
    for (const auto& q : pts)
      os << g10(X(q.r)) << ',' << g10(Y(q.*c.field)) << ' ';
    os << "\"/>\n<text x=\"" << W - pad - 110 << "\" y=\"" << pad + 16 * ++row << "\" fill=\""
       << c.colour << "\" font-size=\"12\">" << c.name << "</text>\n";
  }
  os << "<text x=\"" << pad << "\" y=\"" << H - 10 << "\" font-size=\"12\">r: " << g10(r0)
     << " to " << g10(r1) << "</text>\n<text x=\"4\" y=\"" << pad - 10
     << "\" font-size=\"12\">V: " << g10(lo) << " to " << g10(hi) << "</text>\n</svg>\n";
  return os.str();
}

inline std::string run_potential(const Resolved& r, const PotentialFlags& pf) {
  const auto pts = potential_curve(r.params, pf.r_min, pf.r_max, pf.samples);
  if (!pf.plot.empty())
    emit(potential_svg(pts), pf.plot, std::cout);
  std::ostringstream os;
  os << "r,V_varshni,V_hulthen,V_combined\n";
  for (const auto& q : pts)
    os << g10(q.r) << ',' << g10(q.varshni) << ',' << g10(q.hulthen) << ',' << g10(q.combined)
       << '\n';
  return os.str();
}

} // namespace detail

/// Exit code for an error escaping a subcommand.
inline int exit_code_of(const std::exception& e) noexcept {
  if (dynamic_cast<const NoBoundState*>(&e))
    return no_bound_state;
  if (dynamic_cast<const NumericalError*>(&e))
    return numerical;
  return invalid;
}

/// Runs the command line and returns the process exit code:
/// 0 success, 1 invalid input, 2 no bound state, 3 numerical failure.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Varshni-Hulthen bound states in N dimensions"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  CommonFlags common;
  std::string output;
  std::function<std::string()> action;

  auto* energy_cmd = app.add_subcommand("energy", "closed-form energy of one state");
  detail::add_common(*energy_cmd, common);
  energy_cmd->callback([&] { action = [&] { return detail::run_energy(resolve(common)); }; });

  int n_max = 20;
  auto* states_cmd = app.add_subcommand("states", "enumerate bound states of one (l, N) channel");
  detail::add_common(*states_cmd, common, false);
  states_cmd->add_option("--n-max", n_max, "largest radial number tried");
  states_cmd->callback([&] {
    action = [&] { return detail::run_states(resolve(common), n_max); };
  });

  detail::WavefunctionFlags wf;
  auto* wf_cmd = app.add_subcommand("wavefunction", "tabulate a normalized radial wavefunction");
  detail::add_common(*wf_cmd, common);
  wf_cmd->add_option("--norm", wf.norm, "analytic or numeric normalization");
  wf_cmd->add_option("--r-max", wf.r_max, "largest radius (default 40/delta)");
  wf_cmd->add_option("--samples", wf.samples, "number of intervals");
  wf_cmd->callback([&] {
    action = [&] { return detail::run_wavefunction(resolve(common), wf); };
  });

  detail::OracleFlags of;
  auto* oracle_cmd = app.add_subcommand("oracle", "finite-difference eigenvalues of one channel");
  detail::add_common(*oracle_cmd, common, false);
  oracle_cmd->add_option("--kind", of.kind, "exact, ga-plain or ga-expfactor");
  oracle_cmd->add_option("--count", of.count, "number of eigenvalues");
  oracle_cmd->add_option("--points", of.points, "grid intervals at the coarsest level");
  oracle_cmd->add_option("--r-max", of.r_max, "outer Dirichlet radius");
  oracle_cmd->add_option("--levels", of.levels, "grid doublings for extrapolation");
  oracle_cmd->add_option("--stretch", of.stretch, "grid stretch length");
  oracle_cmd->add_option("--potential-table", of.potential_table,
                         "CSV of r,V pairs replacing the built-in potential");
  oracle_cmd->callback([&] { action = [&] { return detail::run_oracle(resolve(common), of); }; });

  detail::TablesFlags tf;
  auto* tables_cmd = app.add_subcommand("tables", "audit the published tables");
  tables_cmd->add_option("--table", tf.table, "t1..t4, a comma list, or all");
  tables_cmd->add_option("--variants", tf.variants, "variants to compare (default all)");
  tables_cmd->add_option("--report-format", tf.report_format, "markdown or csv");
  tables_cmd->add_flag("--empirical", tf.empirical, "also run the l = 0 empirical check");
  tables_cmd->add_option("--out", common.out, "write the report to this file");
  tables_cmd->callback([&] {
    action = [&] { return detail::run_tables(tf, common.out, out); };
  });

  detail::SweepSpec sweep_spec;
  std::string axis = "delta";
  std::string sweep_states = "1s";
  auto* sweep_cmd = app.add_subcommand("sweep", "energies along one parameter axis");
  detail::add_common(*sweep_cmd, common, false);
  sweep_cmd->add_option("--axis", axis, "N, eta0, eta1, eta2, delta or mu");
  sweep_cmd->add_option("--start", sweep_spec.start)->required();
  sweep_cmd->add_option("--stop", sweep_spec.stop)->required();
  sweep_cmd->add_option("--steps", sweep_spec.steps);
  sweep_cmd->add_option("--states", sweep_states, "comma list of state labels");
  sweep_cmd->callback([&] {
    action = [&] {
      sweep_spec.axis = detail::parse_sweep_axis(axis);
      sweep_spec.states.clear();
      for (auto s : vh::detail::split(sweep_states, ','))
        sweep_spec.states.emplace_back(s);
      return detail::run_sweep(resolve(common), sweep_spec);
    };
  });

  detail::PotentialFlags pf;
  auto* pot_cmd = app.add_subcommand("potential", "tabulate the potential curves");
  detail::add_common(*pot_cmd, common, false);
  pot_cmd->add_option("--r-min", pf.r_min);
  pot_cmd->add_option("--r-max", pf.r_max);
  pot_cmd->add_option("--samples", pf.samples, "number of grid points");
  pot_cmd->add_option("--plot", pf.plot, "also write an SVG plot here");
  pot_cmd->callback([&] {
    action = [&] { return detail::run_potential(resolve(common), pf); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : invalid;
  }

  try {
    output = action();
    detail::emit(output, tables_cmd->parsed() ? std::string() : common.out, out);
    return ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_of(e);
  }
}

} // namespace vh::cli
