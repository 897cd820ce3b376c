#pragma once

// Command-line front end. `parse_args` turns argv into a ProblemSpec and
// `run` dispatches it, writing results to `out` and diagnostics to `err`.
//
// Exit codes: 0 success, 1 usage or domain error, 2 internal invariant breach
// (including algorithm/oracle disagreement under --method both).

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11/CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fatpoints/errors.hpp"
#include "fatpoints/io.hpp"
#include "fatpoints/nagata.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/qseries.hpp"
#include "fatpoints/scan.hpp"
#include "fatpoints/sl2.hpp"

namespace fatpoints::cli {

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by parse_args for --help; carries the rendered help text.
struct help_requested {
  std::string text;
};

enum class Mode { dim, series, oracle, decompose, scan, verify_appendix, probe };
enum class Format { json, text, csv, latex };

struct ProblemSpec {
  Mode mode = Mode::dim;
  int n = 2;
  std::optional<Int> l;
  std::optional<std::vector<Int>> r;
  std::optional<std::vector<Int>> m;
  std::optional<Int> k;
  std::optional<Int> k_max;
  std::string which = "H";
  PointKind kind = PointKind::generic;
  std::vector<u64> seeds{1, 2, 3};
  u64 prime = PrimeField::kMersenne61;
  std::string method;  // empty: the mode's default
  Format format = Format::json;
  std::vector<Int> factors;
  Int r_min = 1;
  Int r_max = 0;
  Int m_max = 0;
  std::string cache_dir;
  bool failures = false;
  bool full_oracle = false;
  std::vector<Int> degrees;
  bool trace = false;
};

/// "3,3,3", "120x10" (value 120 repeated 10 times), or a mix like "3x2,5".
inline std::vector<Int> parse_int_vector(const std::string& text, const std::string& flag) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [&](const std::string& s) -> Int {
    std::size_t used = 0;
    Int v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw usage_error(flag + ": malformed integer '" + s + "'");
    }
    if (used != s.size()) throw usage_error(flag + ": malformed integer '" + s + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw usage_error(flag + ": empty entry in '" + text + "'");
    const auto x = item.find('x');
    if (x == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const Int value = to_int(item.substr(0, x));
    const Int count = to_int(item.substr(x + 1));
    if (count < 1) throw usage_error(flag + ": repeat count must be positive in '" + item + "'");
    out.insert(out.end(), static_cast<std::size_t>(count), value);
  }
  if (out.empty()) throw usage_error(flag + ": empty vector");
  return out;
}

inline std::vector<u64> parse_seeds(const std::string& text) {
  std::vector<u64> out;
  for (Int v : parse_int_vector(text, "--seeds")) {
    if (v < 0) throw usage_error("--seeds: seeds must be nonnegative");
    out.push_back(static_cast<u64>(v));
  }
  return out;
}

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  if (s == "latex") return Format::latex;
  throw usage_error("--format: unknown format '" + s + "'");
}

namespace detail {

struct RawFlags {
  int n = 2;
  Int l = 0;
  std::string r, m, seeds, factors, degrees, kind = "generic", format = "json", method, which = "H";
  Int k = 0, k_max = 0, r_min = 1, r_max = 0, m_max = 0;
  u64 prime = PrimeField::kMersenne61;
  std::string cache_dir;
  bool failures = false, full_oracle = false, trace = false;
};

}  // namespace detail

/// Parses argv. Throws usage_error on invalid input and help_requested for
/// --help.
inline ProblemSpec parse_args(int argc, const char* const* argv) {
  CLI::App app{"Dimensions of spaces of plane curves through fat points"};
  app.require_subcommand(1);
  detail::RawFlags f;

  auto problem_flags = [&](CLI::App* sc) {
    sc->add_option("-n,--dim", f.n, "projective dimension")->check(CLI::PositiveNumber);
    sc->add_option("-l,--points", f.l, "number of points");
    sc->add_option("-r,--remainders", f.r, "remainder vector, e.g. 3,3,3 or 120x10");
    sc->add_option("-m,--multiplicities", f.m, "multiplicity vector");
    sc->add_option("-k,--degree", f.k, "degree");
  };
  auto oracle_flags = [&](CLI::App* sc) {
    sc->add_option("--kind", f.kind, "generic|collinear|conic|cubic|standard_plus_generic");
    sc->add_option("--seeds", f.seeds, "comma-separated seeds (default 1,2,3)");
    sc->add_option("--prime", f.prime, "prime modulus (default 2^61-1)");
  };
  auto format_flag = [&](CLI::App* sc) { sc->add_option("--format", f.format, "json|text|csv|latex"); };

  auto* dim = app.add_subcommand("dim", "h(r;k) or d(m;k) for one degree");
  problem_flags(dim);
  oracle_flags(dim);
  format_flag(dim);
  dim->add_option("--method", f.method, "algorithm|oracle|both");
  dim->add_flag("--trace", f.trace, "include the algorithm trace");

  auto* series = app.add_subcommand("series", "H_r or C_r as a list of coefficients");
  problem_flags(series);
  oracle_flags(series);
  format_flag(series);
  series->add_option("--kmax", f.k_max, "top degree");
  series->add_option("--which", f.which, "H|C");
  series->add_option("--method", f.method, "algorithm|oracle (for H)");

  auto* oracle = app.add_subcommand("oracle", "rank oracle over a prime field");
  problem_flags(oracle);
  oracle_flags(oracle);
  format_flag(oracle);
  oracle->add_option("--method", f.method, "dual|deriv|both");

  auto* decompose_cmd = app.add_subcommand("decompose", "decompose L^{f1} x ... x L^{fm}");
  decompose_cmd->add_option("-f,--factors", f.factors, "tensor factor dimensions")->required();
  format_flag(decompose_cmd);

  auto* scan = app.add_subcommand("scan", "sweep H against C for equal multiplicities");
  scan->add_option("-l,--points", f.l, "number of points");
  scan->add_option("--rmin", f.r_min, "smallest r");
  scan->add_option("--rmax", f.r_max, "largest r");
  scan->add_option("--method", f.method, "algorithm|oracle");
  scan->add_option("--cache-dir", f.cache_dir, std::string("cache directory (default $") + kCacheDirEnv + ")");
  scan->add_flag("--failures", f.failures, "reproduce the documented failures of H = C");
  oracle_flags(scan);
  format_flag(scan);

  auto* verify = app.add_subcommand("verify-appendix", "check C_{10,120} against the golden series");
  verify->add_flag("--full-oracle", f.full_oracle, "also run the rank oracle (very slow)");
  verify->add_option("--degrees", f.degrees, "degrees for --full-oracle (default all)");
  oracle_flags(verify);
  format_flag(verify);

  auto* probe = app.add_subcommand("probe", "Nagata's inequality for a square number of points");
  probe->add_option("-l,--points", f.l, "number of points (a square above 9)");
  probe->add_option("--mmax", f.m_max, "largest multiplicity");
  oracle_flags(probe);
  format_flag(probe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    const auto subs = app.get_subcommands();
    throw help_requested{subs.empty() ? app.help() : subs.front()->help()};
  } catch (const CLI::ParseError& e) {
    throw usage_error(e.what());
  }

  ProblemSpec spec;
  if (dim->parsed()) spec.mode = Mode::dim;
  else if (series->parsed()) spec.mode = Mode::series;
  else if (oracle->parsed()) spec.mode = Mode::oracle;
  else if (decompose_cmd->parsed()) spec.mode = Mode::decompose;
  else if (scan->parsed()) spec.mode = Mode::scan;
  else if (verify->parsed()) spec.mode = Mode::verify_appendix;
  else spec.mode = Mode::probe;

  auto* active = app.get_subcommands().front();
  auto given = [&](const std::string& name) {
    const auto* opt = active->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };

  spec.n = f.n;
  if (given("-l")) spec.l = f.l;
  if (given("-r")) spec.r = parse_int_vector(f.r, "-r");
  if (given("-m")) spec.m = parse_int_vector(f.m, "-m");
  if (given("-k")) spec.k = f.k;
  if (given("--kmax")) spec.k_max = f.k_max;
  spec.which = f.which;
  try {
    spec.kind = point_kind_from_string(f.kind);
  } catch (const domain_error&) {
    throw usage_error("--kind: unknown kind '" + f.kind + "'");
  }
  if (given("--seeds")) spec.seeds = parse_seeds(f.seeds);
  spec.prime = f.prime;
  spec.method = f.method;
  spec.format = parse_format(f.format);
  if (given("-f")) spec.factors = parse_int_vector(f.factors, "-f");
  if (given("--degrees")) spec.degrees = parse_int_vector(f.degrees, "--degrees");
  spec.r_min = f.r_min;
  spec.r_max = f.r_max;
  spec.m_max = f.m_max;
  spec.cache_dir = f.cache_dir;
  spec.failures = f.failures;
  spec.full_oracle = f.full_oracle;
  spec.trace = f.trace;
  return spec;
}

namespace detail {

inline void validate_field(const ProblemSpec& s, Int top_degree) {
  if (!is_prime_u64(s.prime) || s.prime >= (u64{1} << 63)) {
    throw usage_error("--prime: " + std::to_string(s.prime) + " is not a prime below 2^63");
  }
  if (top_degree >= 0 && s.prime <= static_cast<u64>(top_degree)) {
    throw usage_error("--prime: " + std::to_string(s.prime) + " must exceed the degree " + std::to_string(top_degree));
  }
  if (s.seeds.empty()) throw usage_error("--seeds: at least one seed is required");
}

inline OracleOptions oracle_options(const ProblemSpec& s, OracleMethod method = OracleMethod::dual_span) {
  return OracleOptions{s.kind, s.seeds, s.prime, method};
}

/// The problem's remainder vector at degree k, from -r or -m, expanded to l
/// entries when a single value is given together with -l.
inline RemainderVector problem_vector(const ProblemSpec& s, Int k) {
  if (s.r.has_value() == s.m.has_value()) throw usage_error("-r/-m: give exactly one of them");
  std::vector<Int> v = s.r ? *s.r : *s.m;
  const std::string flag = s.r ? "-r" : "-m";
  if (s.l) {
    if (v.size() == 1) v.assign(static_cast<std::size_t>(*s.l), v.front());
    if (static_cast<Int>(v.size()) != *s.l) {
      throw usage_error(flag + ": has " + std::to_string(v.size()) + " entries but -l is " + std::to_string(*s.l));
    }
  }
  if (s.m) {
    for (Int mi : v) {
      if (mi < 0) throw usage_error("-m: multiplicities must be nonnegative");
    }
    return to_remainders(MultiplicityVector{v, s.n}, k);
  }
  return RemainderVector{v, s.n};
}

inline Int require_k(const ProblemSpec& s) {
  if (!s.k) throw usage_error("-k: degree is required");
  return *s.k;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

inline int run_dim(const ProblemSpec& s, std::ostream& out, std::ostream& err) {
  const Int k = require_k(s);
  RemainderVector r = problem_vector(s, k);
  const std::string method = s.method.empty() ? "algorithm" : s.method;
  if (method != "algorithm" && method != "oracle" && method != "both") {
    throw usage_error("--method: expected algorithm, oracle or both, got '" + method + "'");
  }
  const bool use_alg = method != "oracle";
  const bool use_oracle = method != "algorithm";

  json j{{"n", s.n}, {"k", k}, {"r", r.entries}};
  if (s.m) j["m"] = to_multiplicities(r, k).entries;
  if (s.n == 2) j["c"] = virtual_dim_c(r, k);

  std::optional<Int> alg_value;
  std::optional<Int> oracle_value;
  AlgorithmTrace trace;
  if (use_alg) {
    if (s.n == 1) {
      alg_value = k < 0 ? 0 : h_line(r.entries, k);
      j["method"] = to_string(HMethod::closed_form_p1);
    } else if (s.n == 2) {
      // entries r_i > k never matter; dropping them first also serves d(m;k) with m_i = 0
      HValue hv = s.m ? d_multiplicity(to_multiplicities(r, k), k) : h_nagata(r, k);
      alg_value = hv.value;
      trace = std::move(hv.trace);
      j["method"] = to_string(hv.method);
    } else {
      throw domain_error("the algorithm covers n = 1 and n = 2; use --method oracle");
    }
  }
  if (use_oracle) {
    validate_field(s, k);
    RankResult rr = oracle_h(r, k, oracle_options(s));
    oracle_value = rr.value_h;
    j["oracle"] = rr;
    if (!use_alg) j["method"] = to_string(HMethod::oracle);
  }
  const Int h = alg_value ? *alg_value : *oracle_value;
  j["h"] = h;
  if (s.m) j["d"] = h;
  if (s.trace && use_alg) j["trace"] = trace;

  int code = 0;
  if (alg_value && oracle_value && *alg_value != *oracle_value) {
    err << "error: algorithm gives " << *alg_value << " but the oracle gives " << *oracle_value << '\n';
    j["agree"] = false;
    code = 2;
  } else if (alg_value && oracle_value) {
    j["agree"] = true;
  }

  if (s.format == Format::text) {
    out << (s.m ? "d = " : "h = ") << h << '\n';
    if (s.trace && use_alg) out << to_text(trace);
  } else {
    emit(out, j);
  }
  return code;
}

inline int run_series(const ProblemSpec& s, std::ostream& out, std::ostream&) {
  if (!s.r) throw usage_error("-r: series needs a remainder vector");
  std::vector<Int> v = *s.r;
  if (s.l && v.size() == 1) v.assign(static_cast<std::size_t>(*s.l), v.front());
  if (s.l && static_cast<Int>(v.size()) != *s.l) throw usage_error("-r: length disagrees with -l");
  const RemainderVector r{v, s.n};
  for (Int ri : v) {
    if (ri < 1) throw usage_error("-r: series entries must be positive");
  }
  const Int top = s.k_max ? *s.k_max : default_k_max(v);
  TruncSeries series;
  if (s.which == "C") {
    if (s.n != 2) throw domain_error("C_r is planar; use -n 2");
    series = virtual_series_C(r, top);
  } else if (s.which == "H") {
    const std::string method = s.method.empty() ? "algorithm" : s.method;
    if (method == "algorithm") {
      series = hilbert_series_H(r, top);
    } else if (method == "oracle") {
      validate_field(s, top);
      std::vector<Int> c;
      for (Int k = 0; k <= top; ++k) c.push_back(oracle_h(r, k, oracle_options(s)).value_h);
      series = TruncSeries(std::move(c));
    } else {
      throw usage_error("--method: expected algorithm or oracle, got '" + method + "'");
    }
  } else {
    throw usage_error("--which: expected H or C, got '" + s.which + "'");
  }
  switch (s.format) {
    case Format::json: emit(out, json(series)); break;
    case Format::latex: out << to_latex(series) << '\n'; break;
    case Format::csv: out << to_csv(series); break;
    case Format::text:
      for (std::size_t k = 0; k < series.size(); ++k) out << k << ' ' << series.coeffs()[k] << '\n';
      break;
  }
  return 0;
}

inline int run_oracle(const ProblemSpec& s, std::ostream& out, std::ostream& err) {
  const Int k = require_k(s);
  const RemainderVector r = problem_vector(s, k);
  validate_field(s, k);
  OracleMethod method = OracleMethod::dual_span;
  if (!s.method.empty()) {
    try {
      method = oracle_method_from_string(s.method);
    } catch (const domain_error&) {
      throw usage_error("--method: expected dual, deriv or both, got '" + s.method + "'");
    }
  }
  const RankResult rr = oracle_h(r, k, oracle_options(s, method));
  if (s.format == Format::text) {
    out << "h = " << rr.value_h << " (rank " << rr.rank << " of " << rr.rows << "x" << rr.cols
        << (rr.consensus ? ", consensus" : ", seeds disagree") << ")\n";
  } else {
    emit(out, json(rr));
  }
  if (!rr.consensus) {
    err << "warning: seeds disagree:";
    for (const auto& ps : rr.per_seed) err << " seed " << ps.seed << " -> " << ps.h << ';';
    err << '\n';
  }
  if (method == OracleMethod::both && !rr.duality_agrees) {
    err << "error: dual span and derivative conditions disagree\n";
    return 2;
  }
  return 0;
}

inline int run_decompose(const ProblemSpec& s, std::ostream& out, std::ostream&) {
  for (Int fct : s.factors) {
    if (fct < 1) throw usage_error("-f: factors must be positive");
  }
  const DecompositionTable t = decompose(s.factors);
  if (s.format == Format::text) out << to_text(t);
  else emit(out, json(t));
  return 0;
}

inline int run_scan(const ProblemSpec& s, std::ostream& out, std::ostream& err) {
  if (s.failures) {
    Int top = 0;
    for (const auto& fc : documented_failures()) top = std::max(top, fc.k);
    validate_field(s, top);
    const auto reps = reproduce_failures(oracle_options(s));
    int code = 0;
    for (const auto& rep : reps) {
      if (!rep.strict() || !rep.algorithm_agrees()) {
        err << "error: failure case l=" << rep.record.l << " k=" << rep.record.k << " not reproduced (h=" << rep.record.h
            << ", c=" << rep.record.c << ", algorithm=" << rep.h_algorithm << ")\n";
        code = 2;
      }
    }
    emit(out, json(reps));
    return code;
  }
  if (!s.l) throw usage_error("-l: scan needs the number of points");
  if (s.r_max < 1) throw usage_error("--rmax: must be at least 1");
  ScanMethod method = ScanMethod::algorithm;
  if (!s.method.empty()) {
    try {
      method = scan_method_from_string(s.method);
    } catch (const domain_error&) {
      throw usage_error("--method: expected algorithm or oracle, got '" + s.method + "'");
    }
  }
  if (method == ScanMethod::oracle) validate_field(s, 3 * s.r_max - 2);
  auto cache = ResultCache::open_default(s.cache_dir);
  const auto recs = scan_uniform(*s.l, s.r_max, method, oracle_options(s), cache ? &*cache : nullptr, s.r_min);
  if (s.format == Format::csv) out << to_csv(recs);
  else emit(out, json(recs));
  return 0;
}

inline int run_verify(const ProblemSpec& s, std::ostream& out, std::ostream& err) {
  const AppendixReport rep = verify_appendix();
  json j{{"closed_form", rep}};
  int code = rep.ok() ? 0 : 2;
  if (s.full_oracle) {
    validate_field(s, 174);
    const AppendixReport orep = verify_appendix_oracle(oracle_options(s), s.degrees);
    j["oracle"] = orep;
    if (!orep.ok()) code = 2;
  }
  for (const auto& mm : rep.mismatches) {
    err << "mismatch at degree " << mm.degree << ": computed " << mm.computed << ", expected " << mm.expected << '\n';
  }
  if (s.format == Format::text) {
    out << (code == 0 ? "ok" : "MISMATCH") << ": compared " << rep.compared << " coefficients\n";
  } else {
    emit(out, j);
  }
  return code;
}

inline int run_probe(const ProblemSpec& s, std::ostream& out, std::ostream& err) {
  if (!s.l) throw usage_error("-l: probe needs the number of points");
  if (s.m_max < 1) throw usage_error("--mmax: must be at least 1");
  const Int root = static_cast<Int>(std::llround(std::sqrt(static_cast<double>(*s.l))));
  if (root * root != *s.l || *s.l <= 9) throw usage_error("-l: must be a perfect square above 9");
  validate_field(s, root * s.m_max);
  const ProbeReport rep = nagata_inequality_probe(*s.l, s.m_max, oracle_options(s));
  for (const auto& v : rep.violations) {
    err << "finding: d = " << v.d << " at m = " << v.m << ", k = " << v.k << '\n';
  }
  if (s.format == Format::text) {
    out << (rep.ok() ? "ok" : "VIOLATION") << ": " << rep.cells.size() << " cells checked\n";
  } else {
    emit(out, json(rep));
  }
  return rep.ok() ? 0 : 2;
}

}  // namespace detail

inline int run(const ProblemSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    switch (spec.mode) {
      case Mode::dim: return detail::run_dim(spec, out, err);
      case Mode::series: return detail::run_series(spec, out, err);
      case Mode::oracle: return detail::run_oracle(spec, out, err);
      case Mode::decompose: return detail::run_decompose(spec, out, err);
      case Mode::scan: return detail::run_scan(spec, out, err);
      case Mode::verify_appendix: return detail::run_verify(spec, out, err);
      case Mode::probe: return detail::run_probe(spec, out, err);
    }
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const capacity_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

/// parse_args + run, for main().
inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  ProblemSpec spec;
  try {
    spec = parse_args(argc, argv);
  } catch (const help_requested& h) {
    out << h.text;
    return 0;
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  }
  return run(spec, out, err);
}

}  // namespace fatpoints::cli
