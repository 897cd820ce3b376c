#pragma once

// JSON, text and LaTeX renderings of the library's result types.

#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fatpoints/nagata.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/qseries.hpp"
#include "fatpoints/scan.hpp"
#include "fatpoints/sl2.hpp"

namespace fatpoints {

using json = nlohmann::json;

inline void to_json(json& j, const TruncSeries& s) { j = s.coeffs(); }
inline void from_json(const json& j, TruncSeries& s) { s = TruncSeries(j.get<std::vector<Int>>()); }

/// {"p": multiplicity, ...}
inline void to_json(json& j, const DecompositionTable& t) {
  j = json::object();
  for (auto [p, m] : t.irrep_mults) j[std::to_string(p)] = m;
}
inline void from_json(const json& j, DecompositionTable& t) {
  t.irrep_mults.clear();
  for (auto it = j.begin(); it != j.end(); ++it) t.irrep_mults[std::stoll(it.key())] = it.value().get<Int>();
}

inline void to_json(json& j, const TraceRecord& t) {
  j = json{{"step", t.step}, {"r", t.r_in}, {"k", t.k_in}, {"r_out", t.r_out}, {"k_out", t.k_out}};
  if (t.value) j["value"] = *t.value;
  if (t.step == 6) j["offset"] = t.offset;
}

inline void to_json(json& j, const AlgorithmTrace& t) {
  j = json::array();
  for (const auto& rec : t.steps) j.push_back(rec);
}

inline void to_json(json& j, const SeedOutcome& s) {
  j = json{{"seed", s.seed}, {"h", s.h}, {"rank", s.rank}};
  if (s.d) j["d"] = *s.d;
}

inline void to_json(json& j, const RankResult& r) {
  j = json{{"value_h", r.value_h},     {"value_d", r.value_d},
           {"rank", r.rank},           {"rows", r.rows},
           {"cols", r.cols},           {"method", to_string(r.method)},
           {"seeds_used", r.seeds_used}, {"consensus", r.consensus},
           {"per_seed", r.per_seed},   {"n", r.n},
           {"prime", r.prime},         {"kind", to_string(r.kind)}};
  if (r.method == OracleMethod::both) j["duality_agrees"] = r.duality_agrees;
}

inline void to_json(json& j, const SeriesMismatch& m) {
  j = json{{"degree", m.degree}, {"computed", m.computed}, {"expected", m.expected}};
}

inline void to_json(json& j, const AppendixReport& r) {
  j = json{{"ok", r.ok()}, {"compared", r.compared}, {"mismatches", r.mismatches}};
}

inline void to_json(json& j, const FailureReproduction& f) {
  j = f.record;
  j["h_algorithm"] = f.h_algorithm;
  j["strict"] = f.strict();
  j["algorithm_agrees"] = f.algorithm_agrees();
}

inline void to_json(json& j, const ProbeCell& c) { j = json{{"m", c.m}, {"k", c.k}, {"d", c.d}, {"c", c.c}}; }

inline void to_json(json& j, const ProbeReport& r) {
  j = json{{"l", r.l}, {"s", r.s}, {"ok", r.ok()}, {"cells", r.cells}, {"violations", r.violations}};
}

/// Descending powers, zero terms omitted: "375 q^{173} + ... + 3 q^{1} + 1".
inline std::string to_latex(const TruncSeries& s) {
  std::ostringstream os;
  bool first = true;
  for (Int k = s.degree(); k >= 0; --k) {
    const Int c = s[k];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const Int mag = c < 0 ? -c : c;
    if (k == 0) os << mag;
    else os << mag << " q^{" << k << "}";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

inline std::string to_text(const DecompositionTable& t) {
  std::ostringstream os;
  for (auto it = t.irrep_mults.rbegin(); it != t.irrep_mults.rend(); ++it) os << it->first << ": " << it->second << '\n';
  return os.str();
}

inline std::string to_text(const AlgorithmTrace& t) {
  std::ostringstream os;
  auto vec = [](const std::vector<Int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  for (const auto& rec : t.steps) {
    os << "step " << rec.step << ": " << vec(rec.r_in) << " k=" << rec.k_in;
    if (rec.value) {
      os << " -> " << *rec.value;
    } else {
      os << " -> " << vec(rec.r_out) << " k=" << rec.k_out;
      if (rec.step == 6) os << " (+" << rec.offset << ")";
    }
    os << '\n';
  }
  return os.str();
}

inline std::string to_csv(const TruncSeries& s) {
  std::ostringstream os;
  os << "k,coefficient\n";
  for (std::size_t k = 0; k < s.size(); ++k) os << k << ',' << s.coeffs()[k] << '\n';
  return os.str();
}

inline std::string to_csv(const std::vector<ScanRecord>& recs) {
  std::ostringstream os;
  os << "l,r,k,h,c,equal,method,prime,seeds,timestamp,error\n";
  for (const auto& s : recs) {
    os << s.l << ',';
    if (auto u = s.uniform_r()) os << *u << 'x' << s.l;
    else
      for (std::size_t i = 0; i < s.r.size(); ++i) os << (i ? ";" : "") << s.r[i];
    os << ',' << s.k << ',' << s.h << ',' << s.c << ',' << (s.equal ? "true" : "false") << ',' << s.method << ','
       << s.prime << ',';
    for (std::size_t i = 0; i < s.seeds.size(); ++i) os << (i ? ";" : "") << s.seeds[i];
    os << ',' << s.timestamp << ',' << (s.error ? *s.error : "") << '\n';
  }
  return os.str();
}

}  // namespace fatpoints
