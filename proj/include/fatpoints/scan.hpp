#pragma once

// Conjecture exploration: H versus C sweeps, the documented failure cases,
// Nagata-inequality probes, and the golden H_{10,120} series. Sweep results
// persist in an append-only JSON-lines cache.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fatpoints/errors.hpp"
#include "fatpoints/nagata.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/qseries.hpp"

namespace fatpoints {

struct ScanRecord {
  Int l = 0;
  std::vector<Int> r;
  Int k = 0;
  Int h = 0;
  Int c = 0;
  bool equal = true;
  std::string method;
  std::vector<u64> seeds;
  u64 prime = 0;
  std::string timestamp;
  std::optional<std::string> error;

  /// Uniform multiplicity when all entries agree.
  std::optional<Int> uniform_r() const {
    if (r.empty()) return std::nullopt;
    for (Int x : r) {
      if (x != r.front()) return std::nullopt;
    }
    return r.front();
  }
};

inline void to_json(nlohmann::json& j, const ScanRecord& s) {
  j = nlohmann::json{{"l", s.l},           {"r", s.r},         {"k", s.k},
                     {"h", s.h},           {"c", s.c},         {"equal", s.equal},
                     {"method", s.method}, {"seeds", s.seeds}, {"prime", s.prime},
                     {"timestamp", s.timestamp}};
  if (s.error) j["error"] = *s.error;
}

inline void from_json(const nlohmann::json& j, ScanRecord& s) {
  j.at("l").get_to(s.l);
  j.at("r").get_to(s.r);
  j.at("k").get_to(s.k);
  j.at("h").get_to(s.h);
  j.at("c").get_to(s.c);
  j.at("equal").get_to(s.equal);
  j.at("method").get_to(s.method);
  j.at("seeds").get_to(s.seeds);
  j.at("prime").get_to(s.prime);
  j.at("timestamp").get_to(s.timestamp);
  if (j.contains("error")) s.error = j.at("error").get<std::string>();
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// 64-bit FNV-1a over the comma-joined entries; stable across platforms.
inline std::string vector_hash(const std::vector<Int>& r) {
  std::uint64_t h = 1469598103934665603ull;
  std::string text;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) text += ',';
    text += std::to_string(r[i]);
  }
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline std::string cache_key(Int l, const std::vector<Int>& r, Int k, const std::string& method, u64 prime,
                             const std::vector<u64>& seeds) {
  std::ostringstream os;
  os << "l=" << l << ";r=" << vector_hash(r) << ";k=" << k << ";method=" << method << ";prime=" << prime
     << ";seeds=";
  for (std::size_t i = 0; i < seeds.size(); ++i) os << (i ? "," : "") << seeds[i];
  return os.str();
}

inline std::string cache_key(const ScanRecord& s) { return cache_key(s.l, s.r, s.k, s.method, s.prime, s.seeds); }

/// Environment variable naming the default cache directory.
inline constexpr const char* kCacheDirEnv = "FATPOINTS_CACHE_DIR";

/// Append-only record store, one JSON object per line. Safe to share between
/// threads; appends are serialized. Lines from parallel workers can be
/// concatenated into one file. Later lines win on duplicate keys.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path file) : file_(std::move(file)) {
    if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
    std::ifstream in(file_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        auto rec = nlohmann::json::parse(line).get<ScanRecord>();
        entries_[cache_key(rec)] = std::move(rec);
      } catch (const nlohmann::json::exception&) {
        // a torn final line from an interrupted run is skipped
      }
    }
  }

  /// Cache file inside `dir`, or inside $FATPOINTS_CACHE_DIR when dir is empty.
  static std::optional<ResultCache> open_default(const std::string& dir) {
    std::string base = dir;
    if (base.empty()) {
      if (const char* env = std::getenv(kCacheDirEnv)) base = env;
    }
    if (base.empty()) return std::nullopt;
    return std::optional<ResultCache>(std::in_place, std::filesystem::path(base) / "scan.jsonl");
  }

  std::optional<ScanRecord> lookup(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void append(const ScanRecord& rec) {
    std::lock_guard lock(mu_);
    std::ofstream out(file_, std::ios::app);
    out << nlohmann::json(rec).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("failed to append to cache " + file_.string());
    entries_[cache_key(rec)] = rec;
    ++appended_;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }
  std::size_t appended() const {
    std::lock_guard lock(mu_);
    return appended_;
  }
  const std::filesystem::path& path() const noexcept { return file_; }

 private:
  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::map<std::string, ScanRecord> entries_;
  std::size_t appended_ = 0;
};

// ---------------------------------------------------------------------------
// Golden data

struct GoldenSeries {
  std::string name;
  std::vector<Int> coefficients;  // degree-ascending
  std::string source;
};

/// The Hilbert series of ten generic points in P^2 with r = 120, degrees
/// 0..173 (all higher coefficients vanish).
inline const GoldenSeries& golden_H_10_120() {
  static const GoldenSeries g{
      "H_10_120",
      {
        1, 3, 6, 10, 15, 21, 28, 36, 45, 55,
        66, 78, 91, 105, 120, 136, 153, 171, 190, 210,
        231, 253, 276, 300, 325, 351, 378, 406, 435, 465,
        496, 528, 561, 595, 630, 666, 703, 741, 780, 820,
        861, 903, 946, 990, 1035, 1081, 1128, 1176, 1225, 1275,
        1326, 1378, 1431, 1485, 1540, 1596, 1653, 1711, 1770, 1830,
        1891, 1953, 2016, 2080, 2145, 2211, 2278, 2346, 2415, 2485,
        2556, 2628, 2701, 2775, 2850, 2926, 3003, 3081, 3160, 3240,
        3321, 3403, 3486, 3570, 3655, 3741, 3828, 3916, 4005, 4095,
        4186, 4278, 4371, 4465, 4560, 4656, 4753, 4851, 4950, 5050,
        5151, 5253, 5356, 5460, 5565, 5671, 5778, 5886, 5995, 6105,
        6216, 6328, 6441, 6555, 6670, 6786, 6903, 7021, 7140, 7260,
        7371, 7473, 7566, 7650, 7725, 7791, 7848, 7896, 7935, 7965,
        7986, 7998, 8001, 7995, 7980, 7956, 7923, 7881, 7830, 7770,
        7701, 7623, 7536, 7440, 7335, 7221, 7098, 6966, 6825, 6675,
        6516, 6348, 6171, 5985, 5790, 5586, 5373, 5151, 4920, 4680,
        4431, 4173, 3906, 3630, 3345, 3051, 2748, 2436, 2115, 1785,
        1446, 1098, 741, 375,
      },
      "published H_10_120 series, degrees 0..173 (Groebner basis computation)"};
  return g;
}

struct SeriesMismatch {
  Int degree = 0;
  Int computed = 0;
  Int expected = 0;
};

struct AppendixReport {
  std::size_t compared = 0;
  std::vector<SeriesMismatch> mismatches;
  TruncSeries computed;

  bool ok() const noexcept { return mismatches.empty(); }
};

/// Compares C_{(120 x 10)} through degree 173 with the golden series, and
/// checks that the computed series has nothing beyond it.
inline AppendixReport verify_appendix() {
  const auto& golden = golden_H_10_120();
  const RemainderVector r{std::vector<Int>(10, 120), 2};
  AppendixReport rep;
  const Int top = default_k_max(r.entries);
  rep.computed = virtual_series_C(r, top);
  for (Int k = 0; k <= top; ++k) {
    const Int want = k < static_cast<Int>(golden.coefficients.size()) ? golden.coefficients[static_cast<std::size_t>(k)] : 0;
    if (rep.computed[k] != want) rep.mismatches.push_back({k, rep.computed[k], want});
  }
  rep.compared = static_cast<std::size_t>(top + 1);
  return rep;
}

/// Oracle check of the golden series at the given degrees (all of 0..174
/// when empty). Very expensive near the top degrees.
inline AppendixReport verify_appendix_oracle(const OracleOptions& opt, std::vector<Int> degrees = {}) {
  const auto& golden = golden_H_10_120();
  const RemainderVector r{std::vector<Int>(10, 120), 2};
  if (degrees.empty()) {
    for (Int k = 0; k <= static_cast<Int>(golden.coefficients.size()); ++k) degrees.push_back(k);
  }
  AppendixReport rep;
  std::vector<Int> computed;
  for (Int k : degrees) {
    const Int want = k < static_cast<Int>(golden.coefficients.size()) ? golden.coefficients[static_cast<std::size_t>(k)] : 0;
    const Int got = oracle_h(r, k, opt).value_h;
    if (static_cast<std::size_t>(k) >= computed.size()) computed.resize(static_cast<std::size_t>(k + 1), 0);
    computed[static_cast<std::size_t>(k)] = got;
    if (got != want) rep.mismatches.push_back({k, got, want});
    ++rep.compared;
  }
  rep.computed = TruncSeries(std::move(computed));
  return rep;
}

// ---------------------------------------------------------------------------
// Documented failures of H = C for five to eight points

struct FailureCase {
  Int l = 0;
  Int r = 0;
  Int k = 0;
};

inline const std::vector<FailureCase>& documented_failures() {
  static const std::vector<FailureCase> cases{{5, 3, 4}, {6, 15, 24}, {7, 27, 42}, {8, 63, 96}};
  return cases;
}

struct FailureReproduction {
  ScanRecord record;     // h from the oracle
  Int h_algorithm = 0;

  bool algorithm_agrees() const noexcept { return h_algorithm == record.h; }
  bool strict() const noexcept { return record.h > record.c; }
};

inline FailureReproduction reproduce_failure(const FailureCase& fc, const OracleOptions& opt) {
  const RemainderVector r{std::vector<Int>(static_cast<std::size_t>(fc.l), fc.r), 2};
  FailureReproduction out;
  auto& rec = out.record;
  rec.l = fc.l;
  rec.r = r.entries;
  rec.k = fc.k;
  rec.c = virtual_dim_c(r, fc.k);
  rec.h = oracle_h(r, fc.k, opt).value_h;
  rec.equal = rec.h == rec.c;
  rec.method = "oracle";
  rec.seeds = opt.seeds;
  rec.prime = opt.prime;
  rec.timestamp = utc_timestamp();
  out.h_algorithm = h_nagata(r, fc.k).value;
  return out;
}

inline std::vector<FailureReproduction> reproduce_failures(const OracleOptions& opt = {}) {
  std::vector<FailureReproduction> out;
  for (const auto& fc : documented_failures()) out.push_back(reproduce_failure(fc, opt));
  return out;
}

// ---------------------------------------------------------------------------
// Uniform sweeps

enum class ScanMethod { algorithm, oracle };

inline const char* to_string(ScanMethod m) { return m == ScanMethod::algorithm ? "algorithm" : "oracle"; }

inline ScanMethod scan_method_from_string(std::string_view s) {
  if (s == "algorithm") return ScanMethod::algorithm;
  if (s == "oracle") return ScanMethod::oracle;
  throw domain_error("unknown scan method '" + std::string(s) + "'");
}

/// One cell (l copies of r, degree k). Capacity and domain errors are recorded
/// on the cell instead of propagating.
inline ScanRecord scan_cell(Int l, Int r_value, Int k, ScanMethod method, const OracleOptions& opt,
                            ResultCache* cache = nullptr) {
  const RemainderVector r{std::vector<Int>(static_cast<std::size_t>(l), r_value), 2};
  ScanRecord rec;
  rec.l = l;
  rec.r = r.entries;
  rec.k = k;
  rec.method = to_string(method);
  if (method == ScanMethod::oracle) {
    rec.seeds = opt.seeds;
    rec.prime = opt.prime;
  }
  const std::string key = cache_key(rec);
  if (cache) {
    if (auto hit = cache->lookup(key)) return *hit;
  }
  rec.c = virtual_dim_c(r, k);
  try {
    rec.h = method == ScanMethod::algorithm ? h_nagata(r, k).value : oracle_h(r, k, opt).value_h;
    rec.equal = rec.h == rec.c;
  } catch (const capacity_error& e) {
    rec.error = e.what();
    rec.equal = false;
  } catch (const domain_error& e) {
    rec.error = e.what();
    rec.equal = false;
  }
  rec.timestamp = utc_timestamp();
  if (cache && !rec.error) cache->append(rec);
  return rec;
}

/// For r = 1..r_max and every degree up to the default k_max, compares h with
/// c for l equal points. The algorithm method needs l <= 9.
inline std::vector<ScanRecord> scan_uniform(Int l, Int r_max, ScanMethod method, const OracleOptions& opt = {},
                                            ResultCache* cache = nullptr, Int r_min = 1) {
  if (l < 3) throw domain_error("scan_uniform needs at least three points");
  if (method == ScanMethod::algorithm && l > static_cast<Int>(kMaxAlgorithmPoints)) {
    throw domain_error("the algorithm handles at most 9 points; use the oracle");
  }
  std::vector<ScanRecord> out;
  for (Int rv = std::max<Int>(r_min, 1); rv <= r_max; ++rv) {
    const Int top = 3 * rv - 2;
    for (Int k = 0; k <= top; ++k) out.push_back(scan_cell(l, rv, k, method, opt, cache));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nagata's inequality for a square number of points

struct ProbeCell {
  Int m = 0;
  Int k = 0;
  Int d = 0;
  Int c = 0;
};

struct ProbeReport {
  Int l = 0;
  Int s = 0;
  std::vector<ProbeCell> cells;
  std::vector<ProbeCell> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// For l = s^2 > 9 generic points and each m <= m_max, checks with the oracle
/// that no form of degree k <= s*m vanishes to order m at every point.
inline ProbeReport nagata_inequality_probe(Int l, Int m_max, const OracleOptions& opt = {}) {
  const Int s = static_cast<Int>(std::llround(std::sqrt(static_cast<double>(l))));
  if (s * s != l || l <= 9) throw domain_error("probe needs a perfect square number of points above 9");
  ProbeReport rep{l, s, {}, {}};
  for (Int m = 1; m <= m_max; ++m) {
    const MultiplicityVector mv{std::vector<Int>(static_cast<std::size_t>(l), m), 2};
    for (Int k = 0; k <= s * m; ++k) {
      ProbeCell cell{m, k, oracle_d(mv, k, opt).value_d, virtual_dim_c(to_remainders(mv, k), k)};
      rep.cells.push_back(cell);
      if (cell.d != 0) rep.violations.push_back(cell);
    }
  }
  return rep;
}

}  // namespace fatpoints
