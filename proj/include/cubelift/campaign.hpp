#pragma once

/// \file campaign.hpp
/// Seeded verification campaign: generate random instances, solve the
/// lifted LP, compare against the brute-force oracle, and report. The
/// equality claim under test is "LP optimum = binary optimum"; the
/// lower-bound direction (LP <= binary) holds by construction, so any
/// violation aborts the run as a solver bug rather than being recorded
/// as data.
/// Mismatches in the other direction are the interesting outcome and are
/// captured as replayable counterexample bundles.

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"
#include "lift.hpp"
#include "lpsolve.hpp"
#include "oracle.hpp"
#include "rational.hpp"
#include "reduction.hpp"

namespace cubelift {

struct CampaignConfig {
  int n_min = 3;
  int n_max = 8;
  long long count_per_n = 200;
  Rational lo = -50;
  Rational hi = 50;
  ValueDomain domain = ValueDomain::integer;
  Rational epsilon = Rational(1, 1000000);
  std::uint64_t seed = 42;
  NumericMode mode = NumericMode::exact;
  int oracle_cap = 26;
};

struct CampaignRecord {
  std::uint64_t derived_seed = 0;
  int n = 0;
  long long index = 0;  ///< 1-based within its n
  Rational lp_objective;
  Rational bf_objective;
  Rational gap;  ///< lp - bf
  bool match = false;
  bool lower_bound_ok = false;
  bool recovered_binary = false;
  std::vector<int> recovered_x;
  Rational recovery_residual;
  long long solve_iterations = 0;
  double wall_time = 0.0;  ///< seconds, full instance pipeline
  nlohmann::json counterexample;  ///< null unless !match
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<CampaignRecord> records;
  std::map<int, long long> total_per_n;
  std::map<int, long long> matched_per_n;
  double total_wall_time = 0.0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Per-instance seed, a pure function of (campaign seed, n, index) so any
/// single record can be replayed in isolation.
inline std::uint64_t derive_instance_seed(std::uint64_t seed, int n,
                                          long long index) {
  std::uint64_t h = detail::splitmix64(seed);
  h = detail::splitmix64(h ^ static_cast<std::uint64_t>(n));
  h = detail::splitmix64(h ^ static_cast<std::uint64_t>(index));
  return h;
}

namespace detail {

inline std::string scalar_string(NumericMode mode, const Rational& q) {
  if (mode == NumericMode::exact) return format_rational(q);
  std::ostringstream os;
  os.precision(17);
  os << to_double(q);
  return os.str();
}

inline std::string bitstring(const std::vector<int>& x) {
  std::string s;
  s.reserve(x.size());
  for (int b : x) s.push_back(b ? '1' : '0');
  return s;
}

inline nlohmann::json counterexample_bundle(const CampaignConfig& cfg,
                                            const CampaignRecord& rec,
                                            const UbqpInstance& inst,
                                            const LpSolution& sol,
                                            const BruteForceResult& bf,
                                            const RecoveryResult& recov) {
  nlohmann::json j;
  j["n"] = rec.n;
  j["index"] = rec.index;
  j["derived_seed"] = rec.derived_seed;
  j["epsilon"] = format_rational(cfg.epsilon);
  j["gap"] = format_rational(rec.gap);
  j["instance"] = instance_to_json(inst);
  j["lp_solution"] = solution_to_json(sol);
  nlohmann::json bfj;
  bfj["value"] = format_rational(bf.value);
  nlohmann::json mins = nlohmann::json::array();
  for (const auto& x : bf.argmins) mins.push_back(x);
  bfj["argmins"] = std::move(mins);
  j["brute_force"] = std::move(bfj);
  nlohmann::json rj;
  rj["binary"] = recov.binary;
  rj["x"] = recov.x;
  nlohmann::json frac = nlohmann::json::array();
  for (const auto& v : recov.fractional) frac.push_back(format_rational(v));
  rj["fractional"] = std::move(frac);
  rj["residual"] = format_rational(recov.residual);
  j["recovery"] = std::move(rj);
  return j;
}

}  // namespace detail

/// Run the full campaign. Deterministic for a fixed config; records come
/// back sorted by (n, index). The optional callback fires after each
/// record (progress reporting).
inline CampaignReport run_campaign(
    const CampaignConfig& cfg,
    const std::function<void(const CampaignRecord&)>& on_record = {}) {
  if (cfg.n_min < 3 || cfg.n_min > cfg.n_max || cfg.n_max > cfg.oracle_cap)
    throw ParameterError("campaign: need 3 <= n_min <= n_max <= oracle cap " +
                         std::to_string(cfg.oracle_cap));
  if (cfg.count_per_n < 1)
    throw ParameterError("campaign: count_per_n must be >= 1");
  if (sgn(cfg.epsilon) < 0)
    throw ParameterError("campaign: epsilon must be >= 0");

  CampaignReport report;
  report.config = cfg;
  SolveOptions opts;
  opts.mode = cfg.mode;
  opts.pivot = PivotRule::dantzig_bland_fallback;

  const auto campaign_start = std::chrono::steady_clock::now();
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const Layout layout(n);
    for (long long i = 1; i <= cfg.count_per_n; ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      CampaignRecord rec;
      rec.n = n;
      rec.index = i;
      rec.derived_seed = derive_instance_seed(cfg.seed, n, i);

      UbqpInstance inst =
          random_instance(n, cfg.lo, cfg.hi, cfg.domain, rec.derived_seed);
      AssembledLp lp = assemble(inst);
      LpSolution sol = solve(make_problem(lp), opts);
      if (sol.status != LpStatus::optimal)
        throw Error("campaign: solver returned status '" +
                    to_string(sol.status) + "' on n=" + std::to_string(n) +
                    " index=" + std::to_string(i) +
                    " seed=" + std::to_string(rec.derived_seed));
      BruteForceResult bf = brute_force_min(inst, cfg.oracle_cap);

      rec.lp_objective = sol.objective;
      rec.bf_objective = bf.value;
      rec.gap = rec.lp_objective - rec.bf_objective;
      rec.match = abs(rec.gap) < cfg.epsilon;
      rec.lower_bound_ok = cfg.mode == NumericMode::exact
                               ? sgn(rec.gap) <= 0
                               : rec.gap <= cfg.epsilon;
      rec.solve_iterations = sol.iterations;
      if (!rec.lower_bound_ok)
        throw Error(
            "campaign: lower-bound violation (LP above brute force), which "
            "indicates a solver or reduction bug: n=" +
            std::to_string(n) + " index=" + std::to_string(i) +
            " seed=" + std::to_string(rec.derived_seed) +
            " lp=" + format_rational(rec.lp_objective) +
            " bf=" + format_rational(rec.bf_objective));

      std::vector<Rational> w(
          sol.primal.begin() +
              static_cast<std::ptrdiff_t>(8 * layout.N()),
          sol.primal.end());
      RecoveryResult recov =
          recover_x(lifted_from_w(w, n), layout, cfg.epsilon);
      rec.recovered_binary = recov.binary;
      rec.recovered_x = recov.x;
      rec.recovery_residual = recov.residual;
      if (!rec.match)
        rec.counterexample =
            detail::counterexample_bundle(cfg, rec, inst, sol, bf, recov);

      rec.wall_time =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      report.total_per_n[n] += 1;
      if (rec.match) report.matched_per_n[n] += 1;
      if (on_record) on_record(rec);
      report.records.push_back(std::move(rec));
    }
  }
  report.total_wall_time = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - campaign_start)
                               .count();
  std::sort(report.records.begin(), report.records.end(),
            [](const CampaignRecord& a, const CampaignRecord& b) {
              return std::pair(a.n, a.index) < std::pair(b.n, b.index);
            });
  return report;
}

inline long long campaign_mismatches(const CampaignReport& report) {
  long long c = 0;
  for (const auto& r : report.records)
    if (!r.match) ++c;
  return c;
}

/// Fixed CSV schema, one row per instance, diff-able across runs.
inline void write_report_csv(const CampaignReport& report,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "n,index,seed,lp_objective,bf_objective,gap,match,lower_bound_ok,"
         "recovered_binary,recovered_x,recovery_residual,solve_iterations,"
         "wall_time_s\n";
  const NumericMode mode = report.config.mode;
  for (const auto& r : report.records) {
    out << r.n << ',' << r.index << ',' << r.derived_seed << ','
        << detail::scalar_string(mode, r.lp_objective) << ','
        << detail::scalar_string(mode, r.bf_objective) << ','
        << detail::scalar_string(mode, r.gap) << ','
        << (r.match ? "true" : "false") << ','
        << (r.lower_bound_ok ? "true" : "false") << ','
        << (r.recovered_binary ? "true" : "false") << ','
        << detail::bitstring(r.recovered_x) << ','
        << format_rational(r.recovery_residual) << ',' << r.solve_iterations
        << ',' << r.wall_time << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

inline nlohmann::json report_to_json(const CampaignReport& report) {
  const CampaignConfig& cfg = report.config;
  nlohmann::json j;
  j["config"] = {{"n_min", cfg.n_min},
                 {"n_max", cfg.n_max},
                 {"count_per_n", cfg.count_per_n},
                 {"lo", format_rational(cfg.lo)},
                 {"hi", format_rational(cfg.hi)},
                 {"domain", to_string(cfg.domain)},
                 {"epsilon", format_rational(cfg.epsilon)},
                 {"seed", cfg.seed},
                 {"mode", to_string(cfg.mode)}};
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    nlohmann::json rj;
    rj["n"] = r.n;
    rj["index"] = r.index;
    rj["seed"] = r.derived_seed;
    rj["lp_objective"] = detail::scalar_string(cfg.mode, r.lp_objective);
    rj["bf_objective"] = detail::scalar_string(cfg.mode, r.bf_objective);
    rj["gap"] = detail::scalar_string(cfg.mode, r.gap);
    rj["match"] = r.match;
    rj["lower_bound_ok"] = r.lower_bound_ok;
    rj["recovered_binary"] = r.recovered_binary;
    rj["recovered_x"] = r.recovered_x;
    rj["recovery_residual"] = format_rational(r.recovery_residual);
    rj["solve_iterations"] = r.solve_iterations;
    rj["wall_time_s"] = r.wall_time;
    records.push_back(std::move(rj));
  }
  j["records"] = std::move(records);
  nlohmann::json rates;
  for (const auto& [n, total] : report.total_per_n) {
    const long long matched =
        report.matched_per_n.count(n) ? report.matched_per_n.at(n) : 0;
    rates[std::to_string(n)] = {{"total", total},
                                {"matched", matched},
                                {"rate", total ? double(matched) / double(total)
                                               : 0.0}};
  }
  nlohmann::json ces = nlohmann::json::array();
  for (const auto& r : report.records)
    if (!r.match) ces.push_back({{"n", r.n}, {"index", r.index}});
  j["aggregates"] = {{"match_rate_per_n", std::move(rates)},
                     {"counterexamples", std::move(ces)},
                     {"total_records", report.records.size()},
                     {"total_wall_time_s", report.total_wall_time}};
  return j;
}

inline void write_report_json(const CampaignReport& report,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << report_to_json(report).dump(2) << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

/// One file per mismatch: everything needed to replay and inspect it.
/// Returns the paths written.
inline std::vector<std::string> write_counterexamples(
    const CampaignReport& report, const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& r : report.records) {
    if (r.match) continue;
    std::filesystem::create_directories(dir);
    std::string path = (std::filesystem::path(dir) /
                        ("ce_n" + std::to_string(r.n) + "_i" +
                         std::to_string(r.index) + ".json"))
                           .string();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << r.counterexample.dump(2) << "\n";
    if (!out) throw IoError("write failed for '" + path + "'");
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace cubelift
