// Command-line front end: instance generation, reduction to the lifted
// LP, solving, brute-force oracle, the seeded verification campaign, and
// a self-test over the library's worked examples.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <cubelift/cubelift.hpp>

namespace {

using namespace cubelift;

void emit(const nlohmann::json& j, const std::string& out) {
  if (out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw IoError("cannot open '" + out + "' for writing");
  f << j.dump(2) << "\n";
  if (!f) throw IoError("write failed for '" + out + "'");
}

ValueDomain domain_from_string(const std::string& s) {
  if (s == "integer") return ValueDomain::integer;
  if (s == "real") return ValueDomain::real;
  throw ParameterError("unknown domain '" + s + "' (integer|real)");
}

NumericMode mode_from_string(const std::string& s) {
  if (s == "exact") return NumericMode::exact;
  if (s == "float") return NumericMode::floating_point;
  throw ParameterError("unknown mode '" + s + "' (exact|float)");
}

struct GenArgs {
  int n = 0;
  std::string lo = "-50", hi = "50", domain = "integer", out = "-";
  std::uint64_t seed = 42;
};

int cmd_gen(const GenArgs& a) {
  UbqpInstance inst = random_instance(a.n, parse_rational(a.lo),
                                      parse_rational(a.hi),
                                      domain_from_string(a.domain), a.seed);
  emit(instance_to_json(inst), a.out);
  return 0;
}

struct ReduceArgs {
  std::string input, out = "-";
};

int cmd_reduce(const ReduceArgs& a) {
  UbqpInstance inst = read_instance(a.input);
  emit(lp_to_json(assemble(inst)), a.out);
  return 0;
}

struct SolveArgs {
  std::string input, mode = "exact", pivot = "bland", out = "-";
  long long max_iters = 0;
  double tol = 1e-9;
};

int cmd_solve(const SolveArgs& a) {
  LpProblem p = read_lp(a.input);
  SolveOptions opts;
  opts.mode = mode_from_string(a.mode);
  if (a.pivot == "bland")
    opts.pivot = PivotRule::bland;
  else if (a.pivot == "dantzig")
    opts.pivot = PivotRule::dantzig_bland_fallback;
  else
    throw ParameterError("unknown pivot '" + a.pivot + "' (bland|dantzig)");
  opts.max_iters = a.max_iters;
  opts.tol = a.tol;
  emit(solution_to_json(solve(p, opts)), a.out);
  return 0;
}

struct OracleArgs {
  std::string input, out = "-";
  int cap = 26;
};

int cmd_oracle(const OracleArgs& a) {
  UbqpInstance inst = read_instance(a.input);
  BruteForceResult res = brute_force_min(inst, a.cap);
  nlohmann::json j;
  j["min"] = format_rational(res.value);
  nlohmann::json mins = nlohmann::json::array();
  for (const auto& x : res.argmins) mins.push_back(x);
  j["argmins"] = std::move(mins);
  emit(j, a.out);
  return 0;
}

struct VerifyArgs {
  int n_min = 3, n_max = 8;
  long long count = 200;
  std::string lo = "-50", hi = "50", domain = "integer", epsilon = "1e-6";
  std::string mode = "exact", out = "campaign_report";
  std::string ce_dir = "counterexamples";
  std::uint64_t seed = 42;
};

int cmd_verify(const VerifyArgs& a) {
  CampaignConfig cfg;
  cfg.n_min = a.n_min;
  cfg.n_max = a.n_max;
  cfg.count_per_n = a.count;
  cfg.lo = parse_rational(a.lo);
  cfg.hi = parse_rational(a.hi);
  cfg.domain = domain_from_string(a.domain);
  cfg.epsilon = parse_rational(a.epsilon);
  cfg.seed = a.seed;
  cfg.mode = mode_from_string(a.mode);

  std::map<int, long long> matched;
  CampaignReport report = run_campaign(cfg, [&](const CampaignRecord& rec) {
    if (rec.match) matched[rec.n] += 1;
    if (rec.index == cfg.count_per_n)
      std::cerr << "n=" << rec.n << ": " << matched[rec.n] << "/"
                << cfg.count_per_n << " matched\n";
  });

  write_report_csv(report, a.out + ".csv");
  write_report_json(report, a.out + ".json");
  std::vector<std::string> ce_paths = write_counterexamples(report, a.ce_dir);

  const long long mismatches = campaign_mismatches(report);
  std::cout << "records: " << report.records.size()
            << ", mismatches: " << mismatches << ", wall time: "
            << report.total_wall_time << " s\n";
  std::cout << "report: " << a.out << ".csv, " << a.out << ".json\n";
  for (const auto& p : ce_paths) std::cout << "counterexample: " << p << "\n";
  return mismatches > 0 ? 2 : 0;
}

// ---------------------------------------------------------------------
// selftest: the worked examples, end to end.
// ---------------------------------------------------------------------

int g_failures = 0;

void check(bool ok, const std::string& name) {
  std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
  if (!ok) ++g_failures;
}

bool identity_check(int n) {
  Matrix prod = mat_mul(build_T(n), build_E(n));
  const std::size_t dim = prod.size();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (prod[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

// Canonical form of one consistency row: u-band (column, sign) pattern,
// sign-normalized, with the v band required to mirror the u band.
using RowPattern = std::vector<std::pair<long long, int>>;

bool canonical_rows(const SparseCoeffList& a22, long long n1,
                    std::vector<RowPattern>& out) {
  std::map<long long, std::map<long long, Rational>> rows;
  for (const auto& e : a22.entries()) rows[e.row][e.col] = e.val;
  out.clear();
  for (auto& [r, cols] : rows) {
    RowPattern pat;
    for (auto& [c, v] : cols) {
      if (c > n1) continue;
      if (cols.count(c + n1) == 0 || cols[c + n1] != v) return false;
      if (v != 1 && v != -1) return false;
      pat.emplace_back(c, sgn(v));
    }
    if (2 * pat.size() != cols.size()) return false;
    if (!pat.empty() && pat.front().second < 0)
      for (auto& [c, s] : pat) s = -s;
    out.push_back(std::move(pat));
  }
  std::sort(out.begin(), out.end());
  return true;
}

bool consistency_example_check() {
  const Layout layout(4);
  std::vector<RowPattern> got;
  if (!canonical_rows(build_consistency(layout), layout.N1(), got))
    return false;
  // The eight worked consistency equations for n=4, two per variable,
  // written as u-pair patterns (the v half mirrors them).
  auto pat = [&](std::vector<std::pair<std::pair<int, int>, int>> terms) {
    RowPattern p;
    for (auto& [pr, s] : terms) p.emplace_back(layout.iota(pr.first, pr.second), s);
    std::sort(p.begin(), p.end());
    if (!p.empty() && p.front().second < 0)
      for (auto& [c, s] : p) s = -s;
    return p;
  };
  std::vector<RowPattern> want = {
      pat({{{1, 3}, 1}, {{2, 3}, -1}, {{1, 4}, -1}, {{2, 4}, 1}}),
      pat({{{1, 2}, 1}, {{2, 3}, -1}, {{1, 4}, -1}, {{3, 4}, 1}}),
      pat({{{2, 3}, 1}, {{1, 3}, -1}, {{2, 4}, -1}, {{1, 4}, 1}}),
      pat({{{1, 2}, 1}, {{1, 3}, -1}, {{2, 4}, -1}, {{3, 4}, 1}}),
      pat({{{2, 3}, 1}, {{1, 2}, -1}, {{3, 4}, -1}, {{1, 4}, 1}}),
      pat({{{1, 3}, 1}, {{1, 2}, -1}, {{3, 4}, -1}, {{2, 4}, 1}}),
      pat({{{2, 4}, 1}, {{1, 2}, -1}, {{3, 4}, -1}, {{1, 3}, 1}}),
      pat({{{1, 4}, 1}, {{1, 2}, -1}, {{3, 4}, -1}, {{2, 3}, 1}}),
  };
  std::sort(want.begin(), want.end());
  return got == want;
}

bool witness_check(const std::array<Rational, 3>& x,
                   const std::array<Rational, 8>& expect,
                   const Lemma2Policy& policy) {
  Lemma2Witness w = lemma2_witness(x, policy);
  if (w.lambda != expect) return false;
  // B lambda = phi(x) and the simplex condition, independently.
  std::array<Rational, 6> target =
      phi_triplet(x[0], x[1], x[2]);
  Matrix b = basic_block_B();
  Rational total = 0;
  for (int r = 0; r < 6; ++r) {
    Rational acc = 0;
    for (int l = 0; l < 8; ++l) acc += b[r][l] * w.lambda[l];
    if (acc != target[r]) return false;
  }
  for (int l = 0; l < 8; ++l) {
    if (sgn(w.lambda[l]) < 0) return false;
    total += w.lambda[l];
  }
  return total == 1;
}

bool counterexample_check() {
  NonconvexityCounterexample ce = nonconvexity_counterexample();
  std::vector<Rational> w = ce.w.stacked();
  std::vector<Rational> want_w = {Rational(1, 4), Rational(1, 4),
                                  Rational(1, 2), Rational(1, 4),
                                  Rational(1, 4), Rational(1, 2)};
  std::array<Rational, 3> want_x = {Rational(0), Rational(1, 4),
                                    Rational(1, 4)};
  std::vector<Rational> want_phi = {Rational(1, 8),  Rational(1, 8),
                                    Rational(5, 16), Rational(1, 8),
                                    Rational(1, 8),  Rational(3, 16)};
  std::cout << "       midpoint w of phi(0,0,1), phi(0,1,0); L w = (0, 1/4, "
               "1/4); phi(L w) differs from w\n";
  return w == want_w && ce.Lw == want_x && ce.phi_of_Lw.stacked() == want_phi;
}

UbqpInstance lp3_instance() {
  Matrix q = zero_matrix(3, 3);
  q[0][1] = q[1][0] = -10;
  q[0][2] = q[2][0] = -20;
  q[1][2] = q[2][1] = -10;
  return UbqpInstance(3, q, {-2, -2, -26});
}

UbqpInstance example5_instance() {
  Matrix q = zero_matrix(4, 4);
  auto set = [&](int i, int j, long v) {
    q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
  };
  set(0, 1, -30);
  set(0, 2, 6);
  set(0, 3, -22);
  set(1, 2, 15);
  set(1, 3, -2);
  set(2, 3, -5);
  return UbqpInstance(4, q, {-8, -22, 0, -32});
}

bool end_to_end_check(const UbqpInstance& inst, const Rational& opt,
                      const std::vector<Rational>& want_w,
                      const std::vector<int>& want_x) {
  AssembledLp lp = assemble(inst);
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal || sol.objective != opt) return false;
  const Layout& layout = lp.layout;
  std::vector<Rational> w(sol.primal.begin() + 8 * layout.N(),
                          sol.primal.end());
  if (w != want_w) return false;
  RecoveryResult rec = recover_x(lifted_from_w(w, layout.n()), layout);
  if (!rec.binary || rec.x != want_x) return false;
  BruteForceResult bf = brute_force_min(inst);
  return bf.value == opt && bf.argmins == std::vector<std::vector<int>>{want_x};
}

int cmd_selftest() {
  check(identity_check(3), "T3 E3 = I6");
  check(identity_check(4), "T4 E4 = I10");
  check(consistency_example_check(), "n=4 consistency rows match the worked example");

  check(witness_check({Rational(1), Rational(1, 2), Rational(1, 2)},
                      {Rational(0), Rational(0), Rational(0), Rational(0),
                       Rational(1, 4), Rational(1, 4), Rational(1, 4),
                       Rational(1, 4)},
                      Lemma2Policy::lower()),
        "witness at (1, 1/2, 1/2): lambda8 forced to 1/4");
  check(witness_check({Rational(0), Rational(1, 4), Rational(1, 4)},
                      {Rational(9, 16), Rational(3, 16), Rational(3, 16),
                       Rational(1, 16), Rational(0), Rational(0), Rational(0),
                       Rational(0)},
                      Lemma2Policy::lower()),
        "witness at (0, 1/4, 1/4): lambda8 forced to 0");
  check(witness_check({Rational(1, 4), Rational(1, 4), Rational(1, 4)},
                      {Rational(13, 32), Rational(5, 32), Rational(5, 32),
                       Rational(1, 32), Rational(5, 32), Rational(1, 32),
                       Rational(1, 32), Rational(1, 32)},
                      Lemma2Policy::explicit_value(Rational(1, 32))),
        "witness at (1/4, 1/4, 1/4) with lambda8 = 1/32");
  check(witness_check({Rational(1, 4), Rational(1, 4), Rational(1, 4)},
                      {Rational(3, 8), Rational(3, 16), Rational(3, 16),
                       Rational(0), Rational(3, 16), Rational(0), Rational(0),
                       Rational(1, 16)},
                      Lemma2Policy::upper()),
        "witness at (1/4, 1/4, 1/4) with lambda8 at its upper bound 1/16");

  check(counterexample_check(), "lifted set is not convex: explicit counterexample");

  UbqpInstance lp3 = lp3_instance();
  check(objective_vector(lp3) ==
            std::vector<Rational>({-2, -20, -40, -2, -20, -26}),
        "n=3 example: c = (-2,-20,-40,-2,-20,-26)");
  check(transformed_objective(lp3) ==
            std::vector<Rational>({1, -33, -23, 21, 7, -3}),
        "n=3 example: c~ = (1,-33,-23,21,7,-3)");
  check(end_to_end_check(lp3, Rational(-110),
                         {Rational(2), Rational(2), Rational(2), Rational(0),
                          Rational(0), Rational(0)},
                         {1, 1, 1}),
        "n=3 example end to end: LP = brute force = -110 at x = (1,1,1)");

  const Rational half(1, 2);
  check(end_to_end_check(example5_instance(), Rational(-170),
                         {Rational(2), half, Rational(2), half, Rational(2),
                          half, Rational(0), half, Rational(0), half,
                          Rational(0), half},
                         {1, 1, 0, 1}),
        "n=4 example end to end: LP = brute force = -170 at x = (1,1,0,1)");

  std::cout << (g_failures == 0 ? "selftest passed\n"
                                : "selftest FAILED\n");
  return g_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UBQP to LP lifting toolkit"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n", gen_args.n, "number of binary variables (>= 3)")
      ->required();
  gen->add_option("--lo", gen_args.lo, "lower bound for entries");
  gen->add_option("--hi", gen_args.hi, "upper bound for entries");
  gen->add_option("--domain", gen_args.domain, "integer|real");
  gen->add_option("--seed", gen_args.seed, "RNG seed");
  gen->add_option("--out", gen_args.out, "output path or - for stdout");

  ReduceArgs reduce_args;
  CLI::App* reduce =
      app.add_subcommand("reduce", "reduce an instance to the lifted LP");
  reduce->add_option("input", reduce_args.input, "instance JSON")->required();
  reduce->add_option("--out", reduce_args.out, "output path or -");

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve an LP JSON file");
  solve_cmd->add_option("input", solve_args.input, "LP JSON")->required();
  solve_cmd->add_option("--mode", solve_args.mode, "exact|float");
  solve_cmd->add_option("--pivot", solve_args.pivot, "bland|dantzig");
  solve_cmd->add_option("--max-iters", solve_args.max_iters,
                        "iteration cap (0 = default)");
  solve_cmd->add_option("--tol", solve_args.tol, "float-mode tolerance");
  solve_cmd->add_option("--out", solve_args.out, "output path or -");

  OracleArgs oracle_args;
  CLI::App* oracle =
      app.add_subcommand("oracle", "brute-force minimum of an instance");
  oracle->add_option("input", oracle_args.input, "instance JSON")->required();
  oracle->add_option("--cap", oracle_args.cap, "enumeration cap on n");
  oracle->add_option("--out", oracle_args.out, "output path or -");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the LP-vs-brute-force verification campaign");
  verify->add_option("--n-min", verify_args.n_min, "smallest n");
  verify->add_option("--n-max", verify_args.n_max, "largest n");
  verify->add_option("--count", verify_args.count, "instances per n");
  verify->add_option("--lo", verify_args.lo, "lower bound for entries");
  verify->add_option("--hi", verify_args.hi, "upper bound for entries");
  verify->add_option("--domain", verify_args.domain, "integer|real");
  verify->add_option("--epsilon", verify_args.epsilon, "match tolerance");
  verify->add_option("--seed", verify_args.seed, "campaign seed");
  verify->add_option("--mode", verify_args.mode, "exact|float");
  verify->add_option("--out", verify_args.out,
                     "report path prefix (.csv/.json appended)");
  verify->add_option("--counterexample-dir", verify_args.ce_dir,
                     "directory for mismatch bundles");

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the built-in worked examples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_args);
    if (reduce->parsed()) return cmd_reduce(reduce_args);
    if (solve_cmd->parsed()) return cmd_solve(solve_args);
    if (oracle->parsed()) return cmd_oracle(oracle_args);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (selftest->parsed()) return cmd_selftest();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
