#pragma once

/// \file lpsolve.hpp
/// Deterministic two-phase revised simplex for equality-constrained LPs
/// with nonnegative variables:
///
///   min c^T x   s.t.  A x = b,  x >= 0.
///
/// The engine is templated on the arithmetic: exact rationals (the
/// default; results are exact and self-certified) or doubles with an
/// absolute tolerance. Phase 1 starts from artificial variables (after a
/// unit-column crash), detects infeasibility, and removes redundant
/// equality rows; phase 2 returns a vertex-optimal solution. Bland's rule
/// breaks every tie by lowest index, so a fixed problem and options give
/// a bit-for-bit reproducible run; the optional Dantzig rule falls back
/// to Bland after a stall.

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "reduction.hpp"

namespace cubelift {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };
enum class NumericMode { exact, floating_point };
enum class PivotRule { bland, dantzig_bland_fallback };

inline std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

inline std::string to_string(NumericMode m) {
  return m == NumericMode::exact ? "exact" : "float";
}

struct SolveOptions {
  NumericMode mode = NumericMode::exact;
  PivotRule pivot = PivotRule::bland;
  long long max_iters = 0;  ///< 0 selects the default 50 * (rows + cols)
  double tol = 1e-9;        ///< float-mode comparison tolerance
};

struct LpProblem {
  SparseCoeffList A;
  std::vector<Rational> rhs;
  std::vector<Rational> cost;
};

inline LpProblem make_problem(const AssembledLp& lp) {
  return LpProblem{lp.A, lp.rhs, lp.cost};
}

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  Rational objective = 0;
  std::vector<Rational> primal;  ///< full-length; empty for infeasible/unbounded
  std::vector<long long> basis;  ///< structural columns (1-based), by row
  long long iterations = 0;
  std::vector<long long> dropped_redundant_rows;  ///< 1-based original rows
  NumericMode mode = NumericMode::exact;
};

/// Independent certificate check of any candidate point.
struct PointCheck {
  Rational max_eq_residual;  ///< max_i |(A point - rhs)_i|
  Rational min_component;    ///< min_j point_j
  Rational objective;        ///< cost^T point
};

inline PointCheck check_point(const LpProblem& p,
                              const std::vector<Rational>& point) {
  if (point.size() != static_cast<std::size_t>(p.A.cols()))
    throw DimensionError("check_point: point length " +
                         std::to_string(point.size()) + ", expected " +
                         std::to_string(p.A.cols()));
  PointCheck res{Rational(0), point.empty() ? Rational(0) : point[0],
                 Rational(0)};
  std::vector<Rational> ax = p.A.apply(point);
  for (std::size_t i = 0; i < ax.size(); ++i) {
    Rational r = abs(Rational(ax[i] - p.rhs[i]));
    if (r > res.max_eq_residual) res.max_eq_residual = r;
  }
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (point[j] < res.min_component) res.min_component = point[j];
    if (point[j] != 0 && p.cost[j] != 0) res.objective += p.cost[j] * point[j];
  }
  return res;
}

namespace detail {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static Rational from(const Rational& q) { return q; }
  static Rational to_rational(const Rational& v) { return v; }
  static bool is_zero(const Rational& v, double) { return sgn(v) == 0; }
  static bool is_neg(const Rational& v, double) { return sgn(v) < 0; }
  static bool is_pos(const Rational& v, double) { return sgn(v) > 0; }
  static bool exact_zero(const Rational& v) { return sgn(v) == 0; }
};

template <>
struct ScalarOps<double> {
  static double from(const Rational& q) { return q.get_d(); }
  static Rational to_rational(double v) { return Rational(v); }
  static bool is_zero(double v, double tol) { return std::abs(v) <= tol; }
  static bool is_neg(double v, double tol) { return v < -tol; }
  static bool is_pos(double v, double tol) { return v > tol; }
  static bool exact_zero(double v) { return v == 0.0; }
};

/// Two-phase revised simplex with an explicitly maintained basis inverse.
template <class S>
class SimplexEngine {
 public:
  SimplexEngine(const LpProblem& p, const SolveOptions& opts)
      : tol_(opts.tol), rule_(opts.pivot) {
    m_ = p.A.rows();
    n_ = p.A.cols();
    if (p.rhs.size() != static_cast<std::size_t>(m_))
      throw DimensionError("solve: rhs length " + std::to_string(p.rhs.size()) +
                           ", expected " + std::to_string(m_));
    if (p.cost.size() != static_cast<std::size_t>(n_))
      throw DimensionError("solve: cost length " +
                           std::to_string(p.cost.size()) + ", expected " +
                           std::to_string(n_));
    max_iters_ = opts.max_iters > 0 ? opts.max_iters : 50 * (m_ + n_);

    // Row signs are decided on the exact data so exact and float runs
    // normalize identically.
    std::vector<int> row_sign(static_cast<std::size_t>(m_), 1);
    rhs_.resize(static_cast<std::size_t>(m_));
    for (long long i = 0; i < m_; ++i) {
      const Rational& b = p.rhs[static_cast<std::size_t>(i)];
      if (sgn(b) < 0) row_sign[static_cast<std::size_t>(i)] = -1;
      rhs_[static_cast<std::size_t>(i)] =
          Ops::from(sgn(b) < 0 ? Rational(-b) : b);
    }
    cols_.resize(static_cast<std::size_t>(n_));
    for (const auto& e : p.A.entries()) {
      const auto i = static_cast<std::size_t>(e.row - 1);
      Rational v = row_sign[i] < 0 ? Rational(-e.val) : e.val;
      cols_[static_cast<std::size_t>(e.col - 1)].emplace_back(e.row - 1,
                                                              Ops::from(v));
    }
    cost_.resize(static_cast<std::size_t>(n_));
    for (long long j = 0; j < n_; ++j)
      cost_[static_cast<std::size_t>(j)] =
          Ops::from(p.cost[static_cast<std::size_t>(j)]);
  }

  LpSolution run() {
    init_basis();
    LpSolution sol;
    sol.status = LpStatus::optimal;

    // Phase 1: minimize the artificial sum (skipped when the crash start
    // is already feasible), then drive every artificial out of the basis,
    // dropping rows that expose themselves as redundant.
    phase1_ = true;
    if (!Ops::is_zero(z_, tol_)) {
      LpStatus st = iterate();
      if (st == LpStatus::iteration_limit) return finish(sol, st);
      if (st == LpStatus::unbounded)
        throw Error("solve: phase 1 unbounded (internal error)");
    }
    if (Ops::is_pos(z_, tol_)) {
      sol.status = LpStatus::infeasible;
      sol.iterations = iters_;
      sol.dropped_redundant_rows = dropped_list();
      return sol;
    }
    sweep_artificials();

    // Phase 2 on the real objective.
    phase1_ = false;
    recompute_duals_and_objective();
    LpStatus st = iterate();
    return finish(sol, st);
  }

  std::vector<long long> dropped_list() const {
    std::vector<long long> out;
    for (long long i = 0; i < m_; ++i)
      if (row_dropped_[static_cast<std::size_t>(i)]) out.push_back(i + 1);
    return out;
  }

 private:
  using Ops = ScalarOps<S>;

  bool is_artificial(long long b) const { return b >= n_; }

  const S& phase_cost(long long col) const {
    static const S zero = S(0);
    static const S one = S(1);
    if (phase1_) return is_artificial(col) ? one : zero;
    return is_artificial(col) ? zero : cost_[static_cast<std::size_t>(col)];
  }

  void init_basis() {
    basis_.resize(static_cast<std::size_t>(m_));
    is_basic_.assign(static_cast<std::size_t>(n_), 0);
    row_dropped_.assign(static_cast<std::size_t>(m_), 0);
    binv_.assign(static_cast<std::size_t>(m_ * m_), S(0));
    xb_ = rhs_;
    for (long long i = 0; i < m_; ++i) {
      basis_[static_cast<std::size_t>(i)] = n_ + i;
      binv_[static_cast<std::size_t>(i * m_ + i)] = S(1);
    }
    // Crash: structural unit columns replace artificials outright.
    for (long long j = 0; j < n_; ++j) {
      const auto& col = cols_[static_cast<std::size_t>(j)];
      if (col.size() != 1) continue;
      const long long r = col[0].first;
      if (!is_artificial(basis_[static_cast<std::size_t>(r)])) continue;
      const S& v = col[0].second;
      if (Ops::exact_zero(v)) continue;
      S val = rhs_[static_cast<std::size_t>(r)] / v;
      if (Ops::is_neg(val, tol_)) continue;
      basis_[static_cast<std::size_t>(r)] = j;
      is_basic_[static_cast<std::size_t>(j)] = 1;
      binv_[static_cast<std::size_t>(r * m_ + r)] = S(1) / v;
      xb_[static_cast<std::size_t>(r)] = std::move(val);
    }
    recompute_duals_and_objective();
  }

  /// y = c_B^T Binv and z = c_B^T x_B for the current phase cost.
  void recompute_duals_and_objective() {
    y_.assign(static_cast<std::size_t>(m_), S(0));
    z_ = S(0);
    S t;
    for (long long p = 0; p < m_; ++p) {
      const S& cb = phase_cost(basis_[static_cast<std::size_t>(p)]);
      if (Ops::exact_zero(cb)) continue;
      const S* row = &binv_[static_cast<std::size_t>(p * m_)];
      for (long long k = 0; k < m_; ++k) {
        if (Ops::exact_zero(row[k])) continue;
        t = cb * row[k];
        y_[static_cast<std::size_t>(k)] += t;
      }
      t = cb * xb_[static_cast<std::size_t>(p)];
      z_ += t;
    }
  }

  /// Reduced cost of a structural column under the current duals.
  S reduced_cost(long long j) const {
    S rc = phase_cost(j);
    S t;
    for (const auto& [r, v] : cols_[static_cast<std::size_t>(j)]) {
      if (Ops::exact_zero(y_[static_cast<std::size_t>(r)])) continue;
      t = y_[static_cast<std::size_t>(r)] * v;
      rc -= t;
    }
    return rc;
  }

  /// d = Binv A_j.
  void ftran(long long j, std::vector<S>& d) const {
    d.assign(static_cast<std::size_t>(m_), S(0));
    S t;
    for (const auto& [r, v] : cols_[static_cast<std::size_t>(j)]) {
      for (long long i = 0; i < m_; ++i) {
        const S& b = binv_[static_cast<std::size_t>(i * m_ + r)];
        if (Ops::exact_zero(b)) continue;
        t = b * v;
        d[static_cast<std::size_t>(i)] += t;
      }
    }
  }

  /// Lowest-index entering column with negative reduced cost, or the most
  /// negative one under Dantzig pricing. Returns -1 at optimality.
  long long choose_entering(S& rc_out) {
    if (rule_ == PivotRule::bland || bland_fallback_) {
      for (long long j = 0; j < n_; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)]) continue;
        S rc = reduced_cost(j);
        if (Ops::is_neg(rc, tol_)) {
          rc_out = std::move(rc);
          return j;
        }
      }
      return -1;
    }
    long long best = -1;
    S best_rc = S(0);
    for (long long j = 0; j < n_; ++j) {
      if (is_basic_[static_cast<std::size_t>(j)]) continue;
      S rc = reduced_cost(j);
      if (Ops::is_neg(rc, tol_) && (best < 0 || rc < best_rc)) {
        best = j;
        best_rc = std::move(rc);
      }
    }
    if (best >= 0) rc_out = std::move(best_rc);
    return best;
  }

  /// Min-ratio row; ties go to artificial basics first, then lowest index
  /// (a fixed total order, so Bland's guarantee applies).
  long long choose_leaving(const std::vector<S>& d) const {
    long long p = -1;
    S best_ratio = S(0);
    for (long long i = 0; i < m_; ++i) {
      if (row_dropped_[static_cast<std::size_t>(i)]) continue;
      const S& di = d[static_cast<std::size_t>(i)];
      if (!Ops::is_pos(di, tol_)) continue;
      S ratio = xb_[static_cast<std::size_t>(i)] / di;
      if (p < 0 || ratio < best_ratio ||
          (ratio == best_ratio && leaves_before(i, p))) {
        p = i;
        best_ratio = std::move(ratio);
      }
    }
    return p;
  }

  bool leaves_before(long long i, long long p) const {
    const long long bi = basis_[static_cast<std::size_t>(i)];
    const long long bp = basis_[static_cast<std::size_t>(p)];
    if (is_artificial(bi) != is_artificial(bp)) return is_artificial(bi);
    return bi < bp;
  }

  /// One basis exchange: entering column q, leaving row p.
  void pivot(long long p, long long q, const std::vector<S>& d, const S& rc_q) {
    const S piv = d[static_cast<std::size_t>(p)];
    S* rowp = &binv_[static_cast<std::size_t>(p * m_)];
    if (!(piv == S(1))) {
      S inv = S(1) / piv;
      for (long long k = 0; k < m_; ++k) {
        if (Ops::exact_zero(rowp[k])) continue;
        rowp[k] *= inv;
      }
    }
    S t;
    for (long long i = 0; i < m_; ++i) {
      if (i == p) continue;
      const S& di = d[static_cast<std::size_t>(i)];
      if (Ops::exact_zero(di)) continue;
      S* rowi = &binv_[static_cast<std::size_t>(i * m_)];
      for (long long k = 0; k < m_; ++k) {
        if (Ops::exact_zero(rowp[k])) continue;
        t = di * rowp[k];
        rowi[k] -= t;
      }
    }
    S theta = xb_[static_cast<std::size_t>(p)] / piv;
    for (long long i = 0; i < m_; ++i) {
      if (i == p) continue;
      const S& di = d[static_cast<std::size_t>(i)];
      if (Ops::exact_zero(di) || Ops::exact_zero(theta)) continue;
      t = theta * di;
      xb_[static_cast<std::size_t>(i)] -= t;
    }
    xb_[static_cast<std::size_t>(p)] = theta;
    if (!Ops::exact_zero(rc_q)) {
      for (long long k = 0; k < m_; ++k) {
        if (Ops::exact_zero(rowp[k])) continue;
        t = rc_q * rowp[k];
        y_[static_cast<std::size_t>(k)] += t;
      }
      t = rc_q * theta;
      z_ += t;
      if (!Ops::exact_zero(t)) stall_ = 0;
    }
    const long long old = basis_[static_cast<std::size_t>(p)];
    if (!is_artificial(old)) is_basic_[static_cast<std::size_t>(old)] = 0;
    basis_[static_cast<std::size_t>(p)] = q;
    is_basic_[static_cast<std::size_t>(q)] = 1;
    ++iters_;
  }

  LpStatus iterate() {
    std::vector<S> d;
    while (true) {
      if (iters_ >= max_iters_) return LpStatus::iteration_limit;
      if (rule_ == PivotRule::dantzig_bland_fallback && !bland_fallback_ &&
          stall_ >= 3 * n_)
        bland_fallback_ = true;
      S rc;
      long long q = choose_entering(rc);
      if (q < 0) return LpStatus::optimal;
      ftran(q, d);
      long long p = choose_leaving(d);
      if (p < 0) return LpStatus::unbounded;
      ++stall_;  // pivot() resets on any objective change
      pivot(p, q, d, rc);
    }
  }

  /// Post phase 1: every artificial still basic sits at zero. Pivot in a
  /// structural column where possible; otherwise the row is a redundant
  /// equality and is retired (its Binv A row is and stays all-zero, so it
  /// can never be selected again).
  void sweep_artificials() {
    std::vector<S> rho(static_cast<std::size_t>(n_));
    std::vector<S> d;
    S t;
    for (long long p = 0; p < m_; ++p) {
      if (!is_artificial(basis_[static_cast<std::size_t>(p)])) continue;
      const S* rowp = &binv_[static_cast<std::size_t>(p * m_)];
      long long enter = -1;
      for (long long j = 0; j < n_ && enter < 0; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)]) continue;
        S acc = S(0);
        for (const auto& [r, v] : cols_[static_cast<std::size_t>(j)]) {
          if (Ops::exact_zero(rowp[r])) continue;
          t = rowp[r] * v;
          acc += t;
        }
        if (!Ops::is_zero(acc, tol_)) enter = j;
      }
      if (enter < 0) {
        row_dropped_[static_cast<std::size_t>(p)] = 1;
        continue;
      }
      ftran(enter, d);
      S rc = reduced_cost(enter);
      pivot(p, enter, d, rc);
    }
  }

  LpSolution finish(LpSolution& sol, LpStatus st) {
    sol.status = st;
    sol.iterations = iters_;
    sol.dropped_redundant_rows = dropped_list();
    if (st == LpStatus::unbounded) return sol;

    sol.primal.assign(static_cast<std::size_t>(n_), Rational(0));
    for (long long i = 0; i < m_; ++i) {
      if (row_dropped_[static_cast<std::size_t>(i)]) continue;
      const long long b = basis_[static_cast<std::size_t>(i)];
      if (is_artificial(b)) {
        if (st == LpStatus::optimal)
          throw Error("solve: artificial basic after phase 1 (internal)");
        continue;
      }
      sol.basis.push_back(b + 1);
      sol.primal[static_cast<std::size_t>(b)] =
          Ops::to_rational(xb_[static_cast<std::size_t>(i)]);
    }
    sol.objective = 0;
    for (long long j = 0; j < n_; ++j) {
      const Rational& xj = sol.primal[static_cast<std::size_t>(j)];
      if (xj != 0)
        sol.objective += Ops::to_rational(cost_[static_cast<std::size_t>(j)]) * xj;
    }
    if (st == LpStatus::optimal && std::is_same_v<S, Rational>) certify(sol);
    return sol;
  }

  /// Exact-mode self-certification: recomputed duals prove optimality,
  /// the primal is feasible, and the objective matches. Any failure is an
  /// internal bug, never a data issue.
  void certify(const LpSolution& sol) {
    recompute_duals_and_objective();
    if (!(Ops::to_rational(z_) == sol.objective))
      throw Error("solve: certification failed (objective mismatch)");
    for (long long j = 0; j < n_; ++j) {
      S rc = reduced_cost(j);
      if (is_basic_[static_cast<std::size_t>(j)]
              ? !Ops::exact_zero(rc)
              : Ops::is_neg(rc, 0.0))
        throw Error("solve: certification failed (reduced costs)");
    }
    for (long long i = 0; i < m_; ++i)
      if (!row_dropped_[static_cast<std::size_t>(i)] &&
          Ops::is_neg(xb_[static_cast<std::size_t>(i)], 0.0))
        throw Error("solve: certification failed (negative basic value)");
    std::vector<S> ax(static_cast<std::size_t>(m_), S(0));
    S t;
    for (long long j = 0; j < n_; ++j) {
      const Rational& xj = sol.primal[static_cast<std::size_t>(j)];
      if (xj == 0) continue;
      const S xs = Ops::from(xj);
      for (const auto& [r, v] : cols_[static_cast<std::size_t>(j)]) {
        t = xs * v;
        ax[static_cast<std::size_t>(r)] += t;
      }
    }
    for (long long i = 0; i < m_; ++i)
      if (!(ax[static_cast<std::size_t>(i)] == rhs_[static_cast<std::size_t>(i)]))
        throw Error("solve: certification failed (equality residual)");
  }

  long long m_ = 0, n_ = 0;
  double tol_;
  PivotRule rule_;
  long long max_iters_ = 0;
  std::vector<std::vector<std::pair<long long, S>>> cols_;
  std::vector<S> rhs_, cost_;
  std::vector<long long> basis_;
  std::vector<char> is_basic_, row_dropped_;
  std::vector<S> binv_, xb_, y_;
  S z_ = S(0);
  long long iters_ = 0, stall_ = 0;
  bool phase1_ = true, bland_fallback_ = false;
};

}  // namespace detail

inline LpSolution solve(const LpProblem& p, const SolveOptions& opts = {}) {
  LpSolution sol;
  if (opts.mode == NumericMode::exact) {
    detail::SimplexEngine<Rational> engine(p, opts);
    sol = engine.run();
  } else {
    detail::SimplexEngine<double> engine(p, opts);
    sol = engine.run();
  }
  sol.mode = opts.mode;
  return sol;
}

inline LpSolution solve(const AssembledLp& lp, const SolveOptions& opts = {}) {
  return solve(make_problem(lp), opts);
}

inline nlohmann::json solution_to_json(const LpSolution& sol) {
  nlohmann::json j;
  j["status"] = to_string(sol.status);
  if (sol.mode == NumericMode::exact) {
    j["objective"] = format_rational(sol.objective);
    nlohmann::json primal = nlohmann::json::array();
    for (const auto& v : sol.primal) primal.push_back(format_rational(v));
    j["primal"] = std::move(primal);
  } else {
    j["objective"] = to_double(sol.objective);
    nlohmann::json primal = nlohmann::json::array();
    for (const auto& v : sol.primal) primal.push_back(to_double(v));
    j["primal"] = std::move(primal);
  }
  j["dropped_rows"] = sol.dropped_redundant_rows;
  j["iterations"] = sol.iterations;
  return j;
}

inline void write_solution(const LpSolution& sol, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << solution_to_json(sol).dump(2) << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

/// Read the LP JSON emitted by the reduction ("rows", "cols", "entries",
/// "rhs", "cost"; "var_names" is informational and ignored).
inline LpProblem lp_problem_from_json(const nlohmann::json& j) {
  for (const char* key : {"rows", "cols", "entries", "rhs", "cost"})
    if (!j.contains(key))
      throw ValidationError(std::string("lp: missing key '") + key + "'");
  const long long rows = j["rows"].get<long long>();
  const long long cols = j["cols"].get<long long>();
  LpProblem p{SparseCoeffList(rows, cols), {}, {}};
  for (const auto& e : j["entries"]) {
    if (!e.is_array() || e.size() != 3)
      throw ValidationError("lp: each entry must be [row, col, value]");
    p.A.add(e[0].get<long long>(), e[1].get<long long>(),
            e[2].is_string() ? parse_rational(e[2].get<std::string>())
                             : Rational(static_cast<long>(e[2].get<long long>())));
  }
  if (j["rhs"].size() != static_cast<std::size_t>(rows))
    throw ValidationError("lp: rhs length must equal rows");
  if (j["cost"].size() != static_cast<std::size_t>(cols))
    throw ValidationError("lp: cost length must equal cols");
  for (const auto& v : j["rhs"])
    p.rhs.push_back(v.is_string()
                        ? parse_rational(v.get<std::string>())
                        : Rational(static_cast<long>(v.get<long long>())));
  for (const auto& v : j["cost"])
    p.cost.push_back(v.is_string()
                         ? parse_rational(v.get<std::string>())
                         : Rational(static_cast<long>(v.get<long long>())));
  return p;
}

inline LpProblem read_lp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("JSON parse error in '" + path + "': " + e.what());
  }
  return lp_problem_from_json(j);
}

}  // namespace cubelift
