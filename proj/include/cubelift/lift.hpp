#pragma once

/// \file lift.hpp
/// Point-level maps between the box [0,1]^n and the lifted pair space:
/// the monomial vector alpha, the lift phi into w = (u, v), the linear
/// recovery functional g, a constructive convex-combination witness for
/// triplet points, binary recovery from an LP optimum, and the
/// counterexample showing the triplet polytope is strictly bigger than
/// the image of the box.

#include <array>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "layout.hpp"
#include "rational.hpp"

namespace cubelift {

/// Lift of one pair: u = (xi + 2 xi xj + xj)/2, v = (xi - 2 xi xj + xj)/2.
inline std::pair<Rational, Rational> uv_pair(const Rational& xi,
                                             const Rational& xj) {
  Rational cross = 2 * xi * xj;
  return {(xi + cross + xj) / 2, (xi - cross + xj) / 2};
}

/// w = (u, v), both bands indexed by iota. For lifts of box points,
/// 0 <= u <= 2 and 0 <= v <= 1/2 componentwise.
struct LiftedPoint {
  int n = 0;
  std::vector<Rational> u;
  std::vector<Rational> v;

  const Rational& u_at(long long iota_index) const {
    return u[static_cast<std::size_t>(iota_index - 1)];
  }
  const Rational& v_at(long long iota_index) const {
    return v[static_cast<std::size_t>(iota_index - 1)];
  }

  /// Stacked vector (u_1..u_N1, v_1..v_N1).
  std::vector<Rational> stacked() const {
    std::vector<Rational> w = u;
    w.insert(w.end(), v.begin(), v.end());
    return w;
  }

  bool operator==(const LiftedPoint&) const = default;
};

namespace detail {

inline void check_box(const std::vector<Rational>& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < 0 || x[i] > 1)
      throw DomainError("component x[" + std::to_string(i + 1) +
                        "] outside [0,1]");
}

}  // namespace detail

/// Monomial vector (x_1, x_1x_2, ..., x_1x_n, x_2, x_2x_3, ..., x_n),
/// length n(n+1)/2.
inline std::vector<Rational> alpha(const std::vector<Rational>& x) {
  const int n = static_cast<int>(x.size());
  if (n < 3) throw ParameterError("alpha: need n >= 3");
  detail::check_box(x);
  std::vector<Rational> a;
  a.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    a.push_back(x[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n; ++j)
      a.push_back(x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)]);
  }
  return a;
}

/// Lift of a full box point into w = (u, v).
inline LiftedPoint phi(const std::vector<Rational>& x) {
  const int n = static_cast<int>(x.size());
  if (n < 3) throw ParameterError("phi: need n >= 3");
  detail::check_box(x);
  Layout layout(n);
  LiftedPoint w;
  w.n = n;
  w.u.resize(static_cast<std::size_t>(layout.N1()));
  w.v.resize(static_cast<std::size_t>(layout.N1()));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      auto [ui, vi] = uv_pair(x[static_cast<std::size_t>(i - 1)],
                              x[static_cast<std::size_t>(j - 1)]);
      auto idx = static_cast<std::size_t>(layout.iota(i, j) - 1);
      w.u[idx] = std::move(ui);
      w.v[idx] = std::move(vi);
    }
  return w;
}

/// Lift of one triplet, ordered (u_ab, u_ac, u_bc, v_ab, v_ac, v_bc).
inline std::array<Rational, 6> phi_triplet(const Rational& xa,
                                           const Rational& xb,
                                           const Rational& xc) {
  auto [uab, vab] = uv_pair(xa, xb);
  auto [uac, vac] = uv_pair(xa, xc);
  auto [ubc, vbc] = uv_pair(xb, xc);
  return {uab, uac, ubc, vab, vac, vbc};
}

/// Rebuild a LiftedPoint from a stacked w vector of length 2*N1.
inline LiftedPoint lifted_from_w(const std::vector<Rational>& w, int n) {
  Layout layout(n);
  const auto n1 = static_cast<std::size_t>(layout.N1());
  if (w.size() != 2 * n1)
    throw DimensionError("lifted_from_w: expected length " +
                         std::to_string(2 * n1));
  LiftedPoint p;
  p.n = n;
  p.u.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n1));
  p.v.assign(w.begin() + static_cast<std::ptrdiff_t>(n1), w.end());
  return p;
}

/// g_{i,j,k}(w) = (u_ij + v_ij + u_ik + v_ik - u_jk - v_jk)/2.
/// For w = phi(x) this recovers x_i regardless of j, k.
inline Rational g(const LiftedPoint& w, int i, int j, int k) {
  if (i == j || i == k || j == k)
    throw IndexError("g: indices must be pairwise distinct");
  Layout layout(w.n);
  auto ij = layout.iota(i, j), ik = layout.iota(i, k), jk = layout.iota(j, k);
  return (w.u_at(ij) + w.v_at(ij) + w.u_at(ik) + w.v_at(ik) - w.u_at(jk) -
          w.v_at(jk)) /
         2;
}

/// How to choose the free coordinate lambda_8 inside its feasible interval.
struct Lemma2Policy {
  enum class Kind { lower, upper, midpoint, explicit_value };
  Kind kind = Kind::lower;
  Rational value;

  static Lemma2Policy lower() { return {Kind::lower, Rational(0)}; }
  static Lemma2Policy upper() { return {Kind::upper, Rational(0)}; }
  static Lemma2Policy midpoint() { return {Kind::midpoint, Rational(0)}; }
  static Lemma2Policy explicit_value(Rational v) {
    return {Kind::explicit_value, std::move(v)};
  }
};

/// Convex-combination weights over the 8 binary triplet vertices proving
/// that a lifted triplet point lies in the triplet polytope. Vertex order
/// matches the basic block columns: index 1 + 4 x_a + 2 x_b + x_c.
struct Lemma2Witness {
  std::array<Rational, 8> lambda;
  std::pair<Rational, Rational> lambda8_interval;
  Rational M1, M2, M3, m1, m2, m3;
};

/// Constructive witness for x in [0,1]^3. The interval for lambda_8 is
/// [max{0, m1, m2, m3}, min{M1, M2, M3, 1}] and is never empty.
inline Lemma2Witness lemma2_witness(
    const std::array<Rational, 3>& x,
    const Lemma2Policy& policy = Lemma2Policy::lower()) {
  for (int i = 0; i < 3; ++i)
    if (x[static_cast<std::size_t>(i)] < 0 || x[static_cast<std::size_t>(i)] > 1)
      throw DomainError("lemma2_witness: component x[" + std::to_string(i + 1) +
                        "] outside [0,1]");
  const Rational &x1 = x[0], &x2 = x[1], &x3 = x[2];
  const Rational p12 = x1 * x2, p13 = x1 * x3, p23 = x2 * x3;
  const Rational sum_x = x1 + x2 + x3;
  const Rational sum_p = p12 + p13 + p23;

  Lemma2Witness wit;
  // One-sided caps: pairwise products, per-coordinate slack, total slack.
  const Rational s1 = x1 * (1 - x2 - x3);
  const Rational s2 = x2 * (1 - x1 - x3);
  const Rational s3 = x3 * (1 - x1 - x2);
  wit.M1 = std::min({Rational(1 - s1), Rational(1 - s2), Rational(1 - s3)});
  wit.M2 = std::min({p12, p13, p23});
  wit.M3 = 1 - (sum_x - sum_p);
  wit.m1 = std::max({Rational(-s1), Rational(-s2), Rational(-s3)});
  wit.m2 = std::max({Rational(p12 - 1), Rational(p13 - 1), Rational(p23 - 1)});
  wit.m3 = -(sum_x - sum_p);

  const Rational lower = std::max({Rational(0), wit.m1, wit.m2, wit.m3});
  const Rational upper = std::min({wit.M1, wit.M2, wit.M3, Rational(1)});
  if (lower > upper)
    throw Error("lemma2_witness: empty interval (internal error)");
  wit.lambda8_interval = {lower, upper};

  Rational l8;
  switch (policy.kind) {
    case Lemma2Policy::Kind::lower:
      l8 = lower;
      break;
    case Lemma2Policy::Kind::upper:
      l8 = upper;
      break;
    case Lemma2Policy::Kind::midpoint:
      l8 = (lower + upper) / 2;
      break;
    case Lemma2Policy::Kind::explicit_value:
      if (policy.value < lower || policy.value > upper)
        throw ParameterError("lemma2_witness: explicit lambda_8 " +
                             format_rational(policy.value) + " outside [" +
                             format_rational(lower) + "," +
                             format_rational(upper) + "]");
      l8 = policy.value;
      break;
  }

  auto& l = wit.lambda;
  l[7] = l8;
  l[1] = l8 + x3 - p13 - p23;  // vertex (0,0,1)
  l[2] = l8 + x2 - p12 - p23;  // vertex (0,1,0)
  l[3] = p23 - l8;             // vertex (0,1,1)
  l[4] = l8 + x1 - p12 - p13;  // vertex (1,0,0)
  l[5] = p13 - l8;             // vertex (1,0,1)
  l[6] = p12 - l8;             // vertex (1,1,0)
  l[0] = 1 - (l8 + sum_x - sum_p);
  return wit;
}

/// Outcome of rounding an LP-optimal w back to binary coordinates.
/// A non-binary recovery is a first-class result (counterexample
/// evidence), not an exception.
struct RecoveryResult {
  bool binary = false;
  std::vector<int> x;                 ///< rounded coordinates (valid iff binary)
  std::vector<Rational> fractional;   ///< g values before rounding
  Rational residual;                  ///< max_i |g_i - round(g_i)|
};

/// Recover x from w via g over the reference triplets (1,2,3), (2,1,3),
/// and (i,1,2) for i >= 3. Every component must lie strictly within tol
/// of {0,1} for the result to count as binary.
inline RecoveryResult recover_x(const LiftedPoint& w, const Layout& layout,
                                const Rational& tol = Rational(1, 4)) {
  if (w.n != layout.n())
    throw DimensionError("recover_x: layout n does not match point");
  const int n = layout.n();
  RecoveryResult res;
  res.fractional.reserve(static_cast<std::size_t>(n));
  res.x.reserve(static_cast<std::size_t>(n));
  res.residual = 0;
  for (int i = 1; i <= n; ++i) {
    Rational gi = i == 1   ? g(w, 1, 2, 3)
                  : i == 2 ? g(w, 2, 1, 3)
                           : g(w, i, 1, 2);
    int rounded = gi >= Rational(1, 2) ? 1 : 0;
    Rational dev = abs(Rational(gi - rounded));
    if (dev > res.residual) res.residual = dev;
    res.x.push_back(rounded);
    res.fractional.push_back(std::move(gi));
  }
  res.binary = res.residual < tol;
  return res;
}

/// The midpoint of two lifted vertices that no box point lifts to. If
/// phi(x) = w held for some x, the g-recovery would force x = (0,1/2,1/2),
/// whose lift differs from w in components 3 and 6 — the contradiction.
/// The Lw/phi_of_Lw pair displays the counterexample through the halved
/// candidate (0,1/4,1/4) = L(w/2), whose lift (1/8,1/8,5/16,1/8,1/8,3/16)
/// misses w in every component; both candidates are asserted internally.
struct NonconvexityCounterexample {
  LiftedPoint w;          ///< (phi(0,0,1) + phi(0,1,0)) / 2
  std::array<Rational, 3> Lw;  ///< displayed candidate (0, 1/4, 1/4)
  LiftedPoint phi_of_Lw;  ///< lift of the candidate; differs from w
};

inline NonconvexityCounterexample nonconvexity_counterexample() {
  NonconvexityCounterexample ce;
  auto a = phi_triplet(0, 0, 1);
  auto b = phi_triplet(0, 1, 0);
  ce.w.n = 3;
  ce.w.u.resize(3);
  ce.w.v.resize(3);
  for (int t = 0; t < 3; ++t) {
    ce.w.u[static_cast<std::size_t>(t)] =
        (a[static_cast<std::size_t>(t)] + b[static_cast<std::size_t>(t)]) / 2;
    ce.w.v[static_cast<std::size_t>(t)] =
        (a[static_cast<std::size_t>(t + 3)] + b[static_cast<std::size_t>(t + 3)]) / 2;
  }
  const std::array<Rational, 3> exact = {g(ce.w, 1, 2, 3), g(ce.w, 2, 1, 3),
                                         g(ce.w, 3, 1, 2)};
  if (phi({exact[0], exact[1], exact[2]}) == ce.w)
    throw Error("nonconvexity_counterexample: w lifts after all (internal)");
  ce.Lw = {exact[0] / 2, exact[1] / 2, exact[2] / 2};
  ce.phi_of_Lw = phi({ce.Lw[0], ce.Lw[1], ce.Lw[2]});
  if (ce.phi_of_Lw == ce.w)
    throw Error("nonconvexity_counterexample: points coincide (internal)");
  return ce;
}

}  // namespace cubelift
