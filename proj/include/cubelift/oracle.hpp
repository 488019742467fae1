#pragma once

/// \file oracle.hpp
/// Exhaustive minimizer for UBQP instances, used as the ground truth the
/// LP route is checked against. Enumeration walks a binary-reflected Gray
/// code so each step flips a single bit and the objective is updated
/// incrementally; integer data small enough to provably fit in 64 bits
/// takes a machine-word fast path.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"
#include "rational.hpp"

namespace cubelift {

struct BruteForceResult {
  Rational value;
  std::vector<std::vector<int>> argmins;  ///< all minimizers, lexicographic
};

namespace detail {

inline std::vector<std::vector<int>> materialize_argmins(
    const std::vector<std::uint32_t>& masks, int n) {
  std::vector<std::vector<int>> out;
  out.reserve(masks.size());
  for (std::uint32_t m : masks) {
    std::vector<int> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (m >> i) & 1u;
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Gray-code scan over all 2^n points. T is long long or Rational; the
/// caller guarantees long long cannot overflow.
template <class T>
std::pair<T, std::vector<std::uint32_t>> gray_scan(
    const std::vector<std::vector<T>>& q, const std::vector<T>& b, int n) {
  std::vector<T> s(static_cast<std::size_t>(n), T(0));
  std::uint32_t x = 0;
  T f = T(0);
  T best = f;
  std::vector<std::uint32_t> argmins{0};
  const std::uint64_t total = std::uint64_t(1) << n;
  for (std::uint64_t t = 1; t < total; ++t) {
    const int k = std::countr_zero(t);
    x ^= std::uint32_t(1) << k;
    const bool now_one = (x >> k) & 1u;
    const auto ku = static_cast<std::size_t>(k);
    if (now_one)
      f += b[ku] + 2 * s[ku];
    else
      f -= b[ku] + 2 * s[ku];
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const T& qik = q[static_cast<std::size_t>(i)][ku];
      if (qik == T(0)) continue;
      if (now_one)
        s[static_cast<std::size_t>(i)] += qik;
      else
        s[static_cast<std::size_t>(i)] -= qik;
    }
    if (f < best) {
      best = f;
      argmins.assign(1, x);
    } else if (f == best) {
      argmins.push_back(x);
    }
  }
  return {best, std::move(argmins)};
}

}  // namespace detail

/// Exact minimum of f over {0,1}^n by enumeration. Refuses n above the
/// cap; the walk itself is linear-time per point but still exponential
/// overall, and the cap keeps callers honest about that.
inline BruteForceResult brute_force_min(const UbqpInstance& inst,
                                        int cap = 26) {
  const int n = inst.n();
  if (n > cap)
    throw ParameterError("brute_force_min: n = " + std::to_string(n) +
                         " exceeds enumeration cap " + std::to_string(cap));

  bool integral = true;
  Rational magnitude = 0;
  for (int i = 1; i <= n && integral; ++i) {
    if (!is_integer(inst.b(i))) integral = false;
    magnitude += abs(inst.b(i));
    for (int j = i + 1; j <= n && integral; ++j) {
      if (!is_integer(inst.Q(i, j))) integral = false;
      magnitude += 4 * abs(inst.Q(i, j));
    }
  }

  if (integral && magnitude < Rational("4611686018427387904")) {  // 2^62
    std::vector<std::vector<long long>> q(
        static_cast<std::size_t>(n),
        std::vector<long long>(static_cast<std::size_t>(n), 0));
    std::vector<long long> b(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
      b[static_cast<std::size_t>(i - 1)] = inst.b(i).get_num().get_si();
      for (int j = 1; j <= n; ++j)
        if (i != j)
          q[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
              inst.Q(i, j).get_num().get_si();
    }
    auto [best, masks] = detail::gray_scan<long long>(q, b, n);
    return BruteForceResult{Rational(static_cast<long>(best)),
                            detail::materialize_argmins(masks, n)};
  }

  std::vector<std::vector<Rational>> q(
      static_cast<std::size_t>(n),
      std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  std::vector<Rational> b(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    b[static_cast<std::size_t>(i - 1)] = inst.b(i);
    for (int j = 1; j <= n; ++j)
      if (i != j)
        q[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
            inst.Q(i, j);
  }
  auto [best, masks] = detail::gray_scan<Rational>(q, b, n);
  return BruteForceResult{best, detail::materialize_argmins(masks, n)};
}

}  // namespace cubelift
