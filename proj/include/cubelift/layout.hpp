#pragma once

/// \file layout.hpp
/// Index arithmetic shared by every module: the pair positioning index
/// iota, lexicographic triplet enumeration, and the dimension counts
///   N  = C(n,3)   triplets,
///   N1 = C(n,2)   pairs (length of each of the u and v bands),
///   N2 = n * (C(n-1,2) - 1)   consistency rows.
/// All public indices are 1-based; any 0-based storage converts at the
/// call site, never here.

#include <array>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cubelift {

struct Dims {
  long long N;
  long long N1;
  long long N2;
  bool operator==(const Dims&) const = default;
};

/// (N, N1, N2) for a given n; throws ParameterError for n < 3.
inline Dims dims(int n) {
  if (n < 3)
    throw ParameterError("dims: n must be >= 3, got " + std::to_string(n));
  long long nn = n;
  return Dims{nn * (nn - 1) * (nn - 2) / 6, nn * (nn - 1) / 2,
              nn * ((nn - 1) * (nn - 2) / 2 - 1)};
}

class Layout {
 public:
  explicit Layout(int n) : n_(n), d_(dims(n)) {
    triplets_.reserve(static_cast<std::size_t>(d_.N));
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) triplets_.push_back({i, j, k});
  }

  int n() const { return n_; }
  long long N() const { return d_.N; }
  long long N1() const { return d_.N1; }
  long long N2() const { return d_.N2; }

  /// Row/column counts of the assembled LP system.
  long long lp_rows() const { return 7 * d_.N + d_.N2; }
  long long lp_cols() const { return 8 * d_.N + 2 * d_.N1; }

  /// Position of pair {i,j} inside the u band (and the v band), 1..N1.
  /// Arguments in either order; i = j or out-of-range is an error.
  long long iota(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_)
      throw IndexError("iota: index out of range for n=" + std::to_string(n_) +
                       ": (" + std::to_string(i) + "," + std::to_string(j) + ")");
    if (i == j)
      throw IndexError("iota: indices must be distinct, got i=j=" +
                       std::to_string(i));
    if (i > j) std::swap(i, j);
    long long li = i, lj = j, ln = n_;
    return (li - 1) * (2 * ln - li) / 2 + (lj - li);
  }

  /// Lexicographic rank of triplet i<j<k, 1..N.
  long long triplet_rank(int i, int j, int k) const {
    if (!(1 <= i && i < j && j < k && k <= n_))
      throw IndexError("triplet_rank: need 1 <= i < j < k <= n, got (" +
                       std::to_string(i) + "," + std::to_string(j) + "," +
                       std::to_string(k) + ") with n=" + std::to_string(n_));
    long long ln = n_, r = 0;
    for (long long a = 1; a < i; ++a) r += (ln - a) * (ln - a - 1) / 2;
    for (long long b = i + 1; b < j; ++b) r += ln - b;
    return r + (k - j - 1) + 1;
  }

  /// Inverse of triplet_rank.
  std::array<int, 3> triplet_at(long long r) const {
    if (r < 1 || r > d_.N)
      throw IndexError("triplet_at: rank " + std::to_string(r) +
                       " outside 1.." + std::to_string(d_.N));
    return triplets_[static_cast<std::size_t>(r - 1)];
  }

  const std::vector<std::array<int, 3>>& triplets() const { return triplets_; }

 private:
  int n_;
  Dims d_;
  std::vector<std::array<int, 3>> triplets_;
};

}  // namespace cubelift
