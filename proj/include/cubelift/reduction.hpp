#pragma once

/// \file reduction.hpp
/// Structural matrices of the reduction and the assembled LP:
///   B        6 x 8, columns are lifts of the binary triplet vertices
///   E_n      n(n-1) x n(n+1)/2, phi(x) = E_n alpha(x)
///   T_n      n(n+1)/2 x n(n-1), left inverse of E_n (T_n E_n = I)
///   L, S_3   3x6 and 6x16 helper constants for the n = 3 case
///   A11/A12/A31 convexity blocks, A22 consistency block
/// plus the objective vectors c (alpha order) and c~ = T_n^T c, and the
/// block assembly
///   [A11 A12; 0 A22; A31 0] (lambda, w) = (0, 0, 1),  minimize c~^T w.
/// Column order: 8N lambda entries grouped per triplet rank, then the u
/// band, then the v band. Everything is exact; sparse entries use 1-based
/// row/column indices.

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"
#include "layout.hpp"
#include "lift.hpp"
#include "rational.hpp"

namespace cubelift {

using Matrix = std::vector<std::vector<Rational>>;

inline Matrix zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<Rational>(cols, Rational(0)));
}

inline Matrix identity_matrix(std::size_t size) {
  Matrix m = zero_matrix(size, size);
  for (std::size_t i = 0; i < size; ++i) m[i][i] = 1;
  return m;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty() || a[0].size() != b.size())
    throw DimensionError("mat_mul: inner dimensions disagree");
  Matrix c = zero_matrix(a.size(), b[0].size());
  Rational t;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      const Rational& aik = a[i][k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b[k].size(); ++j) {
        if (b[k][j] == 0) continue;
        t = aik * b[k][j];
        c[i][j] += t;
      }
    }
  return c;
}

inline std::vector<Rational> mat_vec(const Matrix& a,
                                     const std::vector<Rational>& x) {
  if (!a.empty() && a[0].size() != x.size())
    throw DimensionError("mat_vec: dimensions disagree");
  std::vector<Rational> y(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0 && x[j] != 0) y[i] += a[i][j] * x[j];
  return y;
}

/// Sparse matrix as a canonical entry list: entries sorted by (row, col),
/// duplicates summed, zeros dropped. Indices are 1-based.
struct SparseEntry {
  long long row;
  long long col;
  Rational val;
};

class SparseCoeffList {
 public:
  SparseCoeffList() = default;
  SparseCoeffList(long long rows, long long cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
      throw DimensionError("SparseCoeffList: negative dimensions");
  }

  long long rows() const { return rows_; }
  long long cols() const { return cols_; }

  void add(long long row, long long col, Rational val) {
    if (row < 1 || row > rows_ || col < 1 || col > cols_)
      throw IndexError("SparseCoeffList::add: entry (" + std::to_string(row) +
                       "," + std::to_string(col) + ") outside " +
                       std::to_string(rows_) + "x" + std::to_string(cols_));
    raw_.push_back(SparseEntry{row, col, std::move(val)});
    canonical_ = false;
  }

  /// Sorted, duplicate-summed, zero-free entry list.
  const std::vector<SparseEntry>& entries() const {
    canonicalize();
    return raw_;
  }

  std::size_t nnz() const { return entries().size(); }

  /// A * x.
  std::vector<Rational> apply(const std::vector<Rational>& x) const {
    if (x.size() != static_cast<std::size_t>(cols_))
      throw DimensionError("SparseCoeffList::apply: vector length " +
                           std::to_string(x.size()) + ", expected " +
                           std::to_string(cols_));
    std::vector<Rational> y(static_cast<std::size_t>(rows_), Rational(0));
    Rational t;
    for (const auto& e : entries()) {
      const Rational& xv = x[static_cast<std::size_t>(e.col - 1)];
      if (xv == 0) continue;
      t = e.val * xv;
      y[static_cast<std::size_t>(e.row - 1)] += t;
    }
    return y;
  }

  /// Paste `other` with its (1,1) placed at (row_off+1, col_off+1).
  void embed(const SparseCoeffList& other, long long row_off,
             long long col_off) {
    for (const auto& e : other.entries())
      add(e.row + row_off, e.col + col_off, e.val);
  }

 private:
  void canonicalize() const {
    if (canonical_) return;
    std::sort(raw_.begin(), raw_.end(),
              [](const SparseEntry& a, const SparseEntry& b) {
                return a.row != b.row ? a.row < b.row : a.col < b.col;
              });
    std::vector<SparseEntry> merged;
    merged.reserve(raw_.size());
    for (auto& e : raw_) {
      if (!merged.empty() && merged.back().row == e.row &&
          merged.back().col == e.col)
        merged.back().val += e.val;
      else
        merged.push_back(std::move(e));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const SparseEntry& e) { return e.val == 0; }),
                 merged.end());
    raw_ = std::move(merged);
    canonical_ = true;
  }

  long long rows_ = 0;
  long long cols_ = 0;
  mutable std::vector<SparseEntry> raw_;
  mutable bool canonical_ = true;
};

/// 6 x 8 basic block: column l is the lift of the binary triplet vertex
/// with index l = 1 + 4 x_a + 2 x_b + x_c.
inline Matrix basic_block_B() {
  Matrix B = zero_matrix(6, 8);
  for (int l = 0; l < 8; ++l) {
    auto col = phi_triplet(Rational((l >> 2) & 1), Rational((l >> 1) & 1),
                           Rational(l & 1));
    for (int t = 0; t < 6; ++t)
      B[static_cast<std::size_t>(t)][static_cast<std::size_t>(l)] =
          col[static_cast<std::size_t>(t)];
  }
  return B;
}

namespace detail {

/// Column of x_i in alpha order (1-based).
inline long long alpha_col_single(int i, int n) {
  long long li = i, ln = n;
  return (li - 1) * (2 * ln + 2 - li) / 2 + 1;
}

/// Column of x_i x_j (i < j) in alpha order (1-based).
inline long long alpha_col_pair(int i, int j, int n) {
  return alpha_col_single(i, n) + (j - i);
}

}  // namespace detail

/// E_n with phi(x) = E_n alpha(x); rows are the u band then the v band.
inline Matrix build_E(int n) {
  Layout layout(n);
  const auto n1 = static_cast<std::size_t>(layout.N1());
  const auto acols = static_cast<std::size_t>(n) * (n + 1) / 2;
  Matrix E = zero_matrix(2 * n1, acols);
  const Rational half(1, 2);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      auto u_row = static_cast<std::size_t>(layout.iota(i, j) - 1);
      auto v_row = u_row + n1;
      auto ci = static_cast<std::size_t>(detail::alpha_col_single(i, n) - 1);
      auto cj = static_cast<std::size_t>(detail::alpha_col_single(j, n) - 1);
      auto cij = static_cast<std::size_t>(detail::alpha_col_pair(i, j, n) - 1);
      E[u_row][ci] = half;
      E[u_row][cj] = half;
      E[u_row][cij] = 1;
      E[v_row][ci] = half;
      E[v_row][cj] = half;
      E[v_row][cij] = -1;
    }
  return E;
}

/// T_n with T_n E_n = I: single variables via the g functional over the
/// reference pairs {(1,2), (1,i), (2,i)}, cross products via
/// x_i x_j = (u_ij - v_ij)/2.
inline Matrix build_T(int n) {
  Layout layout(n);
  const auto n1 = static_cast<std::size_t>(layout.N1());
  const auto arows = static_cast<std::size_t>(n) * (n + 1) / 2;
  Matrix T = zero_matrix(arows, 2 * n1);
  const Rational half(1, 2);

  auto put_both_bands = [&](std::size_t row, long long iota_index,
                            const Rational& coeff) {
    T[row][static_cast<std::size_t>(iota_index - 1)] = coeff;
    T[row][static_cast<std::size_t>(iota_index - 1) + n1] = coeff;
  };

  for (int i = 1; i <= n; ++i) {
    auto row = static_cast<std::size_t>(detail::alpha_col_single(i, n) - 1);
    int j = i == 1 ? 2 : 1;
    int k = i <= 2 ? 3 : 2;
    // x_i = (u_ij + v_ij + u_ik + v_ik - u_jk - v_jk)/2
    put_both_bands(row, layout.iota(i, j), half);
    put_both_bands(row, layout.iota(i, k), half);
    put_both_bands(row, layout.iota(j, k), -half);
    for (int j2 = i + 1; j2 <= n; ++j2) {
      auto prow = static_cast<std::size_t>(detail::alpha_col_pair(i, j2, n) - 1);
      auto idx = static_cast<std::size_t>(layout.iota(i, j2) - 1);
      T[prow][idx] = half;
      T[prow][idx + n1] = -half;
    }
  }
  return T;
}

/// 3 x 6 recovery matrix with x = L phi(x); its rows are the g selectors
/// of the reference triplets (1,2,3), (2,1,3), (3,1,2).
inline Matrix build_L3() {
  Matrix L = zero_matrix(3, 6);
  Layout layout(3);
  const Rational half(1, 2);
  const int refs[3][3] = {{1, 2, 3}, {2, 1, 3}, {3, 1, 2}};
  for (int r = 0; r < 3; ++r) {
    int i = refs[r][0], j = refs[r][1], k = refs[r][2];
    for (int band = 0; band < 2; ++band) {
      auto off = static_cast<std::size_t>(3 * band);
      L[static_cast<std::size_t>(r)][off + static_cast<std::size_t>(layout.iota(i, j) - 1)] = half;
      L[static_cast<std::size_t>(r)][off + static_cast<std::size_t>(layout.iota(i, k) - 1)] = half;
      L[static_cast<std::size_t>(r)][off + static_cast<std::size_t>(layout.iota(j, k) - 1)] = -half;
    }
  }
  return L;
}

/// 6 x 16 selection matrix with alpha(x) = S_3 (x~ kron x~) for
/// x~ = (1, x_1, x_2, x_3).
inline Matrix build_S3() {
  Matrix S = zero_matrix(6, 16);
  const Rational half(1, 2);
  // alpha components as index pairs (a,b) into x~, both orders averaged.
  const int pairs[6][2] = {{2, 1}, {2, 3}, {2, 4}, {3, 1}, {3, 4}, {4, 1}};
  for (int r = 0; r < 6; ++r) {
    int a = pairs[r][0], b = pairs[r][1];
    S[static_cast<std::size_t>(r)][static_cast<std::size_t>(4 * (a - 1) + b - 1)] = half;
    S[static_cast<std::size_t>(r)][static_cast<std::size_t>(4 * (b - 1) + a - 1)] = half;
  }
  return S;
}

/// Objective in alpha order: b_i on the x_i slot, 2 Q_ij on the x_i x_j slot.
inline std::vector<Rational> objective_vector(const UbqpInstance& inst) {
  const int n = inst.n();
  std::vector<Rational> c(static_cast<std::size_t>(n) * (n + 1) / 2,
                          Rational(0));
  for (int i = 1; i <= n; ++i) {
    c[static_cast<std::size_t>(detail::alpha_col_single(i, n) - 1)] = inst.b(i);
    for (int j = i + 1; j <= n; ++j)
      c[static_cast<std::size_t>(detail::alpha_col_pair(i, j, n) - 1)] =
          2 * inst.Q(i, j);
  }
  return c;
}

/// c~ with c~^T = c^T T_n; length 2 N1.
inline std::vector<Rational> transformed_objective(const UbqpInstance& inst) {
  Matrix T = build_T(inst.n());
  std::vector<Rational> c = objective_vector(inst);
  std::vector<Rational> ct(T.empty() ? 0 : T[0].size(), Rational(0));
  for (std::size_t r = 0; r < T.size(); ++r) {
    if (c[r] == 0) continue;
    for (std::size_t j = 0; j < T[r].size(); ++j)
      if (T[r][j] != 0) ct[j] += c[r] * T[r][j];
  }
  return ct;
}

struct ConvexityBlocks {
  SparseCoeffList A11;  ///< 6N x 8N, diagonal B blocks
  SparseCoeffList A12;  ///< 6N x 2N1, -1 links into the u and v bands
  SparseCoeffList A31;  ///< N x 8N, ones over each triplet's lambda group
};

inline ConvexityBlocks build_convexity(const Layout& layout) {
  const long long N = layout.N(), N1 = layout.N1();
  ConvexityBlocks blocks{SparseCoeffList(6 * N, 8 * N),
                         SparseCoeffList(6 * N, 2 * N1),
                         SparseCoeffList(N, 8 * N)};
  const Matrix B = basic_block_B();
  for (long long r = 1; r <= N; ++r) {
    auto [i, j, k] = layout.triplet_at(r);
    const long long row0 = 6 * (r - 1);
    for (int t = 0; t < 6; ++t)
      for (int l = 0; l < 8; ++l) {
        const Rational& v = B[static_cast<std::size_t>(t)][static_cast<std::size_t>(l)];
        if (v != 0) blocks.A11.add(row0 + t + 1, 8 * (r - 1) + l + 1, v);
      }
    const long long cols[3] = {layout.iota(i, j), layout.iota(i, k),
                               layout.iota(j, k)};
    for (int t = 0; t < 3; ++t) {
      blocks.A12.add(row0 + t + 1, cols[t], Rational(-1));
      blocks.A12.add(row0 + t + 4, N1 + cols[t], Rational(-1));
    }
    for (int l = 1; l <= 8; ++l) blocks.A31.add(r, 8 * (r - 1) + l, Rational(1));
  }
  return blocks;
}

/// A22: one row per (i, non-reference pair (j,k)) encoding
/// g_{i,j1,k1}(w) - g_{i,j,k}(w) = 0 with the reference pair (j1,k1) being
/// (2,3) for i = 1, (1,3) for i = 2 and (1,2) otherwise. Coefficients
/// accumulate (overlapping pairs cancel) and the u-band pattern repeats
/// identically on the v band. Pairs stream one at a time, lexicographic
/// over the complement of {i}, skipping the leading reference pair.
inline SparseCoeffList build_consistency(const Layout& layout) {
  const int n = layout.n();
  const long long N1 = layout.N1();
  SparseCoeffList A22(layout.N2(), 2 * N1);
  long long row = 0;
  for (int i = 1; i <= n; ++i) {
    const int j1 = i == 1 ? 2 : 1;
    const int k1 = i <= 2 ? 3 : 2;
    bool first = true;
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      for (int k = j + 1; k <= n; ++k) {
        if (k == i) continue;
        if (first) {
          first = false;  // leading pair is the reference (j1,k1)
          continue;
        }
        ++row;
        std::map<long long, int> coeff;
        coeff[layout.iota(i, j1)] += 1;
        coeff[layout.iota(i, k1)] += 1;
        coeff[layout.iota(j1, k1)] -= 1;
        coeff[layout.iota(i, j)] -= 1;
        coeff[layout.iota(i, k)] -= 1;
        coeff[layout.iota(j, k)] += 1;
        for (const auto& [col, c] : coeff) {
          if (c == 0) continue;
          A22.add(row, col, Rational(c));
          A22.add(row, N1 + col, Rational(c));
        }
      }
    }
  }
  return A22;
}

/// The assembled equality system over (lambda, w) with cost (0, c~).
struct AssembledLp {
  Layout layout;
  SparseCoeffList A;           ///< (7N + N2) x (8N + 2N1)
  std::vector<Rational> rhs;   ///< 0 on link and consistency rows, 1 per triplet
  std::vector<Rational> cost;  ///< zero over lambda, c~ over w
};

inline AssembledLp assemble(const UbqpInstance& inst) {
  Layout layout(inst.n());
  const long long N = layout.N(), N1 = layout.N1(), N2 = layout.N2();
  AssembledLp lp{layout, SparseCoeffList(layout.lp_rows(), layout.lp_cols()),
                 {}, {}};

  ConvexityBlocks blocks = build_convexity(layout);
  SparseCoeffList A22 = build_consistency(layout);
  lp.A.embed(blocks.A11, 0, 0);
  lp.A.embed(blocks.A12, 0, 8 * N);
  lp.A.embed(A22, 6 * N, 8 * N);
  lp.A.embed(blocks.A31, 6 * N + N2, 0);

  lp.rhs.assign(static_cast<std::size_t>(layout.lp_rows()), Rational(0));
  for (long long r = 0; r < N; ++r)
    lp.rhs[static_cast<std::size_t>(6 * N + N2 + r)] = 1;

  lp.cost.assign(static_cast<std::size_t>(layout.lp_cols()), Rational(0));
  std::vector<Rational> ct = transformed_objective(inst);
  for (std::size_t t = 0; t < ct.size(); ++t)
    lp.cost[static_cast<std::size_t>(8 * N) + t] = std::move(ct[t]);
  return lp;
}

/// Column names in LP column order: lam[r][l], then u[i][j], then v[i][j].
inline std::vector<std::string> lp_var_names(const Layout& layout) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(layout.lp_cols()));
  for (long long r = 1; r <= layout.N(); ++r)
    for (int l = 1; l <= 8; ++l)
      names.push_back("lam[" + std::to_string(r) + "][" + std::to_string(l) +
                      "]");
  for (const char* band : {"u", "v"})
    for (int i = 1; i <= layout.n(); ++i)
      for (int j = i + 1; j <= layout.n(); ++j)
        names.push_back(std::string(band) + "[" + std::to_string(i) + "][" +
                        std::to_string(j) + "]");
  return names;
}

inline nlohmann::json lp_to_json(const AssembledLp& lp) {
  nlohmann::json j;
  j["rows"] = lp.A.rows();
  j["cols"] = lp.A.cols();
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : lp.A.entries())
    entries.push_back({e.row, e.col, format_rational(e.val)});
  j["entries"] = std::move(entries);
  nlohmann::json rhs = nlohmann::json::array();
  for (const auto& v : lp.rhs) rhs.push_back(format_rational(v));
  j["rhs"] = std::move(rhs);
  nlohmann::json cost = nlohmann::json::array();
  for (const auto& v : lp.cost) cost.push_back(format_rational(v));
  j["cost"] = std::move(cost);
  j["var_names"] = lp_var_names(lp.layout);
  return j;
}

inline void write_lp(const AssembledLp& lp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << lp_to_json(lp).dump() << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace cubelift
