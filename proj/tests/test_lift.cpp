#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <cubelift/lift.hpp>
#include <cubelift/reduction.hpp>

using namespace cubelift;

namespace {

Rational rand_box(std::mt19937_64& gen) {
  // Dyadic points in [0,1] with denominator 64.
  Rational q(static_cast<long>(gen() % 65), 64);
  q.canonicalize();
  return q;
}

std::vector<Rational> rand_box_vec(std::mt19937_64& gen, int n) {
  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (auto& xi : x) xi = rand_box(gen);
  return x;
}

// Exact Gauss-Jordan inverse, test-support only.
Matrix invert(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug = m;
  Matrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && aug[piv][col] == 0) ++piv;
    REQUIRE(piv < n);
    std::swap(aug[piv], aug[col]);
    std::swap(inv[piv], inv[col]);
    Rational d = aug[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      aug[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      Rational f = aug[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        aug[r][j] -= f * aug[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

TEST_CASE("alpha enumerates x_i and pair products in order", "[lift]") {
  std::vector<Rational> x = {Rational(1), Rational(1, 2), Rational(1, 2)};
  std::vector<Rational> want = {Rational(1),    Rational(1, 2), Rational(1, 2),
                                Rational(1, 2), Rational(1, 4), Rational(1, 2)};
  CHECK(alpha(x) == want);

  auto a4 = alpha({Rational(1), Rational(0), Rational(1), Rational(1, 2)});
  REQUIRE(a4.size() == 10);
  CHECK(a4[0] == 1);          // x1
  CHECK(a4[1] == 0);          // x1 x2
  CHECK(a4[2] == 1);          // x1 x3
  CHECK(a4[3] == Rational(1, 2));  // x1 x4
  CHECK(a4[4] == 0);          // x2
  CHECK(a4[7] == 1);          // x3
  CHECK(a4[8] == Rational(1, 2));  // x3 x4
  CHECK(a4[9] == Rational(1, 2));  // x4
}

TEST_CASE("alpha equals S3 (x~ tensor x~) on the 3-cube", "[lift]") {
  Matrix s3 = build_S3();
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = rand_box_vec(gen, 3);
    std::vector<Rational> xt = {Rational(1), x[0], x[1], x[2]};
    std::vector<Rational> kron;
    kron.reserve(16);
    for (const auto& a : xt)
      for (const auto& b : xt) kron.push_back(a * b);
    CHECK(mat_vec(s3, kron) == alpha(x));
  }
}

TEST_CASE("alpha and phi reject out-of-box and undersized input", "[lift]") {
  CHECK_THROWS_AS(alpha({Rational(1), Rational(1)}), ParameterError);
  CHECK_THROWS_AS(alpha({Rational(2), Rational(0), Rational(0)}), DomainError);
  CHECK_THROWS_AS(alpha({Rational(0), Rational(-1, 8), Rational(0)}),
                  DomainError);
  CHECK_THROWS_AS(phi({Rational(0), Rational(0)}), ParameterError);
  CHECK_THROWS_AS(phi({Rational(0), Rational(3, 2), Rational(0)}), DomainError);
}

TEST_CASE("phi matches the worked lifts", "[lift]") {
  auto w1 = phi({Rational(1), Rational(1, 2), Rational(1, 2)});
  CHECK(w1.stacked() == std::vector<Rational>{Rational(5, 4), Rational(5, 4),
                                              Rational(3, 4), Rational(1, 4),
                                              Rational(1, 4), Rational(1, 4)});

  auto w2 = phi({Rational(0), Rational(1, 4), Rational(1, 4)});
  CHECK(w2.stacked() == std::vector<Rational>{Rational(1, 8), Rational(1, 8),
                                              Rational(5, 16), Rational(1, 8),
                                              Rational(1, 8), Rational(3, 16)});

  auto w3 = phi({Rational(1), Rational(1, 2), Rational(0)});
  CHECK(w3.stacked() == std::vector<Rational>{Rational(5, 4), Rational(1, 2),
                                              Rational(1, 4), Rational(1, 4),
                                              Rational(1, 2), Rational(1, 4)});

  auto w4 = phi({Rational(1), Rational(1), Rational(1)});
  CHECK(w4.stacked() == std::vector<Rational>{Rational(2), Rational(2),
                                              Rational(2), Rational(0),
                                              Rational(0), Rational(0)});
}

TEST_CASE("u + v and u - v recover sums and products", "[lift]") {
  std::mt19937_64 gen(23);
  for (int n : {3, 5, 7}) {
    Layout layout(n);
    auto x = rand_box_vec(gen, n);
    auto w = phi(x);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        auto idx = layout.iota(i, j);
        const Rational& xi = x[static_cast<std::size_t>(i - 1)];
        const Rational& xj = x[static_cast<std::size_t>(j - 1)];
        CHECK(w.u_at(idx) + w.v_at(idx) == xi + xj);
        CHECK(w.u_at(idx) - w.v_at(idx) == 2 * xi * xj);
      }
  }
}

TEST_CASE("lifted_from_w splits a stacked vector", "[lift]") {
  auto w = phi({Rational(1, 2), Rational(1, 3), Rational(1, 5), Rational(0)});
  auto back = lifted_from_w(w.stacked(), 4);
  CHECK(back == w);
  CHECK_THROWS_AS(lifted_from_w(std::vector<Rational>(5, Rational(0)), 3),
                  DimensionError);
}

TEST_CASE("g recovers coordinates from any triplet slice", "[lift]") {
  std::mt19937_64 gen(31);
  auto x = rand_box_vec(gen, 5);
  auto w = phi(x);
  Layout layout(5);
  for (const auto& [i, j, k] : layout.triplets()) {
    CHECK(g(w, i, j, k) == x[static_cast<std::size_t>(i - 1)]);
    CHECK(g(w, j, i, k) == x[static_cast<std::size_t>(j - 1)]);
    CHECK(g(w, k, i, j) == x[static_cast<std::size_t>(k - 1)]);
  }

  auto w0 = phi({Rational(1), Rational(1, 2), Rational(0)});
  CHECK(g(w0, 1, 2, 3) == 1);
  CHECK(g(w0, 2, 1, 3) == Rational(1, 2));
  CHECK(g(w0, 3, 1, 2) == 0);

  CHECK_THROWS_AS(g(w0, 1, 1, 2), IndexError);
  CHECK_THROWS_AS(g(w0, 1, 2, 2), IndexError);
}

TEST_CASE("lemma2 witness reproduces the worked weights", "[lift]") {
  auto check_witness = [](const std::array<Rational, 3>& x,
                          const std::array<Rational, 8>& expect,
                          const Lemma2Policy& policy) {
    Lemma2Witness wit = lemma2_witness(x, policy);
    CHECK(wit.lambda == expect);
  };

  check_witness({Rational(1), Rational(1, 2), Rational(1, 2)},
                {Rational(0), Rational(0), Rational(0), Rational(0),
                 Rational(1, 4), Rational(1, 4), Rational(1, 4),
                 Rational(1, 4)},
                Lemma2Policy::lower());
  check_witness({Rational(0), Rational(1, 4), Rational(1, 4)},
                {Rational(9, 16), Rational(3, 16), Rational(3, 16),
                 Rational(1, 16), Rational(0), Rational(0), Rational(0),
                 Rational(0)},
                Lemma2Policy::lower());
  check_witness({Rational(1, 4), Rational(1, 4), Rational(1, 4)},
                {Rational(13, 32), Rational(5, 32), Rational(5, 32),
                 Rational(1, 32), Rational(5, 32), Rational(1, 32),
                 Rational(1, 32), Rational(1, 32)},
                Lemma2Policy::explicit_value(Rational(1, 32)));
  check_witness({Rational(1, 4), Rational(1, 4), Rational(1, 4)},
                {Rational(3, 8), Rational(3, 16), Rational(3, 16), Rational(0),
                 Rational(3, 16), Rational(0), Rational(0), Rational(1, 16)},
                Lemma2Policy::upper());
}

TEST_CASE("lemma2 witness is a convex combination hitting phi(x)", "[lift]") {
  Matrix b = basic_block_B();
  std::mt19937_64 gen(47);
  auto policies = {Lemma2Policy::lower(), Lemma2Policy::upper(),
                   Lemma2Policy::midpoint()};
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<Rational, 3> x = {rand_box(gen), rand_box(gen), rand_box(gen)};
    for (const auto& policy : policies) {
      Lemma2Witness wit = lemma2_witness(x, policy);

      CHECK(wit.lambda8_interval.first <= wit.lambda8_interval.second);
      CHECK(wit.lambda8_interval.first >= 0);
      CHECK(wit.lambda8_interval.second <= 1);

      Rational total(0);
      for (const auto& l : wit.lambda) {
        CHECK(sign(l) >= 0);
        total += l;
      }
      CHECK(total == 1);

      auto target = phi_triplet(x[0], x[1], x[2]);
      for (int r = 0; r < 6; ++r) {
        Rational acc(0);
        for (int l = 0; l < 8; ++l)
          acc += b[static_cast<std::size_t>(r)][static_cast<std::size_t>(l)] *
                 wit.lambda[static_cast<std::size_t>(l)];
        CHECK(acc == target[static_cast<std::size_t>(r)]);
      }
    }
  }
}

TEST_CASE("lemma2 witness rejects bad input", "[lift]") {
  CHECK_THROWS_AS(
      lemma2_witness({Rational(2), Rational(0), Rational(0)},
                     Lemma2Policy::lower()),
      DomainError);
  // lambda8 pinned outside the feasible interval.
  CHECK_THROWS_AS(
      lemma2_witness({Rational(1), Rational(1), Rational(1)},
                     Lemma2Policy::explicit_value(Rational(1, 2))),
      ParameterError);
}

TEST_CASE("recover_x classifies binary and fractional points", "[lift]") {
  Layout l3(3);

  auto exact = lifted_from_w({Rational(2), Rational(2), Rational(2),
                              Rational(0), Rational(0), Rational(0)},
                             3);
  auto r1 = recover_x(exact, l3);
  CHECK(r1.binary);
  CHECK(r1.x == std::vector<int>{1, 1, 1});
  CHECK(r1.residual == 0);
  CHECK(r1.fractional ==
        std::vector<Rational>{Rational(1), Rational(1), Rational(1)});

  auto frac = phi({Rational(0), Rational(1, 4), Rational(1, 4)});
  auto r2 = recover_x(frac, l3, Rational(1, 1000000));
  CHECK_FALSE(r2.binary);
  CHECK(r2.fractional ==
        std::vector<Rational>{Rational(0), Rational(1, 4), Rational(1, 4)});
  CHECK(r2.residual == Rational(1, 4));
}

TEST_CASE("recover_x tolerance comparison is strict", "[lift]") {
  Layout l3(3);
  auto frac = phi({Rational(0), Rational(1, 4), Rational(1, 4)});
  // Residual is exactly 1/4: only a strictly larger tolerance accepts it.
  CHECK_FALSE(recover_x(frac, l3, Rational(1, 4)).binary);
  CHECK(recover_x(frac, l3, Rational(13, 50)).binary);
}

TEST_CASE("recover_x inverts phi on binary points", "[lift]") {
  std::mt19937_64 gen(53);
  for (int n : {3, 4, 6, 8}) {
    Layout layout(n);
    for (int trial = 0; trial < 32; ++trial) {
      std::vector<int> xb(static_cast<std::size_t>(n));
      std::vector<Rational> x(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        xb[static_cast<std::size_t>(i)] = static_cast<int>(gen() & 1u);
        x[static_cast<std::size_t>(i)] = xb[static_cast<std::size_t>(i)];
      }
      auto rec = recover_x(phi(x), layout);
      CHECK(rec.binary);
      CHECK(rec.x == xb);
      CHECK(rec.residual == 0);
    }
  }
  CHECK_THROWS_AS(
      recover_x(phi({Rational(0), Rational(0), Rational(0)}), Layout(4)),
      DimensionError);
}

TEST_CASE("E3 inverse recovers alpha from a lifted triplet", "[lift]") {
  // Independent recovery path: invert E3 outright and read x off alpha.
  Matrix e3 = build_E(3);
  Matrix e3_inv = invert(e3);
  CHECK(e3_inv == build_T(3));  // T3 is square at n = 3

  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = rand_box_vec(gen, 3);
    auto a = mat_vec(e3_inv, phi(x).stacked());
    CHECK(a == alpha(x));
    CHECK(a[0] == x[0]);
    CHECK(a[3] == x[1]);
    CHECK(a[5] == x[2]);
  }
}

TEST_CASE("midpoint of two lifted vertices is not itself a lift", "[lift]") {
  NonconvexityCounterexample ce = nonconvexity_counterexample();

  CHECK(ce.w.stacked() ==
        std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 2),
                              Rational(1, 4), Rational(1, 4), Rational(1, 2)});
  CHECK(ce.Lw == std::array<Rational, 3>{Rational(0), Rational(1, 4),
                                         Rational(1, 4)});
  CHECK(ce.phi_of_Lw.stacked() ==
        std::vector<Rational>{Rational(1, 8), Rational(1, 8), Rational(5, 16),
                              Rational(1, 8), Rational(1, 8), Rational(3, 16)});
  CHECK_FALSE(ce.phi_of_Lw == ce.w);

  // The g-recovery candidate (0, 1/2, 1/2) lifts to a point differing from
  // w exactly in components 3 and 6.
  std::array<Rational, 3> cand = {g(ce.w, 1, 2, 3), g(ce.w, 2, 1, 3),
                                  g(ce.w, 3, 1, 2)};
  CHECK(cand == std::array<Rational, 3>{Rational(0), Rational(1, 2),
                                        Rational(1, 2)});
  auto lifted = phi({cand[0], cand[1], cand[2]}).stacked();
  auto w = ce.w.stacked();
  for (std::size_t c = 0; c < 6; ++c) {
    if (c == 2 || c == 5)
      CHECK(lifted[c] != w[c]);
    else
      CHECK(lifted[c] == w[c]);
  }
}
