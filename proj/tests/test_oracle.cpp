#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include <cubelift/instance.hpp>
#include <cubelift/oracle.hpp>

using namespace cubelift;

namespace {

UbqpInstance lp3_instance() {
  std::vector<std::vector<Rational>> q(3, std::vector<Rational>(3, Rational(0)));
  q[0][1] = q[1][0] = -10;
  q[0][2] = q[2][0] = -20;
  q[1][2] = q[2][1] = -10;
  return UbqpInstance(3, q, {Rational(-2), Rational(-2), Rational(-26)});
}

UbqpInstance example5_instance() {
  std::vector<std::vector<Rational>> q(4, std::vector<Rational>(4, Rational(0)));
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
  return UbqpInstance(
      4, q, {Rational(-8), Rational(-22), Rational(0), Rational(-32)});
}

}  // namespace

TEST_CASE("brute force reproduces the worked optima", "[oracle]") {
  auto r3 = brute_force_min(lp3_instance());
  CHECK(r3.value == Rational(-110));
  REQUIRE(r3.argmins.size() == 1);
  CHECK(r3.argmins[0] == std::vector<int>{1, 1, 1});

  auto r4 = brute_force_min(example5_instance());
  CHECK(r4.value == Rational(-170));
  REQUIRE(r4.argmins.size() == 1);
  CHECK(r4.argmins[0] == std::vector<int>{1, 1, 0, 1});
}

TEST_CASE("zero instance is minimized by every point", "[oracle]") {
  UbqpInstance zero(
      4, std::vector<std::vector<Rational>>(4,
           std::vector<Rational>(4, Rational(0))),
      std::vector<Rational>(4, Rational(0)));
  auto r = brute_force_min(zero);
  CHECK(r.value == 0);
  REQUIRE(r.argmins.size() == 16);
  CHECK(std::is_sorted(r.argmins.begin(), r.argmins.end()));
  CHECK(r.argmins.front() == std::vector<int>{0, 0, 0, 0});
  CHECK(r.argmins.back() == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("argmins are exactly the points attaining the minimum", "[oracle]") {
  auto inst = random_instance(5, Rational(-10), Rational(10),
                              ValueDomain::integer, 404);
  auto r = brute_force_min(inst);
  int count = 0;
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::vector<int> x(5);
    for (int i = 0; i < 5; ++i)
      x[static_cast<std::size_t>(i)] = static_cast<int>((mask >> i) & 1u);
    Rational v = evaluate(inst, x);
    CHECK(v >= r.value);
    if (v == r.value) {
      ++count;
      CHECK(std::find(r.argmins.begin(), r.argmins.end(), x) !=
            r.argmins.end());
    }
  }
  CHECK(static_cast<std::size_t>(count) == r.argmins.size());
}

TEST_CASE("oracle minimum is a lower bound on sampled evaluations",
          "[oracle]") {
  auto inst = random_instance(12, Rational(-50), Rational(50),
                              ValueDomain::integer, 505);
  auto r = brute_force_min(inst);
  std::mt19937_64 gen(606);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> x(12);
    for (auto& xi : x) xi = static_cast<int>(gen() & 1u);
    CHECK(evaluate(inst, x) >= r.value);
  }
}

TEST_CASE("Gray-code scan agrees with direct evaluation", "[oracle]") {
  auto inst = random_instance(10, Rational(-30), Rational(30),
                              ValueDomain::integer, 707);
  auto r = brute_force_min(inst);
  Rational direct_min;
  bool first = true;
  for (unsigned mask = 0; mask < 1024; ++mask) {
    std::vector<int> x(10);
    for (int i = 0; i < 10; ++i)
      x[static_cast<std::size_t>(i)] = static_cast<int>((mask >> i) & 1u);
    Rational v = evaluate(inst, x);
    if (first || v < direct_min) {
      direct_min = v;
      first = false;
    }
  }
  CHECK(r.value == direct_min);
}

TEST_CASE("oracle is equivariant under coordinate permutation", "[oracle]") {
  // Tie-rich instance (x2 is free at the optimum) so several argmins
  // move around under the permutation.
  std::vector<std::vector<Rational>> q(4, std::vector<Rational>(4, Rational(0)));
  q[2][3] = q[3][2] = -1;
  UbqpInstance inst(4, q, {Rational(-1), Rational(0), Rational(0), Rational(0)});

  // Swap coordinates (1 3) and (2 4).
  std::vector<std::vector<Rational>> qp(4, std::vector<Rational>(4, Rational(0)));
  qp[0][1] = qp[1][0] = -1;
  UbqpInstance permuted(4, qp,
                        {Rational(0), Rational(0), Rational(-1), Rational(0)});

  auto a = brute_force_min(inst);
  auto b = brute_force_min(permuted);
  CHECK(a.value == b.value);
  REQUIRE(a.argmins.size() == b.argmins.size());
  std::vector<std::vector<int>> mapped;
  for (auto x : a.argmins) {
    std::swap(x[0], x[2]);
    std::swap(x[1], x[3]);
    mapped.push_back(std::move(x));
  }
  std::sort(mapped.begin(), mapped.end());
  CHECK(mapped == b.argmins);
}

TEST_CASE("rational coefficients use the exact path", "[oracle]") {
  auto inst = random_instance(6, Rational(-2), Rational(2), ValueDomain::real,
                              808);
  auto r = brute_force_min(inst);
  Rational best;
  bool first = true;
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<int> x(6);
    for (int i = 0; i < 6; ++i)
      x[static_cast<std::size_t>(i)] = static_cast<int>((mask >> i) & 1u);
    Rational v = evaluate(inst, x);
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  CHECK(r.value == best);
}

TEST_CASE("huge coefficients avoid the integer fast path safely", "[oracle]") {
  // 2^61 coefficients overflow any int64 accumulation that sums a few
  // of them; the oracle must still return the exact minimum.
  Rational big = Rational(mpz_class(1) << 61);
  std::vector<std::vector<Rational>> q(3, std::vector<Rational>(3, Rational(0)));
  q[0][1] = q[1][0] = -big;
  q[0][2] = q[2][0] = -big;
  q[1][2] = q[2][1] = -big;
  UbqpInstance inst(3, q, {-big, -big, -big});
  auto r = brute_force_min(inst);
  CHECK(r.value == -9 * big);
  REQUIRE(r.argmins.size() == 1);
  CHECK(r.argmins[0] == std::vector<int>{1, 1, 1});
}

TEST_CASE("oracle refuses n beyond the enumeration cap", "[oracle]") {
  auto inst = random_instance(7, Rational(-5), Rational(5),
                              ValueDomain::integer, 909);
  CHECK_THROWS_AS(brute_force_min(inst, 6), ParameterError);
  CHECK_NOTHROW(brute_force_min(inst, 7));
}
