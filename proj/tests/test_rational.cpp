#include <catch2/catch_amalgamated.hpp>

#include <cubelift/rational.hpp>

using namespace cubelift;

TEST_CASE("parse_rational accepts integers and fractions", "[rational]") {
  CHECK(parse_rational("0") == Rational(0));
  CHECK(parse_rational("42") == Rational(42));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("+13") == Rational(13));
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-785/3") == Rational(-785, 3));
  CHECK(parse_rational("6/4") == Rational(3, 2));   // canonicalized
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
}

TEST_CASE("parse_rational accepts decimal and scientific notation exactly",
          "[rational]") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(parse_rational("2.") == Rational(2));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("1e-6") == Rational(1, 1000000));
  CHECK(parse_rational("1E-6") == Rational(1, 1000000));
  CHECK(parse_rational("2.5e3") == Rational(2500));
  CHECK(parse_rational("1.25e-2") == Rational(1, 80));
  CHECK(parse_rational("0.1") == Rational(1, 10));  // exact, unlike binary floats
}

TEST_CASE("parse_rational rejects malformed strings", "[rational]") {
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/"), ValidationError);
  CHECK_THROWS_AS(parse_rational("/2"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1.5/2"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1e"), ValidationError);
  CHECK_THROWS_AS(parse_rational("nan"), ValidationError);
  CHECK_THROWS_AS(parse_rational("inf"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1 2"), ValidationError);
  CHECK_THROWS_AS(parse_rational("--3"), ValidationError);
}

TEST_CASE("format_rational produces canonical p or p/q", "[rational]") {
  CHECK(format_rational(Rational(5)) == "5");
  CHECK(format_rational(Rational(-5)) == "-5");
  CHECK(format_rational(Rational(1, 3)) == "1/3");
  CHECK(format_rational(Rational(-785, 3)) == "-785/3");
  CHECK(format_rational(parse_rational("4/2")) == "2");
  CHECK(format_rational(Rational(0)) == "0");
}

TEST_CASE("format/parse round-trips", "[rational]") {
  for (long p = -17; p <= 17; ++p)
    for (long q = 1; q <= 9; ++q) {
      Rational r(p, q);
      r.canonicalize();
      CHECK(parse_rational(format_rational(r)) == r);
    }
}

TEST_CASE("dyadic builds num / 2^k", "[rational]") {
  CHECK(dyadic(1, 2) == Rational(1, 4));
  CHECK(dyadic(3, 1) == Rational(3, 2));
  CHECK(dyadic(-5, 4) == Rational(-5, 16));
  CHECK(dyadic(4, 2) == Rational(1));
  CHECK(dyadic(0, 20) == Rational(0));
}

TEST_CASE("sign, to_double, is_integer helpers", "[rational]") {
  CHECK(sign(Rational(-3, 7)) == -1);
  CHECK(sign(Rational(0)) == 0);
  CHECK(sign(Rational(9)) == 1);
  CHECK(to_double(Rational(1, 2)) == 0.5);
  CHECK(is_integer(parse_rational("6/3")));
  CHECK_FALSE(is_integer(Rational(1, 3)));
}

TEST_CASE("arithmetic stays exact at scale", "[rational]") {
  // Accumulating thirds never drifts; 3000 * (1/3) == 1000 exactly.
  Rational acc(0);
  for (int i = 0; i < 3000; ++i) acc += Rational(1, 3);
  CHECK(acc == Rational(1000));

  // Large numerators survive round-trip through strings.
  Rational big = parse_rational("123456789012345678901234567890/7");
  CHECK(parse_rational(format_rational(big)) == big);
}
