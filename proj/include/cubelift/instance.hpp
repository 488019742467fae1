#pragma once

/// \file instance.hpp
/// UBQP instances: f(x) = x^T Q x + b^T x over binary x, with Q symmetric
/// and zero on the diagonal. Covers construction/validation, evaluation,
/// seeded random generation, and the instance JSON format:
///
///   {"n": int, "Q": [[rational-string]], "b": [rational-string],
///    "domain": "integer"|"real"}
///
/// Q may be given as the full n x n matrix or as the strict upper triangle
/// (row i holding entries (i,i+1)..(i,n)); it is expanded on read. Plain
/// JSON integers are also accepted wherever a rational string is expected.
/// Entry names in error messages are 1-based.

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace cubelift {

enum class ValueDomain { integer, real };

inline std::string to_string(ValueDomain d) {
  return d == ValueDomain::integer ? "integer" : "real";
}

class UbqpInstance {
 public:
  UbqpInstance(int n, std::vector<std::vector<Rational>> Q,
               std::vector<Rational> b,
               ValueDomain domain = ValueDomain::integer)
      : n_(n), Q_(std::move(Q)), b_(std::move(b)), domain_(domain) {
    if (n_ < 3)
      throw ParameterError("instance: n must be >= 3, got " +
                           std::to_string(n_));
    if (Q_.size() != static_cast<std::size_t>(n_))
      throw DimensionError("instance: Q must have n rows");
    for (const auto& row : Q_)
      if (row.size() != static_cast<std::size_t>(n_))
        throw DimensionError("instance: Q must be n x n");
    if (b_.size() != static_cast<std::size_t>(n_))
      throw DimensionError("instance: b must have length n");
    for (int i = 1; i <= n_; ++i) {
      if (this->Q(i, i) != 0)
        throw ValidationError("instance: nonzero diagonal at Q[" +
                              std::to_string(i) + "][" + std::to_string(i) +
                              "]");
      for (int j = i + 1; j <= n_; ++j)
        if (this->Q(i, j) != this->Q(j, i))
          throw ValidationError("instance: Q[" + std::to_string(i) + "][" +
                                std::to_string(j) + "] != Q[" +
                                std::to_string(j) + "][" + std::to_string(i) +
                                "]");
    }
  }

  int n() const { return n_; }
  ValueDomain domain() const { return domain_; }

  /// 1-based element access.
  const Rational& Q(int i, int j) const {
    return Q_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  }
  const Rational& b(int i) const { return b_[static_cast<std::size_t>(i - 1)]; }

  const std::vector<std::vector<Rational>>& Q_matrix() const { return Q_; }
  const std::vector<Rational>& b_vector() const { return b_; }

  bool operator==(const UbqpInstance&) const = default;

 private:
  int n_;
  std::vector<std::vector<Rational>> Q_;
  std::vector<Rational> b_;
  ValueDomain domain_;
};

/// f(x) = x^T Q x + b^T x for binary x.
inline Rational evaluate(const UbqpInstance& inst, const std::vector<int>& x) {
  if (x.size() != static_cast<std::size_t>(inst.n()))
    throw DimensionError("evaluate: x has length " + std::to_string(x.size()) +
                         ", expected " + std::to_string(inst.n()));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 && x[i] != 1)
      throw ParameterError("evaluate: x[" + std::to_string(i + 1) +
                           "] must be 0 or 1");
  Rational f = 0;
  for (int i = 1; i <= inst.n(); ++i) {
    if (!x[static_cast<std::size_t>(i - 1)]) continue;
    Rational row = inst.b(i);
    for (int j = 1; j <= inst.n(); ++j)
      if (x[static_cast<std::size_t>(j - 1)]) row += inst.Q(i, j);
    f += row;
  }
  return f;
}

namespace detail {

/// Uniform draw from [0, range-1], stable across platforms (rejection on
/// the standardized mt19937_64 stream).
inline std::uint64_t bounded_draw(std::mt19937_64& gen, std::uint64_t range) {
  const std::uint64_t limit = range * (UINT64_MAX / range);
  std::uint64_t v;
  do {
    v = gen();
  } while (v >= limit);
  return v % range;
}

}  // namespace detail

/// Random instance with Q off-diagonal and b entries uniform in [lo,hi]:
/// integers for the integer domain, dyadic rationals with denominator 2^20
/// for the real domain. Draw order is Q(1,2)..Q(1,n), Q(2,3)..,
/// then b(1)..b(n); identical seed gives an identical instance.
inline UbqpInstance random_instance(int n, const Rational& lo,
                                    const Rational& hi, ValueDomain domain,
                                    std::uint64_t seed) {
  if (n < 3)
    throw ParameterError("random_instance: n must be >= 3, got " +
                         std::to_string(n));
  if (lo > hi)
    throw ParameterError("random_instance: lo > hi");

  // Integer grid for the integer domain, 2^-20 grid for the real domain.
  mpz_class scale(1);
  if (domain == ValueDomain::real) scale <<= 20;
  mpz_class lo_i, hi_i;
  mpz_cdiv_q(lo_i.get_mpz_t(), Rational(lo * scale).get_num().get_mpz_t(),
             Rational(lo * scale).get_den().get_mpz_t());
  mpz_fdiv_q(hi_i.get_mpz_t(), Rational(hi * scale).get_num().get_mpz_t(),
             Rational(hi * scale).get_den().get_mpz_t());
  if (lo_i > hi_i)
    throw ParameterError("random_instance: no representable values in range");
  mpz_class count = hi_i - lo_i + 1;
  if (!count.fits_ulong_p())
    throw ParameterError("random_instance: range too wide");
  const std::uint64_t range = count.get_ui();

  std::mt19937_64 gen(seed);
  auto draw = [&]() {
    mpz_class v = lo_i + mpz_class(static_cast<unsigned long>(
                             detail::bounded_draw(gen, range)));
    Rational q(v, scale);
    q.canonicalize();
    return q;
  };

  std::vector<std::vector<Rational>> Q(
      static_cast<std::size_t>(n),
      std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational v = draw();
      Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      Q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  std::vector<Rational> b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = draw();
  return UbqpInstance(n, std::move(Q), std::move(b), domain);
}

namespace detail {

inline Rational json_rational(const nlohmann::json& v, const std::string& name) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  throw ValidationError("malformed number at " + name +
                        ": expected rational string");
}

}  // namespace detail

inline nlohmann::json instance_to_json(const UbqpInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.n();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 1; i <= inst.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 1; k <= inst.n(); ++k) row.push_back(format_rational(inst.Q(i, k)));
    rows.push_back(std::move(row));
  }
  j["Q"] = std::move(rows);
  nlohmann::json b = nlohmann::json::array();
  for (int i = 1; i <= inst.n(); ++i) b.push_back(format_rational(inst.b(i)));
  j["b"] = std::move(b);
  j["domain"] = to_string(inst.domain());
  return j;
}

inline UbqpInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("Q") ||
      !j.contains("b") || !j.contains("domain"))
    throw ValidationError("instance: expected keys n, Q, b, domain");
  if (!j["n"].is_number_integer())
    throw ValidationError("instance: n must be an integer");
  const int n = j["n"].get<int>();
  if (n < 3) throw ValidationError("instance: n must be >= 3");

  const auto& jd = j["domain"];
  if (!jd.is_string() ||
      (jd.get<std::string>() != "integer" && jd.get<std::string>() != "real"))
    throw ValidationError("instance: domain must be \"integer\" or \"real\"");
  ValueDomain domain = jd.get<std::string>() == "integer" ? ValueDomain::integer
                                                          : ValueDomain::real;

  const auto& jq = j["Q"];
  if (!jq.is_array())
    throw ValidationError("instance: Q must be an array of rows");
  std::vector<std::vector<Rational>> Q(
      static_cast<std::size_t>(n),
      std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  auto cell = [](int i, int k) {
    return "Q[" + std::to_string(i) + "][" + std::to_string(k) + "]";
  };
  if (jq.size() == static_cast<std::size_t>(n)) {
    // Full matrix: validate symmetry and the zero diagonal.
    for (int i = 1; i <= n; ++i) {
      const auto& row = jq[static_cast<std::size_t>(i - 1)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
        throw ValidationError("instance: Q row " + std::to_string(i) +
                              " must have n entries");
      for (int k = 1; k <= n; ++k)
        Q[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] =
            detail::json_rational(row[static_cast<std::size_t>(k - 1)],
                                  cell(i, k));
    }
    for (int i = 1; i <= n; ++i) {
      if (Q[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] != 0)
        throw ValidationError("instance: nonzero diagonal at " + cell(i, i));
      for (int k = i + 1; k <= n; ++k)
        if (Q[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] !=
            Q[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)])
          throw ValidationError("instance: " + cell(i, k) + " != " + cell(k, i));
    }
  } else if (jq.size() == static_cast<std::size_t>(n - 1)) {
    // Strict upper triangle: row i holds (i,i+1)..(i,n).
    for (int i = 1; i <= n - 1; ++i) {
      const auto& row = jq[static_cast<std::size_t>(i - 1)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n - i))
        throw ValidationError("instance: upper-triangle Q row " +
                              std::to_string(i) + " must have " +
                              std::to_string(n - i) + " entries");
      for (int k = i + 1; k <= n; ++k) {
        Rational v = detail::json_rational(
            row[static_cast<std::size_t>(k - i - 1)], cell(i, k));
        Q[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] = v;
        Q[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)] = v;
      }
    }
  } else {
    throw ValidationError(
        "instance: Q must have n rows (full) or n-1 rows (strict upper "
        "triangle)");
  }

  const auto& jb = j["b"];
  if (!jb.is_array() || jb.size() != static_cast<std::size_t>(n))
    throw ValidationError("instance: b must have length n");
  std::vector<Rational> b(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    b[static_cast<std::size_t>(i - 1)] = detail::json_rational(
        jb[static_cast<std::size_t>(i - 1)], "b[" + std::to_string(i) + "]");

  return UbqpInstance(n, std::move(Q), std::move(b), domain);
}

inline void write_instance(const UbqpInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << instance_to_json(inst).dump(2) << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

inline UbqpInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("JSON parse error in '" + path + "': " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace cubelift
