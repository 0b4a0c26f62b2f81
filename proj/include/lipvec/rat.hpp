#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lipvec {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

using Vec = std::vector<Rat>;
using Matrix = std::vector<Vec>;  // row-major

inline int sgn(const Rat& r) { return mpq_sgn(r.backend().data()); }
inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline Rat abs(const Rat& r) { return sgn(r) < 0 ? Rat(-r) : r; }

/// Parses "p/q" or an integer literal; anything else (floats, exponents,
/// whitespace inside the literal, zero denominators) is rejected.
Rat parse_rat(std::string_view text);
std::optional<Rat> try_parse_rat(std::string_view text);

/// Parses a comma-separated list of rationals, e.g. "3/10,1/10".
Vec parse_vec(std::string_view text);

std::string to_string(const Rat& r);
std::string to_string(const Vec& v);

/// 2^-n as a rational.
Rat dyadic(unsigned n);

/// Smallest integer >= r.
Int ceil(const Rat& r);

Vec zeros(std::size_t n);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Rat& s, const Vec& v);
bool is_zero(const Vec& v);
Vec mat_vec(const Matrix& m, const Vec& v);

void require_same_dimension(std::size_t expected, std::size_t actual,
                            std::string_view what);

/// A rational extended with +inf, used for gauges whose base set does not
/// span the argument.
class ExtRat {
 public:
  ExtRat() = default;
  ExtRat(Rat value) : value_(std::move(value)) {}  // NOLINT(implicit)
  ExtRat(int value) : value_(Rat(value)) {}        // NOLINT(implicit)

  static ExtRat infinity() {
    ExtRat r;
    r.value_.reset();
    return r;
  }

  bool is_finite() const { return value_.has_value(); }
  bool is_infinite() const { return !value_.has_value(); }
  /// Throws InfiniteValue when +inf.
  const Rat& value() const;

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b);
  /// Scaling by a nonnegative rational; 0 * inf is taken as 0.
  friend ExtRat operator*(const Rat& s, const ExtRat& a);
  friend bool operator==(const ExtRat& a, const ExtRat& b);
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

 private:
  std::optional<Rat> value_{Rat(0)};
};

ExtRat max(const ExtRat& a, const ExtRat& b);
ExtRat min(const ExtRat& a, const ExtRat& b);
std::string to_string(const ExtRat& r);

}  // namespace lipvec
