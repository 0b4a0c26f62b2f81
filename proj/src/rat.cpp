#include "lipvec/rat.hpp"

#include "lipvec/errors.hpp"

#include <cctype>

namespace lipvec {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

bool is_unsigned_literal(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Rat> try_parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_literal(num)) return std::nullopt;
  Int n(std::string(num[0] == '+' ? num.substr(1) : num));
  Int d(1);
  if (slash != std::string_view::npos) {
    const auto den = text.substr(slash + 1);
    if (!is_unsigned_literal(den)) return std::nullopt;
    d = Int(std::string(den));
    if (d == 0) return std::nullopt;
  }
  return Rat(n, d);
}

Rat parse_rat(std::string_view text) {
  auto r = try_parse_rat(text);
  if (!r) throw InvalidArgument("malformed rational '" + std::string(text) + "'");
  return *r;
}

Vec parse_vec(std::string_view text) {
  Vec out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_rat(trim(text.substr(start, comma - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rat& r) { return r.str(); }

std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

Rat dyadic(unsigned n) {
  Int den(1);
  den <<= n;
  return Rat(Int(1), den);
}

Int ceil(const Rat& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  Int q = num / den;  // truncates toward zero
  if (q * den != num && num > 0) q += 1;
  return q;
}

Vec zeros(std::size_t n) { return Vec(n, Rat(0)); }

Vec operator+(const Vec& a, const Vec& b) {
  require_same_dimension(a.size(), b.size(), "vector sum");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec operator-(const Vec& a, const Vec& b) {
  require_same_dimension(a.size(), b.size(), "vector difference");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec operator-(const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

Vec operator*(const Rat& s, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v) {
    if (!is_zero(x)) return false;
  }
  return true;
}

Vec mat_vec(const Matrix& m, const Vec& v) {
  Vec out(m.size(), Rat(0));
  for (std::size_t r = 0; r < m.size(); ++r) {
    require_same_dimension(v.size(), m[r].size(), "matrix-vector product");
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (!is_zero(m[r][c]) && !is_zero(v[c])) out[r] += m[r][c] * v[c];
    }
  }
  return out;
}

void require_same_dimension(std::size_t expected, std::size_t actual,
                            std::string_view what) {
  if (expected != actual) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(expected) + ", got " +
                            std::to_string(actual));
  }
}

const Rat& ExtRat::value() const {
  if (!value_) throw InfiniteValue("value is +inf");
  return *value_;
}

ExtRat operator+(const ExtRat& a, const ExtRat& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtRat::infinity();
  return ExtRat(Rat(*a.value_ + *b.value_));
}

ExtRat operator*(const Rat& s, const ExtRat& a) {
  if (is_zero(s)) return ExtRat(0);
  if (a.is_infinite()) return ExtRat::infinity();
  return ExtRat(Rat(s * *a.value_));
}

bool operator==(const ExtRat& a, const ExtRat& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  return *a.value_ == *b.value_;
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
  if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
  if (a.is_infinite()) return std::strong_ordering::greater;
  if (b.is_infinite()) return std::strong_ordering::less;
  if (*a.value_ < *b.value_) return std::strong_ordering::less;
  if (*a.value_ > *b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }
ExtRat min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }

std::string to_string(const ExtRat& r) {
  return r.is_finite() ? r.value().str() : std::string("inf");
}

}  // namespace lipvec
