#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "klpat/error.hpp"

namespace klpat {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("polynomial coefficient overflow (add)");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("polynomial coefficient overflow (mul)");
  return r;
}

}  // namespace detail

/// Polynomial in q with integer coefficients, stored in ascending powers.
/// Trailing zeros are always stripped, so the zero polynomial has no coefficients.
/// All arithmetic is checked; wraparound throws OverflowError.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<std::int64_t> c) : coeffs_(c) { normalize(); }
  explicit IntPolynomial(std::vector<std::int64_t> c) : coeffs_(std::move(c)) { normalize(); }

  static IntPolynomial constant(std::int64_t c) { return IntPolynomial{c}; }
  static IntPolynomial one() { return IntPolynomial{1}; }
  /// q^k
  static IntPolynomial monomial(std::size_t k, std::int64_t c = 1) {
    std::vector<std::int64_t> v(k + 1, 0);
    v[k] = c;
    return IntPolynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const std::int64_t> coefficients() const { return coeffs_; }

  /// [q^k]P; zero beyond the stored range.
  std::int64_t coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0; }

  std::int64_t at_one() const {
    std::int64_t s = 0;
    for (auto c : coeffs_) s = detail::checked_add(s, c);
    return s;
  }

  /// q^d P(q^{-1}); requires d >= degree().
  IntPolynomial bar_shift(int d) const {
    if (is_zero()) return {};
    if (d < degree()) throw DomainError("bar_shift: exponent below degree");
    std::vector<std::int64_t> v(static_cast<std::size_t>(d) + 1, 0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) v[static_cast<std::size_t>(d) - k] = coeffs_[k];
    return IntPolynomial(std::move(v));
  }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] = detail::checked_add(coeffs_[k], o.coeffs_[k]);
    normalize();
    return *this;
  }
  IntPolynomial& operator-=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
      if (o.coeffs_[k] == INT64_MIN) throw OverflowError("polynomial coefficient overflow (neg)");
      coeffs_[k] = detail::checked_add(coeffs_[k], -o.coeffs_[k]);
    }
    normalize();
    return *this;
  }
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::int64_t> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        v[i + j] = detail::checked_add(v[i + j], detail::checked_mul(a.coeffs_[i], b.coeffs_[j]));
    return IntPolynomial(std::move(v));
  }
  friend IntPolynomial operator*(std::int64_t c, const IntPolynomial& p) { return IntPolynomial{c} * p; }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
  friend auto operator<=>(const IntPolynomial&, const IntPolynomial&) = default;

  /// Human-readable form: "1 + q + 2q^2", "0" for zero.
  std::string to_string() const { return render(" + ", " - "); }
  /// Same as to_string() without spaces; used in single-token record fields.
  std::string to_compact() const { return render("+", "-"); }
  /// "c0,c1,..." as used by the cache file; "0" for zero.
  std::string to_csv() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) os << (k ? "," : "") << coeffs_[k];
    return os.str();
  }
  static IntPolynomial from_csv(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::string render(std::string_view plus, std::string_view minus) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      std::int64_t c = coeffs_[k];
      if (c == 0) continue;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? minus : plus);
      }
      std::uint64_t a = c < 0 ? 0ULL - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
      if (k == 0 || a != 1) os << a;
      if (k >= 1) os << "q";
      if (k >= 2) os << "^" << k;
      first = false;
    }
    return os.str();
  }

  std::vector<std::int64_t> coeffs_;
};

inline IntPolynomial IntPolynomial::from_csv(std::string_view text) {
  std::vector<std::int64_t> v;
  std::size_t pos = 0;
  if (text.empty()) throw ParseError("empty coefficient list");
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string tok(text.substr(pos, end - pos));
    if (tok.empty()) throw ParseError("empty coefficient in '" + std::string(text) + "'");
    std::size_t used = 0;
    std::int64_t c;
    try {
      c = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("bad coefficient '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError("bad coefficient '" + tok + "'");
    v.push_back(c);
    pos = end + 1;
  }
  IntPolynomial p(std::move(v));
  // Canonical form only: no trailing zeros, "0" for the zero polynomial.
  if (p.to_csv() != text) throw ParseError("non-canonical coefficient list '" + std::string(text) + "'");
  return p;
}

}  // namespace klpat
