#pragma once

#include <gmpxx.h>

#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "limcov/error.hpp"

namespace limcov {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class so the rest of the library never
/// sees expression templates or has to remember to canonicalize.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_.canonicalize();
  }

  /// 2^-exponent.
  static Rational pow2_neg(unsigned long exponent) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
    return Rational(mpz_class(1), den);
  }

  /// Parses `p/q` or a bare integer `p` (decimal, optional leading '-').
  static std::optional<Rational> from_string(std::string_view text) {
    auto slash = text.find('/');
    auto num_text = text.substr(0, slash);
    auto den_text = slash == std::string_view::npos ? std::string_view("1")
                                                    : text.substr(slash + 1);
    if (!is_integer_literal(num_text, true) || !is_integer_literal(den_text, false))
      return std::nullopt;
    mpz_class num(std::string(num_text), 10);
    mpz_class den(std::string(den_text), 10);
    if (den == 0) return std::nullopt;
    return Rational(num, den);
  }

  static Rational parse(std::string_view text) {
    auto r = from_string(text);
    if (!r) throw InputError("malformed rational '" + std::string(text) + "'");
    return *r;
  }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  /// Largest integer <= this.
  mpz_class floor() const {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
  }

  /// Multiplies by 2^shift exactly.
  Rational mul_pow2(unsigned long shift) const {
    mpq_class out;
    mpq_mul_2exp(out.get_mpq_t(), q_.get_mpq_t(), shift);
    return Rational(std::move(out));
  }
  Rational div_pow2(unsigned long shift) const {
    mpq_class out;
    mpq_div_2exp(out.get_mpq_t(), q_.get_mpq_t(), shift);
    return Rational(std::move(out));
  }

  /// Always `p/q`, e.g. "1/1", "0/1", "-3/4".
  std::string to_string() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  static bool is_integer_literal(std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  }

  mpq_class q_;
};

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace limcov
