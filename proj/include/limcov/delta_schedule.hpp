#pragma once

#include <string>

#include "limcov/error.hpp"
#include "limcov/rational.hpp"

namespace limcov {

/// Tolerances δ_t = budget · 2^-(t+1) for attempts t = 0, 1, ...; they sum to
/// strictly less than the budget.
class DeltaSchedule {
 public:
  explicit DeltaSchedule(Rational budget) : budget_(std::move(budget)) {
    if (budget_.sign() <= 0) throw InputError("delta budget must be positive");
  }

  const Rational& budget() const { return budget_; }
  Rational delta(std::size_t attempt) const { return budget_.div_pow2(attempt + 1); }

  /// Whether count · δ_t < total; with total = 1 this is count < 1/δ_t.
  bool count_below(std::size_t count, std::size_t attempt, const Rational& total = Rational(1)) const {
    // count · b.num / (b.den · 2^(t+1)) < total.num / total.den
    mpz_class lhs = mpz_class(static_cast<unsigned long>(count)) * budget_.numerator() * total.denominator();
    mpz_class rhs = budget_.denominator() * total.numerator();
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), attempt + 1);
    return lhs < rhs;
  }

  /// x > δ_t.
  bool exceeded_by(const Rational& x, std::size_t attempt) const {
    mpz_class lhs = x.numerator() * budget_.denominator();
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), attempt + 1);
    return lhs > budget_.numerator() * x.denominator();
  }

 private:
  Rational budget_;
};

/// Running threshold θ = base + Σ_{s<t} δ_s = ceiling − budget · 2^-t after t
/// attempts, where ceiling = base + budget.
///
/// After thousands of attempts θ has a denominator of thousands of bits, so
/// comparisons are done against the closed form instead of a materialized sum.
class Threshold {
 public:
  Threshold(Rational base, Rational ceiling)
      : base_(std::move(base)), ceiling_(std::move(ceiling)), schedule_(ceiling_ - base_) {}

  std::size_t attempts() const { return attempts_; }
  const DeltaSchedule& schedule() const { return schedule_; }
  const Rational& ceiling() const { return ceiling_; }

  /// Starts attempt number attempts(): θ grows by δ_attempts().
  std::size_t advance() { return attempts_++; }

  /// x > θ.
  bool exceeded_by(const Rational& x) const {
    if (attempts_ == 0) return x > base_;
    // x > ceiling − budget·2^-t  <=>  gap := ceiling − x < budget·2^-t.
    Rational gap = ceiling_ - x;
    if (gap.sign() <= 0) return true;
    // gap·2^t < budget  <=>  gap.num · budget.den · 2^t < budget.num · gap.den
    mpz_class lhs = gap.numerator() * schedule_.budget().denominator();
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), attempts_);
    return lhs < schedule_.budget().numerator() * gap.denominator();
  }

  /// θ as an exact rational.
  Rational value() const { return ceiling_ - schedule_.budget().div_pow2(attempts_); }

  /// θ written in closed form, e.g. "3/4 - 1/4 * 2^-12".
  std::string describe() const {
    return ceiling_.to_string() + " - " + schedule_.budget().to_string() + " * 2^-" +
           std::to_string(attempts_);
  }

 private:
  Rational base_;
  Rational ceiling_;
  DeltaSchedule schedule_;
  std::size_t attempts_ = 0;
};

}  // namespace limcov
