#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limcov/binary_word.hpp"
#include "limcov/error.hpp"
#include "limcov/rational.hpp"

namespace limcov {

/// Finite map element -> non-negative rational; absent elements are 0.
class SemimeasureTable {
 public:
  const Rational& operator[](const std::string& key) const {
    static const Rational zero(0);
    auto it = values_.find(key);
    return it == values_.end() ? zero : it->second;
  }

  void set(const std::string& key, Rational value) {
    if (!values_.contains(key)) order_.push_back(key);
    values_[key] = std::move(value);
  }

  /// Keys in insertion order.
  const std::vector<std::string>& keys() const { return order_; }

  Rational total() const {
    Rational sum(0);
    for (const auto& [_, v] : values_) sum += v;
    return sum;
  }

  bool is_semimeasure() const {
    for (const auto& [_, v] : values_)
      if (v.sign() < 0) return false;
    return total() <= Rational(1);
  }

 private:
  std::map<std::string, Rational> values_;
  std::vector<std::string> order_;
};

/// Semimeasure on the binary tree: a(e) <= 1 and a(y) >= a(y0) + a(y1).
class TreeSemimeasure {
 public:
  const Rational& operator[](const BinaryWord& w) const {
    static const Rational zero(0);
    auto it = values_.find(w);
    return it == values_.end() ? zero : it->second;
  }

  void set(const BinaryWord& w, Rational value) { values_[w] = std::move(value); }

  const std::map<BinaryWord, Rational>& values() const { return values_; }

  /// A word where the tree constraint fails, if any.
  std::optional<BinaryWord> violation() const {
    if ((*this)[BinaryWord{}] > Rational(1)) return BinaryWord{};
    for (const auto& [w, v] : values_) {
      if (v.sign() < 0) return w;
      if (w.is_root()) continue;
      auto p = w.parent();
      if ((*this)[p] < (*this)[p.child(false)] + (*this)[p.child(true)]) return p;
    }
    return std::nullopt;
  }

  bool valid() const { return !violation(); }

 private:
  std::map<BinaryWord, Rational> values_;
};

/// The dyadic grid {j / 2^g : 1 <= j <= 2^g}, standing in for "every
/// rational r" in the increase processes.
class RationalGrid {
 public:
  explicit RationalGrid(unsigned resolution) : resolution_(resolution) {
    if (resolution == 0 || resolution > 30) throw InputError("grid resolution must be in [1, 30]");
  }

  unsigned resolution() const { return resolution_; }
  std::size_t size() const { return std::size_t{1} << resolution_; }

  /// j-th member, 1 <= j <= size().
  Rational member(std::size_t j) const {
    return Rational(static_cast<long>(j)).div_pow2(resolution_);
  }

  std::vector<Rational> members() const {
    std::vector<Rational> out;
    out.reserve(size());
    for (std::size_t j = 1; j <= size(); ++j) out.push_back(member(j));
    return out;
  }

  /// Largest member <= v, or 0 when v is below the whole grid.
  Rational floor(const Rational& v) const {
    if (v >= Rational(1)) return Rational(1);
    if (v.sign() <= 0) return Rational(0);
    mpz_class j = v.mul_pow2(resolution_).floor();
    return Rational(j, mpz_class(1)).div_pow2(resolution_);
  }

 private:
  unsigned resolution_;
};

}  // namespace limcov
