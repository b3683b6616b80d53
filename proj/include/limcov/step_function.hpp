#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "limcov/binary_word.hpp"
#include "limcov/error.hpp"
#include "limcov/rational.hpp"

namespace limcov {

/// Non-negative function on Cantor space that is constant on every cylinder
/// of length `depth`. Cells are indexed by the integer value of their word.
class StepFunction {
 public:
  static constexpr unsigned max_depth = 20;

  StepFunction() : StepFunction(0) {}
  explicit StepFunction(unsigned depth) : depth_(depth) {
    if (depth > max_depth) throw InputError("step function depth above 20");
    cells_.assign(std::size_t{1} << depth, Rational(0));
  }

  unsigned depth() const { return depth_; }
  std::size_t cell_count() const { return cells_.size(); }

  const Rational& operator[](std::size_t cell) const { return cells_[cell]; }
  const Rational& at(const BinaryWord& cell) const { return cells_.at(cell_index(cell)); }
  void set(std::size_t cell, Rational value) { cells_[cell] = std::move(value); }

  /// Range of cell indices covered by the cylinder [w], |w| <= depth.
  std::pair<std::size_t, std::size_t> cells_of(const BinaryWord& w) const {
    if (w.length() > depth_) throw InputError("word " + w.to_string() + " deeper than step function");
    std::size_t first = static_cast<std::size_t>(w.index()) << (depth_ - w.length());
    return {first, first + (std::size_t{1} << (depth_ - w.length()))};
  }

  /// this := max(this, value * indicator[w]).
  void raise(const BinaryWord& w, const Rational& value) {
    auto [first, last] = cells_of(w);
    for (auto c = first; c < last; ++c)
      if (cells_[c] < value) cells_[c] = value;
  }

  Rational integral() const {
    Rational sum(0);
    for (const auto& v : cells_) sum += v;
    return sum.div_pow2(depth_);
  }

  BinaryWord cell_word(std::size_t cell) const { return BinaryWord::from_index(depth_, cell); }

  friend StepFunction pointwise_max(const StepFunction& a, const StepFunction& b) {
    return combine(a, b, [](const Rational& x, const Rational& y) { return max(x, y); });
  }
  friend StepFunction pointwise_min(const StepFunction& a, const StepFunction& b) {
    return combine(a, b, [](const Rational& x, const Rational& y) { return min(x, y); });
  }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::size_t cell_index(const BinaryWord& cell) const {
    if (cell.length() != depth_) throw InputError("cell " + cell.to_string() + " has wrong depth");
    return static_cast<std::size_t>(cell.index());
  }

  template <typename Op>
  static StepFunction combine(const StepFunction& a, const StepFunction& b, Op op) {
    if (a.depth_ != b.depth_) throw InputError("step functions of different depth");
    StepFunction out(a.depth_);
    for (std::size_t c = 0; c < a.cells_.size(); ++c) out.cells_[c] = op(a.cells_[c], b.cells_[c]);
    return out;
  }

  unsigned depth_;
  std::vector<Rational> cells_;
};

inline Rational integral(const StepFunction& g) { return g.integral(); }

}  // namespace limcov
