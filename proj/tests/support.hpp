#pragma once

#include <string>
#include <vector>

#include "limcov/limcov.hpp"

// Seeded generators for the property tests. Every property loops over a
// fixed seed range so failures replay exactly.

namespace limcov::testing {

inline Rational random_rational(gen::Rng& rng, long max_num = 40, long max_den = 40) {
  const long den = static_cast<long>(rng.between(1, static_cast<std::uint64_t>(max_den)));
  const long num = static_cast<long>(rng.below(2 * static_cast<std::uint64_t>(max_num) + 1)) - max_num;
  return Rational(num, den);
}

inline BinaryWord random_word(gen::Rng& rng, unsigned max_len) {
  const auto len = static_cast<unsigned>(rng.below(max_len + 1));
  return BinaryWord::from_index(len, rng.below(std::uint64_t{1} << len));
}

inline CylinderSet random_cylinders(gen::Rng& rng, unsigned max_len, std::size_t max_words = 6) {
  std::vector<BinaryWord> ws;
  for (std::uint64_t i = rng.below(max_words + 1); i > 0; --i) ws.push_back(random_word(rng, max_len));
  return CylinderSet(std::move(ws));
}

// The set whose depth-`depth` cells are the bits of `mask`.
inline CylinderSet from_cells(std::uint64_t mask, unsigned depth) {
  std::vector<BinaryWord> ws;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << depth); ++c)
    if ((mask >> c) & 1U) ws.push_back(BinaryWord::from_index(depth, c));
  return CylinderSet(std::move(ws));
}

inline std::uint64_t cell_mask(const CylinderSet& s, unsigned depth) {
  std::uint64_t mask = 0;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << depth); ++c)
    if (s.contains(BinaryWord::from_index(depth, c))) mask |= std::uint64_t{1} << c;
  return mask;
}

inline StepFunction random_step(gen::Rng& rng, unsigned depth) {
  StepFunction g(depth);
  for (std::size_t c = 0; c < g.cell_count(); ++c)
    if (rng.chance(60)) g.set(c, Rational(static_cast<long>(rng.below(9)), static_cast<long>(rng.between(1, 8))));
  return g;
}

inline bool verdicts_pass(const Verdicts& vs) { return all_pass(vs); }

inline std::string failing(const Verdicts& vs) {
  std::string s;
  for (const auto& v : vs)
    if (!v.pass) s += v.name + "(" + v.witness + ") ";
  return s;
}

}  // namespace limcov::testing
