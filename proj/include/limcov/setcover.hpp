#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "limcov/error.hpp"
#include "limcov/trace.hpp"

namespace limcov {

/// "Add u to every U_n with n >= start", performed because it kept every
/// member within the cardinality bound.
struct SetOperation {
  std::size_t start = 0;
  std::string element;
  friend bool operator==(const SetOperation&, const SetOperation&) = default;
};

struct SetCoverResult {
  ElementSet cover;
  std::vector<SetOperation> log;
  std::uint64_t bound = 1;  // 2^k
};

inline std::uint64_t cardinality_bound(unsigned k) {
  if (k >= 63) throw InputError("k must be below 63");
  return std::uint64_t{1} << k;
}

/// Covers liminf U_n by a set of at most 2^k elements built from acceptable
/// ray additions.
///
/// Pairs (N, u) are tried with N ascending over [0, nmax] and u in
/// first-appearance order. Slot nmax of the working family stands for every
/// U_n with n >= nmax. An element already in the cover is skipped: it is
/// present in every later slot, so its operation would change nothing.
inline SetCoverResult run_set_cover(const SetFamily& f, unsigned k) {
  const std::uint64_t bound = cardinality_bound(k);
  for (std::size_t n = 0; n < f.nmax(); ++n)
    if (f[n].size() > bound)
      throw InputError("U_" + std::to_string(n) + " has " + std::to_string(f[n].size()) +
                       " elements, more than 2^k = " + std::to_string(bound));

  const std::size_t slots = f.nmax() + 1;
  std::vector<ElementSet> working(slots);
  for (std::size_t n = 0; n < slots; ++n) working[n] = f[n];

  SetCoverResult res;
  res.bound = bound;
  for (std::size_t start = 0; start < slots; ++start) {
    for (const auto& u : f.universe()) {
      if (res.cover.contains(u)) continue;
      bool acceptable = std::all_of(working.begin() + start, working.end(), [&](const ElementSet& s) {
        return s.contains(u) || s.size() < bound;
      });
      if (!acceptable) continue;
      for (std::size_t n = start; n < slots; ++n) {
        working[n].insert(u);
        ensure(working[n].size() <= bound, "set cover: working member exceeded 2^k");
      }
      res.cover.insert(u);
      res.log.push_back({start, u});
    }
  }
  return res;
}

}  // namespace limcov
