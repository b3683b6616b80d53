#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "limcov/cylinder_set.hpp"
#include "limcov/trace.hpp"

// Brute-force liminf oracles for stabilized families. Under the tail rule,
// "for all n >= N" only has to be checked on [N, nmax-1], so every liminf is a
// finite union of finite intersections.

namespace limcov::oracle {

/// Elements that belong to U_n for all n >= some N.
inline ElementSet liminf_sets(const SetFamily& f) {
  ElementSet out;
  for (std::size_t start = 0; start < f.nmax(); ++start) {
    ElementSet meet = f[start];
    for (std::size_t n = start + 1; n < f.nmax() && !meet.empty(); ++n) {
      ElementSet next;
      std::set_intersection(meet.begin(), meet.end(), f[n].begin(), f[n].end(),
                            std::inserter(next, next.end()));
      meet = std::move(next);
    }
    out.insert(meet.begin(), meet.end());
  }
  return out;
}

/// Smallest N with u in U_n for every n >= N, if u is in the liminf.
inline std::optional<std::size_t> liminf_witness(const SetFamily& f, const std::string& u) {
  if (!f.tail().contains(u)) return std::nullopt;
  std::size_t start = f.nmax() - 1;
  while (start > 0 && f[start - 1].contains(u)) --start;
  return start;
}

/// The clopen set ∪_N ∩_{n>=N} U_n.
inline CylinderSet liminf_open(const OpenFamily& f) {
  CylinderSet out;
  for (std::size_t start = 0; start < f.nmax(); ++start) {
    CylinderSet meet = f[start];
    for (std::size_t n = start + 1; n < f.nmax() && !meet.empty(); ++n) meet = intersect(meet, f[n]);
    out = unite(out, meet);
  }
  return out;
}

/// max over N of min over n in [N, nmax-1] of value(n).
template <typename ValueAt>
Rational liminf_of(std::size_t nmax, ValueAt&& value) {
  Rational best = value(nmax - 1);
  Rational suffix_min = best;
  for (std::size_t n = nmax - 1; n-- > 0;) {
    suffix_min = min(suffix_min, value(n));
    best = max(best, suffix_min);
  }
  return best;
}

inline Rational liminf_values(const MeasureFamily& f, const std::string& element) {
  return liminf_of(f.nmax(), [&](std::size_t n) { return f[n][element]; });
}

inline Rational liminf_values(const TreeFamily& f, const BinaryWord& w) {
  return liminf_of(f.nmax(), [&](std::size_t n) { return f[n][w]; });
}

inline Rational liminf_values(const FuncFamily& f, std::size_t cell) {
  return liminf_of(f.nmax(), [&](std::size_t n) { return f[n][cell]; });
}

}  // namespace limcov::oracle
