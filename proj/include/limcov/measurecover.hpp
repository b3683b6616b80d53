#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "limcov/error.hpp"
#include "limcov/semimeasure.hpp"
#include "limcov/trace.hpp"

namespace limcov {

/// An accepted increase: raise the value at `key` to `target` in every
/// member with index >= start.
struct Increase {
  std::string key;
  std::size_t start = 0;
  Rational target;
  friend bool operator==(const Increase&, const Increase&) = default;
};

struct MeasureCoverResult {
  SemimeasureTable table;
  std::vector<Increase> log;
};

struct TreeCoverResult {
  TreeSemimeasure table;
  std::vector<Increase> log;  // keys are words
};

/// Upper-bounds liminf m_n by a semimeasure assembled from acceptable
/// increase operations.
///
/// Triples are tried as (u in first-appearance order, N ascending over
/// [0, nmax], r ascending over the grid); slot nmax is the tail. Acceptability
/// is monotone in r for a fixed state, so the r scan stops at the first
/// rejection without changing the outcome.
inline MeasureCoverResult run_measure_cover(const MeasureFamily& f, const RationalGrid& grid) {
  for (std::size_t n = 0; n < f.nmax(); ++n)
    if (!f[n].is_semimeasure())
      throw InputError("m_" + std::to_string(n) + " is not a semimeasure: sum " +
                       f[n].total().to_string());

  const auto& universe = f.universe();
  const std::size_t slots = f.nmax() + 1;
  std::vector<std::vector<Rational>> value(slots, std::vector<Rational>(universe.size()));
  std::vector<Rational> sum(slots);
  for (std::size_t n = 0; n < slots; ++n) {
    for (std::size_t j = 0; j < universe.size(); ++j) value[n][j] = f[n][universe[j]];
    sum[n] = f[n].total();
  }

  const Rational one(1);
  const auto targets = grid.members();
  MeasureCoverResult res;
  for (std::size_t j = 0; j < universe.size(); ++j) {
    Rational best(0);
    for (std::size_t start = 0; start < slots; ++start) {
      for (const auto& r : targets) {
        bool acceptable = true;
        for (std::size_t n = start; n < slots && acceptable; ++n)
          if (value[n][j] < r && sum[n] + (r - value[n][j]) > one) acceptable = false;
        if (!acceptable) break;
        for (std::size_t n = start; n < slots; ++n) {
          if (value[n][j] >= r) continue;
          sum[n] += r - value[n][j];
          value[n][j] = r;
          ensure(sum[n] <= one, "measure cover: working member stopped being a semimeasure");
        }
        res.log.push_back({universe[j], start, r});
        best = max(best, r);
      }
    }
    res.table.set(universe[j], best);
  }
  ensure(res.table.is_semimeasure(), "measure cover: output is not a semimeasure");
  return res;
}

/// Partial function i -> element read from lines `i <token>`.
using PartialFunction = std::map<std::size_t, std::string>;

inline PartialFunction parse_partial_function(std::string_view text) {
  PartialFunction out;
  auto lines = detail::lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = detail::split_spaces(lines[i]);
    auto idx = f.size() == 2 ? detail::parse_size(f[0]) : std::nullopt;
    if (!idx || !detail::is_token(f[1])) throw ParseError(i + 1, "expected '<i> <token>'");
    if (!out.emplace(*idx, std::string(f[1])).second)
      throw ParseError(i + 1, "value at " + std::to_string(*idx) + " defined twice");
  }
  return out;
}

struct FrequencyResult {
  std::vector<SemimeasureTable> mu;  // mu[n-1] is μ_n for n = 1..T
  Trace trace;                       // measure trace with member j equal to μ_{j+1}
};

/// μ_n(x) = #{i < n : f(i) = x} / n for n = 1..T; undefined points count in
/// the denominator only.
inline FrequencyResult frequency_semimeasures(const PartialFunction& f, std::size_t horizon) {
  if (horizon == 0) throw InputError("horizon T must be at least 1");
  if (!f.empty() && f.rbegin()->first >= horizon)
    throw InputError("f defined at " + std::to_string(f.rbegin()->first) + " >= T");

  FrequencyResult res;
  res.trace.kind = FamilyKind::measure;
  res.trace.nmax = horizon;
  std::map<std::string, long> counts;
  std::vector<std::string> order;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (auto it = f.find(n - 1); it != f.end()) {
      if (counts[it->second]++ == 0) order.push_back(it->second);
    }
    SemimeasureTable mu;
    for (const auto& x : order) {
      Rational v(counts[x], static_cast<long>(n));
      mu.set(x, v);
      res.trace.events.push_back({n - 1, x, v});
    }
    ensure(mu.is_semimeasure(), "frequency: μ_n is not a semimeasure");
    res.mu.push_back(std::move(mu));
  }
  return res;
}

namespace detail {

// Raises a(x) to at least r, then restores a(y) >= a(y0) + a(y1) along the
// path to the root. Returns the changed values without touching `a`.
inline std::vector<std::pair<BinaryWord, Rational>> repair_path(const TreeSemimeasure& a,
                                                                const BinaryWord& x,
                                                                const Rational& r) {
  std::vector<std::pair<BinaryWord, Rational>> path;
  Rational current = max(a[x], r);
  path.emplace_back(x, current);
  for (BinaryWord y = x; !y.is_root();) {
    BinaryWord p = y.parent();
    Rational need = current + a[y.sibling()];
    current = max(a[p], need);
    path.emplace_back(p, current);
    y = p;
  }
  return path;
}

// Tree constraint at every node on a repaired path (the only nodes whose
// children can have changed), plus a(e) <= 1.
inline bool path_consistent(const TreeSemimeasure& a,
                            const std::vector<std::pair<BinaryWord, Rational>>& path) {
  for (const auto& [w, v] : path)
    if (w.length() < BinaryWord::max_length && a[w] < a[w.child(false)] + a[w.child(true)])
      return false;
  return a[BinaryWord{}] <= Rational(1);
}

}  // namespace detail

/// Tree variant of run_measure_cover: an increase at x also raises prefixes
/// of x as far as the tree constraint needs, and is acceptable when every
/// repaired a_n(e) stays <= 1.
///
/// Words run over the prefix closure of the trace's words, deepest first, so
/// that each prefix is processed after all of its extensions. That order makes
/// the output itself satisfy the tree constraint: when y is reached, the tail
/// slot already holds a(y) >= a'(y0) + a'(y1) and the no-change increase up to
/// that grid value is accepted.
inline TreeCoverResult run_tree_cover(const TreeFamily& f, const RationalGrid& grid) {
  for (std::size_t n = 0; n < f.nmax(); ++n)
    if (auto bad = f[n].violation())
      throw InputError("a_" + std::to_string(n) + " violates the tree constraint at word " +
                       bad->to_string());

  std::set<BinaryWord> closure{BinaryWord{}};
  for (const auto& key : f.universe())
    for (BinaryWord w = BinaryWord::parse(key);; w = w.parent()) {
      closure.insert(w);
      if (w.is_root()) break;
    }
  std::vector<BinaryWord> words(closure.begin(), closure.end());
  std::stable_sort(words.begin(), words.end(),
                   [](const BinaryWord& a, const BinaryWord& b) { return a.length() > b.length(); });

  const std::size_t slots = f.nmax() + 1;
  std::vector<TreeSemimeasure> working;
  working.reserve(slots);
  for (std::size_t n = 0; n < slots; ++n) working.push_back(f[n]);

  const Rational one(1);
  const auto targets = grid.members();
  TreeCoverResult res;
  std::vector<std::vector<std::pair<BinaryWord, Rational>>> pending(slots);
  for (const auto& x : words) {
    Rational best(0);
    for (std::size_t start = 0; start < slots; ++start) {
      for (const auto& r : targets) {
        bool acceptable = true;
        for (std::size_t n = start; n < slots && acceptable; ++n) {
          pending[n] = detail::repair_path(working[n], x, r);
          acceptable = pending[n].back().second <= one;
        }
        if (!acceptable) break;
        for (std::size_t n = start; n < slots; ++n) {
          for (auto& [w, v] : pending[n])
            if (working[n][w] != v) working[n].set(w, v);
          ensure(detail::path_consistent(working[n], pending[n]),
                 "tree cover: working member violates the tree constraint");
        }
        res.log.push_back({x.to_string(), start, r});
        best = max(best, r);
      }
    }
    if (best.sign() > 0) res.table.set(x, best);
  }
  ensure(res.table.valid(), "tree cover: output violates the tree constraint");
  return res;
}

}  // namespace limcov
