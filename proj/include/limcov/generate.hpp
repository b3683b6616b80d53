#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "limcov/binary_word.hpp"
#include "limcov/cylinder_set.hpp"
#include "limcov/error.hpp"
#include "limcov/measurecover.hpp"
#include "limcov/randlab.hpp"
#include "limcov/rational.hpp"
#include "limcov/semimeasure.hpp"
#include "limcov/step_function.hpp"
#include "limcov/trace.hpp"

// Seeded random inputs. Only raw mt19937_64 output reduced modulo n is used
// (no std::*_distribution), so a seed yields the same bytes with any standard
// library.

namespace limcov::gen {

inline constexpr std::size_t max_nmax = 64;
inline constexpr unsigned max_depth = 12;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(unsigned percent) { return below(100) < percent; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct Params {
  std::size_t nmax = 4;
  unsigned depth = 3;
  std::size_t budget = 8;  // universe size for sets/measure, draws per member otherwise
  unsigned k = 2;          // sets: |U_n| <= 2^k
  Rational eps{1, 4};      // open: μ(U_n) <= eps; func: ∫f_n <= eps
};

namespace detail {

inline void check_caps(FamilyKind kind, const Params& p) {
  if (p.nmax == 0 || p.nmax > max_nmax) throw InputError("nmax must be in [1, 64]");
  if (kind_has_depth(kind) && (p.depth == 0 || p.depth > max_depth))
    throw InputError("depth must be in [1, 12]");
  if (kind == FamilyKind::func && p.depth > StepFunction::max_depth) throw InputError("depth too large for func");
  if (kind == FamilyKind::sets && p.k > 16) throw InputError("k must be at most 16");
  if ((kind == FamilyKind::open || kind == FamilyKind::func) && (p.eps.sign() <= 0 || p.eps > Rational(1)))
    throw InputError("eps must be in (0, 1]");
}

inline BinaryWord random_word(Rng& rng, unsigned min_len, unsigned max_len) {
  const auto len = static_cast<unsigned>(rng.between(min_len, max_len));
  return BinaryWord::from_index(len, rng.below(std::uint64_t{1} << len));
}

// Mostly dyadic with the occasional third or fifth, all in (0, 1].
inline Rational random_value(Rng& rng) {
  static const long dens[] = {2, 4, 8, 16, 3, 5, 6, 12};
  const long q = dens[rng.below(8)];
  return Rational(static_cast<long>(rng.between(1, q)), q);
}

// Members emerge from a "core" present from some index on (so the liminf is
// usually nonempty) plus per-member noise.
struct Plan {
  std::size_t core_from = 0;
};

inline Plan plan(Rng& rng, std::size_t nmax) { return {rng.below(nmax)}; }

inline Trace finish(Rng& rng, FamilyKind kind, const Params& p, std::vector<TraceEvent> events) {
  Trace t;
  t.kind = kind;
  t.nmax = p.nmax;
  t.depth = kind_has_depth(kind) ? p.depth : 0;
  // Interleave the members' events; a few duplicates exercise idempotence.
  rng.shuffle(events);
  if (!events.empty() && rng.chance(30)) events.push_back(events[rng.below(events.size())]);
  t.events = std::move(events);
  return t;
}

inline Trace sets(Rng& rng, const Params& p) {
  const std::uint64_t cap = std::uint64_t{1} << p.k;
  const std::size_t universe = std::max<std::size_t>(p.budget, 1);
  const auto pl = plan(rng, p.nmax);
  std::vector<std::string> core;
  const std::uint64_t core_size = rng.below(std::min<std::uint64_t>(cap, universe) + 1);
  for (std::uint64_t i = 0; i < core_size; ++i) core.push_back("u" + std::to_string(rng.below(universe)));

  std::vector<TraceEvent> events;
  for (std::size_t n = 0; n < p.nmax; ++n) {
    ElementSet member;
    if (n >= pl.core_from) member.insert(core.begin(), core.end());
    const std::uint64_t noise = rng.below(cap + 1);
    for (std::uint64_t i = 0; i < noise && member.size() < cap; ++i)
      member.insert("u" + std::to_string(rng.below(universe)));
    for (const auto& u : member) events.push_back({n, u, std::nullopt});
  }
  return finish(rng, FamilyKind::sets, p, std::move(events));
}

inline Trace open(Rng& rng, const Params& p) {
  const auto pl = plan(rng, p.nmax);
  // A core cylinder of measure at most eps/2, found by lengthening.
  std::vector<BinaryWord> core;
  if (rng.chance(85)) {
    BinaryWord w = random_word(rng, 1, p.depth);
    while (w.length() < p.depth && Rational(1).div_pow2(w.length()) * Rational(2) > p.eps)
      w = w.child(rng.chance(50));
    if (Rational(1).div_pow2(w.length()) * Rational(2) <= p.eps) core.push_back(w);
  }
  std::vector<TraceEvent> events;
  for (std::size_t n = 0; n < p.nmax; ++n) {
    CylinderSet member;
    std::vector<BinaryWord> words;
    if (n >= pl.core_from) {
      member = CylinderSet(core);
      words = core;
    }
    for (std::size_t i = 0; i < p.budget; ++i) {
      BinaryWord w = random_word(rng, 1, p.depth);
      CylinderSet next = unite(member, CylinderSet::cylinder(w));
      if (next.measure() > p.eps) continue;
      member = std::move(next);
      words.push_back(w);
    }
    for (const auto& w : words) events.push_back({n, w.to_string(), std::nullopt});
  }
  return finish(rng, FamilyKind::open, p, std::move(events));
}

inline Trace measure(Rng& rng, const Params& p) {
  const std::size_t universe = std::max<std::size_t>(p.budget, 1);
  const auto pl = plan(rng, p.nmax);
  std::map<std::string, Rational> core;
  Rational core_sum(0);
  for (std::uint64_t i = rng.below(std::min<std::size_t>(universe, 4) + 1); i > 0; --i) {
    Rational v = random_value(rng) * Rational(1, 2);
    const std::string u = "x" + std::to_string(rng.below(universe));
    if (core.contains(u) || core_sum + v > Rational(1)) continue;
    core.emplace(u, v);
    core_sum += v;
  }
  std::vector<TraceEvent> events;
  for (std::size_t n = 0; n < p.nmax; ++n) {
    std::map<std::string, Rational> member;
    Rational sum(0);
    if (n >= pl.core_from) {
      member = core;
      sum = core_sum;
    }
    for (std::uint64_t i = rng.below(universe + 1); i > 0; --i) {
      const std::string u = "x" + std::to_string(rng.below(universe));
      const Rational v = random_value(rng);
      const Rational old = member.contains(u) ? member[u] : Rational(0);
      if (v <= old || sum - old + v > Rational(1)) continue;
      sum += v - old;
      member[u] = v;
    }
    for (const auto& [u, v] : member) events.push_back({n, u, v});
  }
  return finish(rng, FamilyKind::measure, p, std::move(events));
}

// Raises a(x) to v and pushes sums up to the root; rejected (a unchanged)
// when the root would pass 1.
inline bool tree_raise(std::map<BinaryWord, Rational>& a, const BinaryWord& x, const Rational& v) {
  auto get = [&](const BinaryWord& w) { return a.contains(w) ? a.at(w) : Rational(0); };
  auto next = a;
  next[x] = max(get(x), v);
  for (BinaryWord y = x; !y.is_root(); y = y.parent()) {
    const BinaryWord par = y.parent();
    const Rational kids = (next.contains(par.child(false)) ? next[par.child(false)] : Rational(0)) +
                          (next.contains(par.child(true)) ? next[par.child(true)] : Rational(0));
    next[par] = max(next.contains(par) ? next[par] : Rational(0), kids);
  }
  if (next[BinaryWord{}] > Rational(1)) return false;
  a = std::move(next);
  return true;
}

inline Trace tree(Rng& rng, const Params& p) {
  const auto pl = plan(rng, p.nmax);
  std::map<BinaryWord, Rational> core;
  for (std::uint64_t i = rng.below(4); i > 0; --i)
    tree_raise(core, random_word(rng, 0, p.depth), random_value(rng) * Rational(1, 4));
  std::vector<TraceEvent> events;
  for (std::size_t n = 0; n < p.nmax; ++n) {
    std::map<BinaryWord, Rational> member;
    if (n >= pl.core_from) member = core;
    for (std::size_t i = 0; i < p.budget; ++i)
      tree_raise(member, random_word(rng, 0, p.depth), random_value(rng) * Rational(1, 2));
    for (const auto& [w, v] : member)
      if (v.sign() > 0) events.push_back({n, w.to_string(), v});
  }
  return finish(rng, FamilyKind::tree, p, std::move(events));
}

inline Trace func(Rng& rng, const Params& p) {
  const auto pl = plan(rng, p.nmax);
  std::vector<std::pair<BinaryWord, Rational>> core;
  StepFunction core_fn(p.depth);
  for (std::uint64_t i = rng.below(3); i > 0; --i) {
    const BinaryWord w = random_word(rng, 0, p.depth);
    const Rational v = random_value(rng);
    StepFunction next = core_fn;
    next.raise(w, v);
    if (next.integral() * Rational(2) > p.eps) continue;
    core_fn = std::move(next);
    core.emplace_back(w, v);
  }
  std::vector<TraceEvent> events;
  for (std::size_t n = 0; n < p.nmax; ++n) {
    StepFunction member(p.depth);
    std::vector<std::pair<BinaryWord, Rational>> raises;
    if (n >= pl.core_from) {
      member = core_fn;
      raises = core;
    }
    for (std::size_t i = 0; i < p.budget; ++i) {
      const BinaryWord w = random_word(rng, 0, p.depth);
      const Rational v = random_value(rng);
      StepFunction next = member;
      next.raise(w, v);
      if (next.integral() > p.eps) continue;
      member = std::move(next);
      raises.emplace_back(w, v);
    }
    for (const auto& [w, v] : raises) events.push_back({n, w.to_string(), v});
  }
  return finish(rng, FamilyKind::func, p, std::move(events));
}

}  // namespace detail

/// Random stabilized family satisfying the construction's preconditions for
/// its kind. Deterministic in (kind, params, seed).
inline Trace generate(FamilyKind kind, const Params& p, std::uint64_t seed) {
  detail::check_caps(kind, p);
  Rng rng(seed);
  switch (kind) {
    case FamilyKind::sets: return detail::sets(rng, p);
    case FamilyKind::open: return detail::open(rng, p);
    case FamilyKind::measure: return detail::measure(rng, p);
    case FamilyKind::tree: return detail::tree(rng, p);
    case FamilyKind::func: return detail::func(rng, p);
  }
  throw InputError("unknown kind");
}

inline std::string generate_text(FamilyKind kind, const Params& p, std::uint64_t seed) {
  return generate(kind, p, seed).serialize();
}

/// Partial function on [0, horizon) with values among `range` tokens; roughly
/// a quarter of the points are left undefined.
inline PartialFunction partial_function(std::uint64_t seed, std::size_t horizon, std::size_t range) {
  if (range == 0) throw InputError("range must be positive");
  Rng rng(seed);
  // Skewed toward low tokens so that some frequencies stay bounded away from 0.
  PartialFunction f;
  for (std::size_t i = 0; i < horizon; ++i) {
    if (rng.chance(25)) continue;
    const std::uint64_t a = rng.below(range), b = rng.below(range);
    f.emplace(i, "y" + std::to_string(std::min(a, b)));
  }
  return f;
}

/// Decoder with `entries` random programs of length <= max_program.
inline randlab::DecoderTable decoder(std::uint64_t seed, std::size_t entries, unsigned max_program,
                                     unsigned max_output) {
  Rng rng(seed);
  randlab::DecoderTable dec;
  std::map<BinaryWord, BinaryWord> chosen;
  for (std::size_t i = 0; i < entries; ++i)
    chosen.emplace(detail::random_word(rng, 0, max_program), detail::random_word(rng, 0, max_output));
  for (const auto& [prog, out] : chosen) dec.add(prog, out);
  return dec;
}

struct OmegaInput {
  std::vector<Rational> prefix;
  std::vector<Rational> cycle;
  Rational eps;
};

inline OmegaInput omega_input(std::uint64_t seed) {
  Rng rng(seed);
  OmegaInput in;
  for (std::uint64_t i = rng.below(4); i > 0; --i) in.prefix.push_back(detail::random_value(rng));
  for (std::uint64_t i = rng.between(1, 5); i > 0; --i) in.cycle.push_back(detail::random_value(rng));
  in.eps = detail::random_value(rng);
  return in;
}

/// Random I_{i,n} with |I_{i,n}| <= n, levels n <= max_level.
inline randlab::TestApproximation test_approximation(std::uint64_t seed, unsigned c, unsigned max_level) {
  Rng rng(seed);
  randlab::TestApproximation t;
  t.c = c;
  for (unsigned n = 0; n <= max_level; ++n)
    for (unsigned i = 0; i <= n; ++i) {
      if (!rng.chance(40)) continue;
      t.intervals.emplace(std::pair<std::size_t, std::size_t>{i, n}, detail::random_word(rng, c, n > c ? n : c));
    }
  // Words may not be longer than their level.
  std::erase_if(t.intervals, [](const auto& kv) { return kv.second.length() > kv.first.second; });
  return t;
}

}  // namespace limcov::gen
