#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "limcov/cylinder_set.hpp"
#include "limcov/delta_schedule.hpp"
#include "limcov/error.hpp"
#include "limcov/trace.hpp"

namespace limcov {

enum class OpenCoverMode { trim, naive, blocks };

inline std::string_view mode_name(OpenCoverMode m) {
  switch (m) {
    case OpenCoverMode::trim: return "trim";
    case OpenCoverMode::naive: return "naive";
    case OpenCoverMode::blocks: return "blocks";
  }
  return "?";
}

inline std::optional<OpenCoverMode> mode_from_name(std::string_view s) {
  for (auto m : {OpenCoverMode::trim, OpenCoverMode::naive, OpenCoverMode::blocks})
    if (mode_name(m) == s) return m;
  return std::nullopt;
}

/// One committed addition. For trim/naive, `word` and `start` name the
/// attempt ([x], i); for blocks, `start`..`last` is the block range and `word`
/// is the root.
struct CoverPiece {
  std::size_t attempt = 0;
  BinaryWord word;
  std::size_t start = 0;
  std::size_t last = 0;
  CylinderSet added;
  std::size_t trims = 0;
};

struct OpenCoverResult {
  CylinderSet cover;
  std::vector<CoverPiece> pieces;
  Rational threshold;          // final θ (≤ eps')
  std::string threshold_text;  // θ in closed form
  std::size_t attempts = 0;
  std::size_t max_trims = 0;
};

namespace detail {

inline void check_open_preconditions(const OpenFamily& f, const Rational& eps, const Rational& eps_prime) {
  if (eps.sign() <= 0 || !(eps < eps_prime) || eps_prime > Rational(1))
    throw InputError("need 0 < eps < eps' <= 1, got eps=" + eps.to_string() + " eps'=" +
                     eps_prime.to_string());
  for (std::size_t n = 0; n < f.nmax(); ++n)
    if (auto mu = f[n].measure(); mu > eps)
      throw InputError("U_" + std::to_string(n) + " has measure " + mu.to_string() + " > eps");
}

// Working copy with slot nmax standing for every U_n, n >= nmax, and cached
// measures.
struct WorkingOpenFamily {
  std::vector<CylinderSet> sets;
  std::vector<Rational> measures;

  explicit WorkingOpenFamily(const OpenFamily& f) {
    for (std::size_t n = 0; n <= f.nmax(); ++n) {
      sets.push_back(f[n]);
      measures.push_back(f[n].measure());
    }
  }

  std::size_t slots() const { return sets.size(); }

  // μ(U_n ∪ a) = μ(U_n) + μ(a) − μ(U_n ∩ a)
  Rational union_measure(std::size_t n, const CylinderSet& a, const Rational& a_measure) const {
    return measures[n] + a_measure - intersect(a, sets[n]).measure();
  }

  // First slot m >= from whose union with a crosses θ.
  std::optional<std::size_t> first_overflow(std::size_t from, const CylinderSet& a,
                                            const Threshold& theta) const {
    if (a.empty()) return std::nullopt;
    const Rational a_measure = a.measure();
    for (std::size_t m = from; m < slots(); ++m) {
      if (subset(a, sets[m])) continue;
      if (theta.exceeded_by(union_measure(m, a, a_measure))) return m;
    }
    return std::nullopt;
  }

  void add_from(std::size_t start, const CylinderSet& a, const Threshold& theta) {
    if (a.empty()) return;
    for (std::size_t n = start; n < slots(); ++n) {
      if (subset(a, sets[n])) continue;
      sets[n] = unite(sets[n], a);
      measures[n] = sets[n].measure();
      ensure(!theta.exceeded_by(measures[n]), "open cover: working member crossed the threshold");
    }
  }
};

template <bool Trimming>
OpenCoverResult run_attempt_cover(const OpenFamily& f, const Rational& eps, const Rational& eps_prime) {
  check_open_preconditions(f, eps, eps_prime);
  WorkingOpenFamily working(f);
  Threshold theta(eps, eps_prime);
  OpenCoverResult res;

  for (std::size_t start = 0; start < working.slots(); ++start) {
    for_each_word_up_to(f.depth(), [&](const BinaryWord& x) {
      const std::size_t t = theta.advance();
      CylinderSet a = CylinderSet::cylinder(x);
      std::size_t trims = 0;
      std::size_t from = start;
      while (auto m = working.first_overflow(from, a, theta)) {
        if constexpr (!Trimming) return;
        // After a := a ∩ U_m, slot m is back under the previous threshold.
        a = intersect(a, working.sets[*m]);
        ++trims;
        from = *m + 1;
        ensure(theta.schedule().count_below(trims, t), "open cover: trim count reached 1/δ_t");
      }
      working.add_from(start, a, theta);
      res.max_trims = std::max(res.max_trims, trims);
      if (!a.empty() || trims > 0) {
        res.cover = unite(res.cover, a);
        res.pieces.push_back({t, x, start, working.slots() - 1, std::move(a), trims});
      }
    });
  }
  res.attempts = theta.attempts();
  res.threshold = theta.value();
  res.threshold_text = theta.describe();
  return res;
}

}  // namespace detail

/// Covers liminf U_n within measure eps' by trimming each attempted cylinder
/// against the first member it would push over the running threshold.
///
/// Attempts ([x], i) run with i ascending over [0, nmax] and x over all words
/// of length <= depth in length-lex order; attempt t raises θ by
/// δ_t = (eps' − eps)·2^-(t+1).
inline OpenCoverResult run_trim_cover(const OpenFamily& f, const Rational& eps, const Rational& eps_prime) {
  return detail::run_attempt_cover<true>(f, eps, eps_prime);
}

/// Same attempt loop, but an attempt that would cross θ is dropped instead of
/// trimmed. Covers ∪_N Int(∩_{n≥N} U_n), which equals the liminf for the
/// clopen members of a stabilized family.
inline OpenCoverResult run_naive_cover(const OpenFamily& f, const Rational& eps, const Rational& eps_prime) {
  return detail::run_attempt_cover<false>(f, eps, eps_prime);
}

/// Block-union construction: W = U_{0..k1} ∪ U_{k1+1..k2} ∪ ... where each
/// k_j is the least index keeping W_j ∪ U_i within
/// eps_j = eps + (eps' − eps)(1 − 2^-j) for every later i.
inline OpenCoverResult run_block_cover(const OpenFamily& f, const Rational& eps, const Rational& eps_prime) {
  detail::check_open_preconditions(f, eps, eps_prime);
  Threshold level(eps, eps_prime);
  const std::size_t last = f.nmax() - 1;
  OpenCoverResult res;
  std::size_t block_start = 0;
  while (true) {
    level.advance();  // eps_j
    CylinderSet block = CylinderSet::whole_space();
    std::size_t k = block_start;
    for (;; ++k) {
      block = intersect(block, f[k]);
      const CylinderSet candidate = unite(res.cover, block);
      bool fits = true;
      // i ranges over (k, nmax-1] plus the tail, which repeats U_{nmax-1}.
      for (std::size_t i = std::min(k + 1, last); i <= last && fits; ++i)
        fits = !level.exceeded_by(unite(candidate, f[i]).measure());
      if (fits) break;
      ensure(k < last, "block cover: no block boundary before the tail");
    }
    res.cover = unite(res.cover, block);
    res.pieces.push_back({level.attempts() - 1, BinaryWord{}, block_start, k, block, 0});
    if (k == last) break;
    block_start = k + 1;
  }
  // Every later block intersects only tail copies, i.e. equals U_{nmax-1}.
  res.cover = unite(res.cover, f.tail());
  res.pieces.push_back({level.attempts(), BinaryWord{}, f.nmax(), f.nmax(), f.tail(), 0});
  ensure(!level.exceeded_by(res.cover.measure()), "block cover: cover exceeds eps_j");
  res.attempts = level.attempts();
  res.threshold = level.value();
  res.threshold_text = level.describe();
  return res;
}

inline OpenCoverResult run_open_cover(OpenCoverMode mode, const OpenFamily& f, const Rational& eps,
                                      const Rational& eps_prime) {
  switch (mode) {
    case OpenCoverMode::trim: return run_trim_cover(f, eps, eps_prime);
    case OpenCoverMode::naive: return run_naive_cover(f, eps, eps_prime);
    case OpenCoverMode::blocks: return run_block_cover(f, eps, eps_prime);
  }
  throw InputError("unknown mode");
}

}  // namespace limcov
