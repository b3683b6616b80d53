#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "limcov/fatou.hpp"
#include "limcov/measurecover.hpp"
#include "limcov/opencover.hpp"
#include "limcov/oracle.hpp"
#include "limcov/setcover.hpp"
#include "limcov/trace.hpp"

// Checks of construction outputs against brute-force oracles. Nothing here
// reuses the constructions' working state: covers are re-folded from their
// operation logs, open sets are expanded into explicit cell bitmaps, and grid
// floors are recomputed from scratch.

namespace limcov {

struct Verdict {
  std::string name;
  bool pass = true;
  std::string witness;
};

using Verdicts = std::vector<Verdict>;

inline bool all_pass(const Verdicts& vs) {
  for (const auto& v : vs)
    if (!v.pass) return false;
  return true;
}

namespace check {

// ⌊v·2^g⌋ / 2^g clipped to [0, 1].
inline Rational grid_floor(const Rational& v, unsigned resolution) {
  if (v.sign() <= 0) return Rational(0);
  if (v >= Rational(1)) return Rational(1);
  mpz_class scaled = v.numerator();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), resolution);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), v.denominator().get_mpz_t());
  mpz_class den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), resolution);
  return Rational(scaled, den);
}

/// Explicit indicator of a union of cylinders over the 2^depth cells.
inline std::vector<bool> cells_of(std::span<const BinaryWord> words, unsigned depth) {
  if (depth > 24) throw InputError("verification depth above 24");
  std::vector<bool> cells(std::size_t{1} << depth, false);
  for (const auto& w : words) {
    if (w.length() > depth) throw InvariantViolation("word deeper than verification depth");
    const unsigned extra = depth - w.length();
    const std::size_t first = static_cast<std::size_t>(w.index()) << extra;
    for (std::size_t c = first; c < first + (std::size_t{1} << extra); ++c) cells[c] = true;
  }
  return cells;
}

inline std::string cell_name(std::size_t cell, unsigned depth) {
  std::string s(depth, '0');
  for (unsigned i = 0; i < depth; ++i)
    if ((cell >> (depth - 1 - i)) & 1U) s[i] = '1';
  return depth == 0 ? "e" : s;
}

}  // namespace check

/// |V| <= 2^k and V ⊇ liminf U_n for the reported V, which must also be
/// exactly the set of logged elements.
inline Verdicts verify_set_cover(const SetFamily& f, unsigned k, const SetCoverResult& res) {
  Verdicts out;
  ElementSet from_log;
  Verdict log{"log_consistent", true, ""};
  for (const auto& op : res.log)
    if (!from_log.insert(op.element).second) {
      log.pass = false;
      log.witness = op.element;
    }
  if (log.pass && from_log != res.cover) {
    log.pass = false;
    log.witness = "cover differs from log";
  }
  out.push_back(log);

  const std::uint64_t bound = std::uint64_t{1} << k;
  // Replay: each logged (N, u) must fit every member n >= N (plus the tail
  // copy) at the moment it is applied.
  Verdict replay{"replay_acceptable", true, ""};
  std::vector<ElementSet> copy(f.nmax() + 1);
  for (std::size_t n = 0; n <= f.nmax(); ++n) copy[n] = f[n];
  for (std::size_t i = 0; i < res.log.size() && replay.pass; ++i) {
    const auto& op = res.log[i];
    for (std::size_t n = std::min(op.start, f.nmax()); n <= f.nmax(); ++n) {
      copy[n].insert(op.element);
      if (copy[n].size() > bound) {
        replay.pass = false;
        replay.witness = "operation " + std::to_string(i) + " overflows U_" + std::to_string(n);
        break;
      }
    }
  }
  out.push_back(replay);

  out.push_back({"bound", res.cover.size() <= bound, std::to_string(res.cover.size()) + " > " + std::to_string(bound)});
  Verdict covers{"covers_liminf", true, ""};
  for (const auto& u : oracle::liminf_sets(f))
    if (!res.cover.contains(u)) {
      covers.pass = false;
      covers.witness = u;
      break;
    }
  out.push_back(covers);
  for (auto& v : out)
    if (v.pass) v.witness.clear();
  return out;
}

/// The reported m' is a semimeasure at least the grid floor of liminf m_n(u)
/// for every u, and equals the pointwise max of the logged increases.
inline Verdicts verify_measure_cover(const MeasureFamily& f, unsigned resolution, const MeasureCoverResult& res) {
  std::map<std::string, Rational> folded;
  for (const auto& inc : res.log) {
    auto& v = folded[inc.key];
    if (v < inc.target) v = inc.target;
  }
  Verdicts out;
  Verdict log{"log_consistent", true, ""};
  for (const auto& u : f.universe())
    if (res.table[u] != (folded.contains(u) ? folded[u] : Rational(0))) {
      log.pass = false;
      log.witness = u;
      break;
    }
  for (const auto& u : res.table.keys())
    if (!folded.contains(u) && res.table[u].sign() != 0) {
      log.pass = false;
      log.witness = u;
    }
  out.push_back(log);

  Verdict replay{"replay_acceptable", true, ""};
  {
    std::vector<std::map<std::string, Rational>> copy(f.nmax() + 1);
    std::vector<Rational> sums(f.nmax() + 1);
    for (std::size_t n = 0; n <= f.nmax(); ++n)
      for (const auto& u : f[n].keys()) {
        copy[n][u] = f[n][u];
        sums[n] += f[n][u];
      }
    for (std::size_t i = 0; i < res.log.size() && replay.pass; ++i) {
      const auto& op = res.log[i];
      for (std::size_t n = std::min(op.start, f.nmax()); n <= f.nmax(); ++n) {
        auto& v = copy[n][op.key];
        if (v < op.target) {
          sums[n] += op.target - v;
          v = op.target;
        }
        if (sums[n] > Rational(1)) {
          replay.pass = false;
          replay.witness = "operation " + std::to_string(i) + " pushes m_" + std::to_string(n) + " above 1";
          break;
        }
      }
    }
  }
  out.push_back(replay);

  Rational total(0);
  for (const auto& u : res.table.keys()) total += res.table[u];
  out.push_back({"semimeasure", total <= Rational(1), total <= Rational(1) ? "" : "sum " + total.to_string()});

  Verdict lower{"dominates_liminf", true, ""};
  for (const auto& u : f.universe()) {
    const Rational need = check::grid_floor(oracle::liminf_values(f, u), resolution);
    const Rational& have = res.table[u];
    if (have < need) {
      lower.pass = false;
      lower.witness = u + " " + have.to_string() + " < " + need.to_string();
      break;
    }
  }
  out.push_back(lower);
  return out;
}

inline Verdicts verify_tree_cover(const TreeFamily& f, unsigned resolution, const TreeCoverResult& res) {
  std::map<BinaryWord, Rational> folded;
  for (const auto& inc : res.log) {
    auto& v = folded[BinaryWord::parse(inc.key)];
    if (v < inc.target) v = inc.target;
  }
  auto logged = [&](const BinaryWord& w) { return folded.contains(w) ? folded.at(w) : Rational(0); };
  auto at = [&](const BinaryWord& w) { return res.table[w]; };

  Verdicts out;
  Verdict log{"log_consistent", true, ""};
  for (const auto& [w, v] : res.table.values())
    if (v != logged(w)) {
      log.pass = false;
      log.witness = w.to_string();
    }
  for (const auto& [w, v] : folded)
    if (res.table[w] != v) {
      log.pass = false;
      log.witness = w.to_string();
    }
  out.push_back(log);

  Verdict tree{"tree_constraint", true, ""};
  if (at(BinaryWord{}) > Rational(1)) {
    tree.pass = false;
    tree.witness = "e";
  }
  for (const auto& [w, _] : res.table.values()) {
    if (w.length() >= BinaryWord::max_length) continue;
    if (at(w) < at(w.child(false)) + at(w.child(true))) {
      tree.pass = false;
      tree.witness = w.to_string();
    }
    if (!w.is_root()) {
      auto p = w.parent();
      if (at(p) < at(p.child(false)) + at(p.child(true))) {
        tree.pass = false;
        tree.witness = p.to_string();
      }
    }
  }
  out.push_back(tree);

  Verdict lower{"dominates_liminf", true, ""};
  for (const auto& key : f.universe()) {
    auto w = BinaryWord::parse(key);
    const Rational need = check::grid_floor(oracle::liminf_values(f, w), resolution);
    if (at(w) < need) {
      lower.pass = false;
      lower.witness = key + " " + at(w).to_string() + " < " + need.to_string();
      break;
    }
  }
  out.push_back(lower);
  return out;
}

/// μ(V) <= eps' and V ⊇ liminf U_n for the reported V, which must be the
/// union of the logged pieces;
/// for trim mode also trims < 1/δ_t per attempt.
inline Verdicts verify_open_cover(const OpenFamily& f, const Rational& eps, const Rational& eps_prime,
                                  OpenCoverMode mode, const OpenCoverResult& res) {
  unsigned depth = std::max(f.depth(), res.cover.depth());
  for (const auto& p : res.pieces) depth = std::max(depth, p.added.depth());
  const std::size_t cells = std::size_t{1} << depth;

  std::vector<bool> from_pieces(cells, false);
  for (const auto& p : res.pieces) {
    auto c = check::cells_of(p.added.words(), depth);
    for (std::size_t i = 0; i < cells; ++i)
      if (c[i]) from_pieces[i] = true;
  }
  const auto reported = check::cells_of(res.cover.words(), depth);

  Verdicts out;
  out.push_back({"log_consistent", from_pieces == reported, from_pieces == reported ? "" : "cover differs from pieces"});

  // Replay for attempt modes: adding each piece to U_n, n >= start, never
  // takes a member above eps'.
  if (mode != OpenCoverMode::blocks) {
    Verdict replay{"replay_within_eps_prime", true, ""};
    std::vector<std::vector<bool>> copy;
    std::vector<std::size_t> size;
    for (std::size_t n = 0; n <= f.nmax(); ++n) {
      copy.push_back(check::cells_of(f[n].words(), depth));
      size.push_back(static_cast<std::size_t>(std::count(copy.back().begin(), copy.back().end(), true)));
    }
    const Rational cell = Rational(1).div_pow2(depth);
    for (std::size_t i = 0; i < res.pieces.size() && replay.pass; ++i) {
      const auto& p = res.pieces[i];
      for (std::size_t n = std::min(p.start, f.nmax()); n <= f.nmax(); ++n) {
        for (const auto& w : p.added.words()) {
          const unsigned extra = depth - w.length();
          const std::size_t first = static_cast<std::size_t>(w.index()) << extra;
          for (std::size_t c = first; c < first + (std::size_t{1} << extra); ++c)
            if (!copy[n][c]) {
              copy[n][c] = true;
              ++size[n];
            }
        }
        if (Rational(static_cast<long>(size[n])) * cell > eps_prime) {
          replay.pass = false;
          replay.witness = "piece " + std::to_string(i) + " pushes U_" + std::to_string(n) + " above eps'";
          break;
        }
      }
    }
    out.push_back(replay);
  }

  std::size_t count = 0;
  for (bool b : reported) count += b;
  const Rational mu = Rational(static_cast<long>(count)).div_pow2(depth);
  out.push_back({"measure", mu <= eps_prime, mu <= eps_prime ? "" : mu.to_string() + " > " + eps_prime.to_string()});

  // ∪_N ∩_{n≥N} U_n over explicit cells.
  std::vector<std::vector<bool>> members;
  for (std::size_t n = 0; n < f.nmax(); ++n) members.push_back(check::cells_of(f[n].words(), depth));
  Verdict covers{"covers_liminf", true, ""};
  for (std::size_t c = 0; c < cells && covers.pass; ++c) {
    bool in_liminf = false;
    for (std::size_t start = 0; start < f.nmax() && !in_liminf; ++start) {
      bool all = true;
      for (std::size_t n = start; n < f.nmax(); ++n) all = all && members[n][c];
      in_liminf = all;
    }
    if (in_liminf && !reported[c]) {
      covers.pass = false;
      covers.witness = check::cell_name(c, depth);
    }
  }
  out.push_back(covers);

  if (mode == OpenCoverMode::trim) {
    const Rational budget = eps_prime - eps;
    Verdict trims{"trim_bound", true, ""};
    for (const auto& p : res.pieces) {
      // trims < 1/δ_t = 2^(t+1) / budget  <=>  trims · num < den · 2^(t+1)
      mpz_class lhs = mpz_class(static_cast<unsigned long>(p.trims)) * budget.numerator();
      mpz_class rhs = budget.denominator();
      mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), p.attempt + 1);
      if (!(lhs < rhs)) {
        trims.pass = false;
        trims.witness = "attempt " + std::to_string(p.attempt);
        break;
      }
    }
    out.push_back(trims);
  }
  return out;
}

/// ∫φ <= eps' and φ(c) >= grid floor of liminf f_n(c) on every cell.
inline Verdicts verify_fatou(const FuncFamily& f, const Rational& eps_prime, unsigned resolution,
                             const FatouResult& res) {
  Verdicts out;
  Rational sum(0);
  for (std::size_t c = 0; c < res.phi.cell_count(); ++c) sum += res.phi[c];
  const Rational integral = sum.div_pow2(res.phi.depth());
  out.push_back({"integral", integral <= eps_prime,
                 integral <= eps_prime ? "" : integral.to_string() + " > " + eps_prime.to_string()});

  Verdict dom{"dominates_liminf", true, ""};
  for (std::size_t c = 0; c < res.phi.cell_count(); ++c) {
    // max over N of min over n ≥ N, scanning every start explicitly.
    Rational lim(0);
    for (std::size_t start = 0; start < f.nmax(); ++start) {
      Rational m = f[start][c];
      for (std::size_t n = start + 1; n < f.nmax(); ++n)
        if (f[n][c] < m) m = f[n][c];
      if (lim < m) lim = m;
    }
    const Rational need = check::grid_floor(lim, resolution);
    if (res.phi[c] < need) {
      dom.pass = false;
      dom.witness = check::cell_name(c, res.phi.depth()) + " " + res.phi[c].to_string() + " < " + need.to_string();
      break;
    }
  }
  out.push_back(dom);
  return out;
}

}  // namespace limcov
