#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "limcov/binary_word.hpp"
#include "limcov/cylinder_set.hpp"
#include "limcov/error.hpp"
#include "limcov/opencover.hpp"
#include "limcov/trace.hpp"

// Desk-scale stand-ins for the randomness-deficiency constructions. Plain
// complexity is replaced by the complexity induced by a finite decoder table;
// every counting bound below holds for any description method, so it holds
// for this one.

namespace limcov::randlab {

/// Finite description method: program -> output.
class DecoderTable {
 public:
  DecoderTable() = default;

  void add(const BinaryWord& program, const BinaryWord& output) {
    if (!entries_.emplace(program, output).second)
      throw InputError("program " + program.to_string() + " listed twice");
    auto [it, inserted] = shortest_.emplace(output, program.length());
    if (!inserted && program.length() < it->second) it->second = program.length();
  }

  /// Lines `<program-bits> <output-bits>`, with `e` for the empty word.
  static DecoderTable parse(std::string_view text) {
    DecoderTable dec;
    auto lines = limcov::detail::lines_of(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      auto f = limcov::detail::split_spaces(lines[i]);
      std::optional<BinaryWord> p, o;
      if (f.size() == 2) {
        p = BinaryWord::from_string(f[0]);
        o = BinaryWord::from_string(f[1]);
      }
      if (!p || !o) throw ParseError(i + 1, "expected '<program-bits> <output-bits>'");
      try {
        dec.add(*p, *o);
      } catch (const InputError& e) {
        throw ParseError(i + 1, e.what());
      }
    }
    return dec;
  }

  const std::map<BinaryWord, BinaryWord>& entries() const { return entries_; }

  /// C_dec(u): length of the shortest program printing u; nullopt if none does.
  std::optional<unsigned> complexity(const BinaryWord& u) const {
    auto it = shortest_.find(u);
    if (it == shortest_.end()) return std::nullopt;
    return it->second;
  }

  /// d(u) = |u| − C_dec(u) for described u.
  std::optional<long> deficiency(const BinaryWord& u) const {
    auto c = complexity(u);
    if (!c) return std::nullopt;
    return static_cast<long>(u.length()) - static_cast<long>(*c);
  }

  /// Described strings with their shortest program lengths.
  const std::map<BinaryWord, unsigned>& described() const { return shortest_; }

 private:
  std::map<BinaryWord, BinaryWord> entries_;
  std::map<BinaryWord, unsigned> shortest_;
};

/// D_n^c: strings u of length n with C_dec(u) < n − c. At most 2^(n−c) − 1
/// programs are that short, which bounds the size.
inline std::set<BinaryWord> deficiency_sets(const DecoderTable& dec, unsigned n, unsigned c) {
  std::set<BinaryWord> out;
  if (c >= n) return out;
  for (const auto& [u, len] : dec.described())
    if (u.length() == n && len < n - c) out.insert(u);
  return out;
}

/// U_n^c = ∪_{u ∈ D_n^c} [u] for n < nmax; μ(U_n^c) <= 2^-c.
inline OpenFamily deficiency_cover_family(const DecoderTable& dec, unsigned c, std::size_t nmax,
                                          unsigned depth) {
  if (nmax == 0) throw InputError("nmax must be positive");
  if (depth < nmax) throw InputError("depth must be at least nmax");
  std::vector<CylinderSet> members;
  for (std::size_t n = 0; n < nmax; ++n) {
    auto d = deficiency_sets(dec, static_cast<unsigned>(n), c);
    members.emplace_back(std::vector<BinaryWord>(d.begin(), d.end()));
  }
  return OpenFamily(std::move(members), {}, depth);
}

/// Covers liminf U_n^c by an open set of measure <= 2^-(c-1), feeding the
/// family to the open-cover construction with eps = 2^-c.
inline OpenCoverResult deficiency_pipeline(const DecoderTable& dec, unsigned c, std::size_t nmax,
                                           unsigned depth, OpenCoverMode mode = OpenCoverMode::trim) {
  if (c < 1) throw InputError("c must be at least 1 so that eps' = 2^-(c-1) <= 1");
  auto family = deficiency_cover_family(dec, c, nmax, depth);
  return run_open_cover(mode, family, Rational(1).div_pow2(c), Rational(1).div_pow2(c - 1));
}

/// min d(y) over described extensions y of x with |y| <= max_length; nullopt
/// when no such extension is described. The true quantity ranges over all
/// extensions, so this is the value truncated at max_length.
inline std::optional<long> bar_deficiency(const DecoderTable& dec, const BinaryWord& x, unsigned max_length) {
  if (x.length() > max_length) throw InputError("|x| exceeds the length bound");
  std::optional<long> best;
  for (const auto& [y, len] : dec.described()) {
    if (y.length() > max_length || !x.is_prefix_of(y)) continue;
    long d = static_cast<long>(y.length()) - static_cast<long>(len);
    if (!best || d < *best) best = d;
  }
  return best;
}

/// Approximations I_{i,n} of a test, with ⊥ represented by absence.
struct TestApproximation {
  unsigned c = 0;
  std::map<std::pair<std::size_t, std::size_t>, BinaryWord> intervals;  // (i, n) -> word

  /// Lines `<i> <n> <word>`.
  static TestApproximation parse(std::string_view text, unsigned c) {
    TestApproximation t;
    t.c = c;
    auto lines = limcov::detail::lines_of(text);
    for (std::size_t l = 0; l < lines.size(); ++l) {
      if (lines[l].empty()) continue;
      auto f = limcov::detail::split_spaces(lines[l]);
      std::optional<std::size_t> i, n;
      std::optional<BinaryWord> w;
      if (f.size() == 3) {
        i = limcov::detail::parse_size(f[0]);
        n = limcov::detail::parse_size(f[1]);
        w = BinaryWord::from_string(f[2]);
      }
      if (!i || !n || !w) throw ParseError(l + 1, "expected '<i> <n> <word>'");
      if (!t.intervals.emplace(std::pair{*i, *n}, *w).second)
        throw ParseError(l + 1, "interval I_{" + std::to_string(*i) + "," + std::to_string(*n) + "} given twice");
    }
    return t;
  }
};

struct StabilizedLevel {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, BinaryWord>> kept;   // (i, word) surviving the deletion pass
  std::vector<std::pair<std::size_t, BinaryWord>> deleted;
  Rational kept_measure;
  std::vector<BinaryWord> strings;  // S_n in lexicographic order
  std::map<BinaryWord, BinaryWord> codes;  // u -> (n − c)-bit ordinal
};

inline constexpr unsigned max_stabilize_length = 24;

/// Deletion pass and ordinal coding per level n: intervals I_{i,n} are kept in
/// ascending i while the level total stays <= 2^-c; each covered string of
/// length n is coded by its (n − c)-bit ordinal.
inline std::vector<StabilizedLevel> stabilize_test(const TestApproximation& t) {
  std::map<std::size_t, std::vector<std::pair<std::size_t, BinaryWord>>> by_level;
  for (const auto& [key, w] : t.intervals) {
    const auto [i, n] = key;
    if (n < i) throw InputError("I_{" + std::to_string(i) + "," + std::to_string(n) + "} must be ⊥ since n < i");
    if (w.length() > n)
      throw InputError("I_{" + std::to_string(i) + "," + std::to_string(n) + "} = " + w.to_string() +
                       " is smaller than 2^-n");
    if (n > max_stabilize_length) throw InputError("levels above n = 24 are not supported");
    by_level[n].emplace_back(i, w);
  }

  const Rational cap = Rational(1).div_pow2(t.c);
  std::vector<StabilizedLevel> out;
  for (auto& [n, entries] : by_level) {
    std::sort(entries.begin(), entries.end());
    StabilizedLevel level;
    level.n = n;
    level.kept_measure = Rational(0);
    for (const auto& [i, w] : entries) {
      Rational next = level.kept_measure + Rational(1).div_pow2(w.length());
      if (next > cap) {
        level.deleted.emplace_back(i, w);
        continue;
      }
      level.kept_measure = next;
      level.kept.emplace_back(i, w);
    }
    std::set<BinaryWord> covered;
    for (const auto& [i, w] : level.kept) {
      const unsigned extra = static_cast<unsigned>(n) - w.length();
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << extra); ++v)
        covered.insert(BinaryWord::from_index(static_cast<unsigned>(n), (w.index() << extra) | v));
    }
    level.strings.assign(covered.begin(), covered.end());
    if (!level.strings.empty()) {
      if (n < t.c) throw InputError("level " + std::to_string(n) + " below c covers strings");
      const unsigned bits = static_cast<unsigned>(n) - t.c;
      ensure(bits >= 64 || level.strings.size() <= (std::uint64_t{1} << bits),
             "stabilize: more covered strings than (n-c)-bit codes");
      for (std::size_t k = 0; k < level.strings.size(); ++k)
        level.codes.emplace(level.strings[k], BinaryWord::from_index(bits, k));
    }
    out.push_back(std::move(level));
  }
  return out;
}

}  // namespace limcov::randlab
