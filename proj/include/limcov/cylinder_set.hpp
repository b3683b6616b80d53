#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "limcov/binary_word.hpp"
#include "limcov/rational.hpp"

namespace limcov {

/// Finite union of cylinders of Cantor space in canonical form: a sorted
/// prefix-free antichain in which no two sibling words both occur (x0 and x1
/// are always merged into x). Two CylinderSets denote the same point set iff
/// they compare equal.
class CylinderSet {
 public:
  CylinderSet() = default;

  explicit CylinderSet(std::vector<BinaryWord> words) : words_(std::move(words)) {
    std::sort(words_.begin(), words_.end());
    canonicalize_sorted();
  }

  CylinderSet(std::initializer_list<BinaryWord> words)
      : CylinderSet(std::vector<BinaryWord>(words)) {}

  static CylinderSet cylinder(const BinaryWord& w) { return CylinderSet({w}); }
  static CylinderSet whole_space() { return cylinder(BinaryWord{}); }

  /// Parses words like {"0", "10"}; "e" is the root word.
  static CylinderSet of(std::initializer_list<std::string_view> words) {
    std::vector<BinaryWord> ws;
    for (auto w : words) ws.push_back(BinaryWord::parse(w));
    return CylinderSet(std::move(ws));
  }

  std::span<const BinaryWord> words() const { return words_; }
  bool empty() const { return words_.empty(); }
  std::size_t size() const { return words_.size(); }

  unsigned depth() const {
    unsigned d = 0;
    for (const auto& w : words_) d = std::max(d, w.length());
    return d;
  }

  /// Sum of 2^-|x| over the words.
  Rational measure() const {
    if (words_.empty()) return Rational(0);
    unsigned d = depth();
    // Words are pairwise disjoint cylinders, so the count fits in 2^d <= 2^64.
    unsigned __int128 count = 0;
    for (const auto& w : words_) count += static_cast<unsigned __int128>(1) << (d - w.length());
    if (count >> 64) return Rational(1);
    const auto low = static_cast<std::uint64_t>(count);
    mpz_class num;
    mpz_import(num.get_mpz_t(), 1, 1, sizeof low, 0, 0, &low);
    return Rational(num, mpz_class(1)).div_pow2(d);
  }

  /// Whether the point set contains every sequence with prefix w.
  bool contains(const BinaryWord& w) const {
    // The only candidate cover is the greatest word <= w.
    auto it = std::upper_bound(words_.begin(), words_.end(), w);
    return it != words_.begin() && std::prev(it)->is_prefix_of(w);
  }

  friend CylinderSet unite(const CylinderSet& a, const CylinderSet& b) {
    CylinderSet out;
    out.words_.reserve(a.words_.size() + b.words_.size());
    std::merge(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end(),
               std::back_inserter(out.words_));
    out.canonicalize_sorted();
    return out;
  }

  friend CylinderSet intersect(const CylinderSet& a, const CylinderSet& b) {
    CylinderSet out;
    // [x] ∩ [y] is the longer word when comparable, empty otherwise.
    for (const auto& x : a.words_) {
      if (b.contains(x)) {
        out.words_.push_back(x);
        continue;
      }
      auto lo = std::lower_bound(b.words_.begin(), b.words_.end(), x);
      for (auto it = lo; it != b.words_.end() && x.is_prefix_of(*it); ++it)
        out.words_.push_back(*it);
    }
    std::sort(out.words_.begin(), out.words_.end());
    out.canonicalize_sorted();
    return out;
  }

  friend bool subset(const CylinderSet& a, const CylinderSet& b) {
    return std::all_of(a.words_.begin(), a.words_.end(),
                       [&](const BinaryWord& x) { return b.contains(x); });
  }

  /// "{00,11}", "{e}", "{}".
  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (i) s += ',';
      s += words_[i].to_string();
    }
    return s + "}";
  }

  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;

 private:
  // Input sorted lexicographically (prefixes first), duplicates allowed.
  void canonicalize_sorted() {
    std::vector<BinaryWord> kept;
    kept.reserve(words_.size());
    for (const auto& w : words_) {
      if (!kept.empty() && kept.back().is_prefix_of(w)) continue;
      kept.push_back(w);
      while (kept.size() >= 2) {
        const auto& top = kept.back();
        const auto& below = kept[kept.size() - 2];
        if (top.length() == 0 || below.length() != top.length() || below != top.sibling()) break;
        BinaryWord merged = top.parent();
        kept.pop_back();
        kept.back() = merged;
      }
    }
    words_ = std::move(kept);
  }

  std::vector<BinaryWord> words_;
};

}  // namespace limcov
