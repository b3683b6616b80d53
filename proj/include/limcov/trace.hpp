#pragma once

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "limcov/binary_word.hpp"
#include "limcov/cylinder_set.hpp"
#include "limcov/error.hpp"
#include "limcov/rational.hpp"
#include "limcov/semimeasure.hpp"
#include "limcov/step_function.hpp"

namespace limcov {

enum class FamilyKind { sets, open, measure, tree, func };

inline std::string_view kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::sets: return "sets";
    case FamilyKind::open: return "open";
    case FamilyKind::measure: return "measure";
    case FamilyKind::tree: return "tree";
    case FamilyKind::func: return "func";
  }
  return "?";
}

inline std::optional<FamilyKind> kind_from_name(std::string_view s) {
  for (auto k : {FamilyKind::sets, FamilyKind::open, FamilyKind::measure, FamilyKind::tree,
                 FamilyKind::func})
    if (kind_name(k) == s) return k;
  return std::nullopt;
}

inline bool kind_has_depth(FamilyKind k) {
  return k == FamilyKind::open || k == FamilyKind::tree || k == FamilyKind::func;
}

/// One enumeration event. `key` is a token (sets, measure) or a binary word
/// (open, tree, func); `value` is present for `raise` events only.
struct TraceEvent {
  std::size_t index = 0;
  std::string key;
  std::optional<Rational> value;
};

/// A finitely presented enumeration of a family X_0, X_1, ... in which line
/// order is enumeration order and every X_n with n >= nmax equals X_{nmax-1}.
struct Trace {
  FamilyKind kind = FamilyKind::sets;
  std::size_t nmax = 1;
  unsigned depth = 0;
  std::vector<TraceEvent> events;

  /// Keys in order of first appearance.
  std::vector<std::string> universe() const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& e : events)
      if (seen.insert(e.key).second) out.push_back(e.key);
    return out;
  }

  std::string serialize() const {
    std::ostringstream os;
    os << "family " << kind_name(kind) << " nmax=" << nmax;
    if (kind_has_depth(kind)) os << " depth=" << depth;
    os << '\n';
    for (const auto& e : events) {
      os << (e.value ? "raise " : "add ") << e.index << ' ' << e.key;
      if (e.value) os << ' ' << e.value->to_string();
      os << '\n';
    }
    return os.str();
  }
};

namespace detail {

inline std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = line.find(' ', pos);
    out.push_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

inline std::optional<std::size_t> parse_size(std::string_view s) {
  std::size_t v = 0;
  if (s.empty()) return std::nullopt;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline bool is_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

inline std::optional<std::size_t> parse_keyed(std::string_view field, std::string_view key) {
  if (field.substr(0, key.size()) != key || field.size() <= key.size() || field[key.size()] != '=')
    return std::nullopt;
  return parse_size(field.substr(key.size() + 1));
}

/// Splits text into lines; a final line without '\n' counts, a trailing
/// empty line does not.
inline std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    out.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

}  // namespace detail

/// Parses the line-oriented trace format:
///
///   family <kind> nmax=<INT>[ depth=<INT>]
///   add <n> <token|word>            (sets, open)
///   raise <n> <token|word> <p/q>    (measure, tree, func)
inline Trace parse_trace(std::string_view text) {
  auto lines = detail::lines_of(text);
  if (lines.empty()) throw ParseError(1, "empty trace");

  Trace trace;
  {
    auto f = detail::split_spaces(lines[0]);
    if (f.size() < 3 || f[0] != "family") throw ParseError(1, "expected 'family <kind> nmax=<INT>'");
    auto kind = kind_from_name(f[1]);
    if (!kind) throw ParseError(1, "unknown family kind '" + std::string(f[1]) + "'");
    trace.kind = *kind;
    auto nmax = detail::parse_keyed(f[2], "nmax");
    if (!nmax || *nmax == 0) throw ParseError(1, "nmax must be a positive integer");
    trace.nmax = *nmax;
    if (kind_has_depth(trace.kind)) {
      if (f.size() != 4) throw ParseError(1, "kind " + std::string(f[1]) + " needs depth=<INT>");
      auto depth = detail::parse_keyed(f[3], "depth");
      unsigned cap = trace.kind == FamilyKind::func ? StepFunction::max_depth : BinaryWord::max_length;
      if (!depth || *depth == 0 || *depth > cap)
        throw ParseError(1, "depth must be in [1, " + std::to_string(cap) + "]");
      trace.depth = static_cast<unsigned>(*depth);
    } else if (f.size() != 3) {
      throw ParseError(1, "unexpected fields after nmax");
    }
  }

  const bool raising = trace.kind == FamilyKind::measure || trace.kind == FamilyKind::tree ||
                       trace.kind == FamilyKind::func;
  const bool worded = kind_has_depth(trace.kind);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (lines[i].empty()) continue;
    auto f = detail::split_spaces(lines[i]);
    const std::string_view verb = raising ? "raise" : "add";
    if (f[0] != verb || f.size() != (raising ? 4u : 3u))
      throw ParseError(lineno, "expected '" + std::string(verb) + (raising ? " <n> <key> <p/q>'" : " <n> <key>'"));
    TraceEvent ev;
    auto n = detail::parse_size(f[1]);
    if (!n) throw ParseError(lineno, "malformed index '" + std::string(f[1]) + "'");
    if (*n >= trace.nmax) throw ParseError(lineno, "index " + std::to_string(*n) + " >= nmax");
    ev.index = *n;
    if (worded) {
      auto w = BinaryWord::from_string(f[2]);
      if (!w) throw ParseError(lineno, "malformed word '" + std::string(f[2]) + "'");
      if (w->length() > trace.depth)
        throw ParseError(lineno, "word " + std::string(f[2]) + " longer than depth");
    } else if (!detail::is_token(f[2])) {
      throw ParseError(lineno, "malformed token '" + std::string(f[2]) + "'");
    }
    ev.key = std::string(f[2]);
    if (raising) {
      auto r = Rational::from_string(f[3]);
      if (!r) throw ParseError(lineno, "malformed rational '" + std::string(f[3]) + "'");
      if (r->sign() <= 0) throw ParseError(lineno, "non-positive rational " + r->to_string());
      ev.value = std::move(r);
    }
    trace.events.push_back(std::move(ev));
  }
  return trace;
}

/// Members X_0 .. X_{nmax-1} of a stabilized family; any index >= nmax reads
/// X_{nmax-1}.
template <typename Member>
class StabilizedFamily {
 public:
  StabilizedFamily(std::vector<Member> members, std::vector<std::string> universe, unsigned depth = 0)
      : members_(std::move(members)), universe_(std::move(universe)), depth_(depth) {
    if (members_.empty()) throw InputError("a family needs nmax >= 1");
  }

  std::size_t nmax() const { return members_.size(); }
  unsigned depth() const { return depth_; }
  const Member& operator[](std::size_t n) const { return members_[std::min(n, members_.size() - 1)]; }
  const Member& tail() const { return members_.back(); }
  const std::vector<Member>& explicit_members() const { return members_; }
  /// Keys in first-appearance order.
  const std::vector<std::string>& universe() const { return universe_; }

 private:
  std::vector<Member> members_;
  std::vector<std::string> universe_;
  unsigned depth_;
};

using ElementSet = std::set<std::string>;
using SetFamily = StabilizedFamily<ElementSet>;
using OpenFamily = StabilizedFamily<CylinderSet>;
using MeasureFamily = StabilizedFamily<SemimeasureTable>;
using TreeFamily = StabilizedFamily<TreeSemimeasure>;
using FuncFamily = StabilizedFamily<StepFunction>;

/// The state of a trace using only its first `stage` events: the simulated
/// finite approximation 0_t of the halting oracle.
class StageApproximation {
 public:
  static constexpr std::size_t complete = std::numeric_limits<std::size_t>::max();

  explicit StageApproximation(const Trace& trace, std::size_t stage = complete)
      : trace_(&trace), stage_(std::min(stage, trace.events.size())) {}

  std::size_t stage() const { return stage_; }

  SetFamily sets() const {
    expect(FamilyKind::sets);
    std::vector<ElementSet> m(trace_->nmax);
    for_events([&](const TraceEvent& e) { m[e.index].insert(e.key); });
    return SetFamily(std::move(m), universe());
  }

  OpenFamily open() const {
    expect(FamilyKind::open);
    std::vector<std::vector<BinaryWord>> words(trace_->nmax);
    for_events([&](const TraceEvent& e) { words[e.index].push_back(BinaryWord::parse(e.key)); });
    std::vector<CylinderSet> m;
    m.reserve(words.size());
    for (auto& w : words) m.emplace_back(std::move(w));
    return OpenFamily(std::move(m), universe(), trace_->depth);
  }

  MeasureFamily measure() const {
    expect(FamilyKind::measure);
    std::vector<SemimeasureTable> m(trace_->nmax);
    for_events([&](const TraceEvent& e) {
      if (m[e.index][e.key] < *e.value) m[e.index].set(e.key, *e.value);
    });
    return MeasureFamily(std::move(m), universe());
  }

  TreeFamily tree() const {
    expect(FamilyKind::tree);
    std::vector<TreeSemimeasure> m(trace_->nmax);
    for_events([&](const TraceEvent& e) {
      auto w = BinaryWord::parse(e.key);
      if (m[e.index][w] < *e.value) m[e.index].set(w, *e.value);
    });
    return TreeFamily(std::move(m), universe(), trace_->depth);
  }

  FuncFamily func() const {
    expect(FamilyKind::func);
    std::vector<StepFunction> m(trace_->nmax, StepFunction(trace_->depth));
    for_events([&](const TraceEvent& e) { m[e.index].raise(BinaryWord::parse(e.key), *e.value); });
    return FuncFamily(std::move(m), universe(), trace_->depth);
  }

 private:
  void expect(FamilyKind k) const {
    if (trace_->kind != k)
      throw InputError("expected a " + std::string(kind_name(k)) + " trace, got " +
                       std::string(kind_name(trace_->kind)));
  }

  template <typename Fn>
  void for_events(Fn&& fn) const {
    for (std::size_t i = 0; i < stage_; ++i) fn(trace_->events[i]);
  }

  std::vector<std::string> universe() const { return trace_->universe(); }

  const Trace* trace_;
  std::size_t stage_;
};

inline SetFamily sets_family(const Trace& t) { return StageApproximation(t).sets(); }
inline OpenFamily open_family(const Trace& t) { return StageApproximation(t).open(); }
inline MeasureFamily measure_family(const Trace& t) { return StageApproximation(t).measure(); }
inline TreeFamily tree_family(const Trace& t) { return StageApproximation(t).tree(); }
inline FuncFamily func_family(const Trace& t) { return StageApproximation(t).func(); }

}  // namespace limcov
