#pragma once

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "limcov/fatou.hpp"
#include "limcov/generate.hpp"
#include "limcov/measurecover.hpp"
#include "limcov/omega.hpp"
#include "limcov/opencover.hpp"
#include "limcov/oracle.hpp"
#include "limcov/randlab.hpp"
#include "limcov/report.hpp"
#include "limcov/setcover.hpp"
#include "limcov/trace.hpp"
#include "limcov/verify.hpp"

namespace limcov::cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs a parser over file bytes, prefixing any diagnostic with the path.
template <typename Fn>
auto parse_file(const std::string& path, const std::string& bytes, Fn&& fn) {
  try {
    return fn(bytes);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline Rational rational_flag(const std::string& name, const std::string& text) {
  auto r = Rational::from_string(text);
  if (!r) throw InputError("--" + name + ": malformed rational '" + text + "'");
  return *r;
}

inline std::vector<Rational> rational_list(const std::string& name, const std::string& text) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(rational_flag(name, item));
  return out;
}

inline std::string set_text(const ElementSet& s) {
  std::string out = "{";
  for (const auto& u : s) out += (out.size() > 1 ? "," : "") + u;
  return out + "}";
}

inline unsigned cells_depth_for(std::size_t elements) {
  unsigned d = 0;
  while ((std::size_t{1} << d) < elements) ++d;
  return d;
}

// ---- runs on parsed input; shared by the file subcommands and sweep ----

inline void run_setcover(Report& rep, const Trace& t, unsigned k) {
  rep.param("k", std::to_string(k));
  const auto f = sets_family(t);
  const auto res = run_set_cover(f, k);
  for (const auto& op : res.log) rep.line("OP", std::to_string(op.start) + " " + op.element);
  for (const auto& u : oracle::liminf_sets(f)) {
    const auto n = oracle::liminf_witness(f, u);
    rep.line("LIMINF", u + " from " + (n ? std::to_string(*n) : "?"));
  }
  rep.line("COVER", set_text(res.cover));
  rep.line("SIZE", std::to_string(res.cover.size()));
  rep.line("BOUND", std::to_string(res.bound));
  rep.verdicts(verify_set_cover(f, k, res));
}

inline void run_measurecover(Report& rep, const MeasureFamily& f, unsigned g) {
  rep.param("grid", std::to_string(g));
  const RationalGrid grid(g);
  const auto res = run_measure_cover(f, grid);
  for (const auto& inc : res.log)
    rep.line("OP", inc.key + " " + std::to_string(inc.start) + " " + inc.target.to_string());
  for (const auto& u : f.universe()) rep.line("VALUE", u + " " + res.table[u].to_string());
  rep.line("MEASURE", res.table.total().to_string());
  rep.line("BOUND", "1/1");
  rep.verdicts(verify_measure_cover(f, g, res));
}

inline void run_treecover(Report& rep, const Trace& t, unsigned g) {
  rep.param("grid", std::to_string(g));
  const auto f = tree_family(t);
  const auto res = run_tree_cover(f, RationalGrid(g));
  for (const auto& inc : res.log)
    rep.line("OP", inc.key + " " + std::to_string(inc.start) + " " + inc.target.to_string());
  for (const auto& [w, v] : res.table.values()) rep.line("VALUE", w.to_string() + " " + v.to_string());
  rep.line("MEASURE", res.table[BinaryWord{}].to_string());
  rep.line("BOUND", "1/1");
  rep.verdicts(verify_tree_cover(f, g, res));
}

inline void open_cover_lines(Report& rep, const OpenCoverResult& res, const Rational& eps_prime) {
  for (const auto& p : res.pieces)
    rep.line("PIECE", std::to_string(p.attempt) + " " + p.word.to_string() + " " + std::to_string(p.start) + " " +
                          std::to_string(p.last) + " " + p.added.to_string() + " " + std::to_string(p.trims));
  rep.line("COVER", res.cover.to_string());
  rep.line("MEASURE", res.cover.measure().to_string());
  rep.line("BOUND", eps_prime.to_string());
  rep.line("THRESHOLD", res.threshold_text);
  rep.line("ATTEMPTS", std::to_string(res.attempts));
  rep.line("MAX_TRIMS", std::to_string(res.max_trims));
}

inline void run_opencover(Report& rep, const Trace& t, OpenCoverMode mode, const Rational& eps,
                          const Rational& eps_prime) {
  rep.param("mode", std::string(mode_name(mode)));
  rep.param("eps", eps.to_string());
  rep.param("eps-prime", eps_prime.to_string());
  const auto f = open_family(t);
  const auto res = run_open_cover(mode, f, eps, eps_prime);
  open_cover_lines(rep, res, eps_prime);
  rep.line("LIMINF", oracle::liminf_open(f).to_string());
  rep.verdicts(verify_open_cover(f, eps, eps_prime, mode, res));
}

inline void run_fatou_func(Report& rep, const Trace& t, const Rational& eps, const Rational& eps_prime,
                           unsigned g) {
  rep.param("eps", eps.to_string());
  rep.param("eps-prime", eps_prime.to_string());
  rep.param("grid", std::to_string(g));
  const auto f = func_family(t);
  const auto res = run_fatou(f, eps, eps_prime, RationalGrid(g));
  for (std::size_t c = 0; c < res.phi.cell_count(); ++c)
    if (res.phi[c].sign() > 0) rep.line("PHI", res.phi.cell_word(c).to_string() + " " + res.phi[c].to_string());
  rep.line("MEASURE", res.phi.integral().to_string());
  rep.line("BOUND", eps_prime.to_string());
  rep.line("THRESHOLD", res.threshold_text);
  rep.line("ATTEMPTS", std::to_string(res.attempts));
  rep.line("COMMITS", std::to_string(res.commits));
  rep.line("MAX_TRIMS", std::to_string(res.max_trims));
  rep.verdicts(verify_fatou(f, eps_prime, g, res));
}

inline void specialization_lines(Report& rep, const SpecializationReport& sr) {
  for (const auto& r : sr.rows) {
    rep.line("ROW", r.element + " liminf " + r.liminf.to_string() + " required " + r.required.to_string() +
                        " direct " + r.direct.to_string() + " fatou " + r.fatou.to_string());
    rep.verdict("element:" + r.element, r.pass);
  }
}

struct Flags {
  std::string trace;
  std::string out;
  unsigned k = 1;
  unsigned grid = 4;
  std::optional<unsigned> depth;
  std::string eps;
  std::string eps_prime;
  std::string mode = "trim";
  std::uint64_t seed = 0;
  std::size_t count = 8;
  // gen / sweep
  std::string kind = "sets";
  std::size_t nmax = 4;
  std::size_t threads = 0;
  // freq
  std::string function;
  std::size_t horizon = 0;
  // omegademo
  std::string prefix;
  std::string cycle;
  // randlab
  std::string decoder;
  std::string table;
  unsigned c = 1;
  unsigned n = 0;
  std::string x;
  unsigned length_bound = 0;
};

inline OpenCoverMode mode_flag(const std::string& s) {
  auto m = mode_from_name(s);
  if (!m) throw InputError("--mode: expected trim, naive or blocks, got '" + s + "'");
  return *m;
}

inline FamilyKind kind_flag(const std::string& s) {
  auto k = kind_from_name(s);
  if (!k) throw InputError("--kind: unknown family kind '" + s + "'");
  return *k;
}

inline Rational required_rational(const std::string& name, const std::string& text) {
  if (text.empty()) throw InputError("--" + name + " is required");
  return rational_flag(name, text);
}

inline Trace load_trace(Report& rep, const std::string& path) {
  if (path.empty()) throw InputError("--trace is required");
  const std::string bytes = read_file(path);
  rep.input(bytes);
  return parse_file(path, bytes, [](const std::string& b) { return parse_trace(b); });
}

inline void expect_kind(const Trace& t, FamilyKind k, const std::string& path) {
  if (t.kind != k)
    throw InputError(path + ": expected a " + std::string(kind_name(k)) + " trace, got " +
                     std::string(kind_name(t.kind)));
}

// ---- subcommands ----

inline Report cmd_setcover(const Flags& fl) {
  Report rep("setcover");
  const Trace t = load_trace(rep, fl.trace);
  expect_kind(t, FamilyKind::sets, fl.trace);
  run_setcover(rep, t, fl.k);
  return rep;
}

inline Report cmd_measurecover(const Flags& fl) {
  Report rep("measurecover");
  const Trace t = load_trace(rep, fl.trace);
  expect_kind(t, FamilyKind::measure, fl.trace);
  run_measurecover(rep, measure_family(t), fl.grid);
  return rep;
}

inline Report cmd_treecover(const Flags& fl) {
  Report rep("treecover");
  const Trace t = load_trace(rep, fl.trace);
  expect_kind(t, FamilyKind::tree, fl.trace);
  run_treecover(rep, t, fl.grid);
  return rep;
}

/// Frequency pipeline: μ_n from a partial function, then the measure cover,
/// checked against suffix minima of the frequencies computed straight from f.
inline void run_freq(Report& rep, const PartialFunction& pf, std::size_t horizon, unsigned g) {
  rep.param("horizon", std::to_string(horizon));
  const auto fr = frequency_semimeasures(pf, horizon);
  rep.line("TRACE", "fnv1a64 " + hex64(fnv1a64(fr.trace.serialize())));
  const auto f = measure_family(fr.trace);
  run_measurecover(rep, f, g);

  const auto cover = run_measure_cover(f, RationalGrid(g));
  Verdict dom{"dominates_frequency", true, ""};
  std::map<std::string, std::vector<long>> counts;  // counts[x][n-1] = #{i < n : f(i) = x}
  for (const auto& [i, x] : pf) counts.try_emplace(x, std::vector<long>(horizon, 0));
  for (auto& [x, c] : counts) {
    long running = 0;
    for (std::size_t n = 1; n <= horizon; ++n) {
      auto it = pf.find(n - 1);
      if (it != pf.end() && it->second == x) ++running;
      c[n - 1] = running;
    }
    Rational best(0);
    for (std::size_t start = 1; start <= horizon; ++start) {
      Rational m(c[start - 1], static_cast<long>(start));
      for (std::size_t n = start + 1; n <= horizon; ++n) m = min(m, Rational(c[n - 1], static_cast<long>(n)));
      best = max(best, m);
    }
    const Rational need = check::grid_floor(best, g);
    if (cover.table[x] < need) {
      dom.pass = false;
      dom.witness = x + " " + cover.table[x].to_string() + " < " + need.to_string();
    }
  }
  rep.verdict(dom);
}

inline Report cmd_freq(const Flags& fl) {
  Report rep("freq");
  if (fl.function.empty()) throw InputError("--function is required");
  const std::string bytes = read_file(fl.function);
  rep.input(bytes);
  const auto pf = parse_file(fl.function, bytes, [](const std::string& b) { return parse_partial_function(b); });
  std::size_t horizon = fl.horizon;
  if (horizon == 0) horizon = pf.empty() ? 1 : pf.rbegin()->first + 1;
  run_freq(rep, pf, horizon, fl.grid);
  return rep;
}

inline Report cmd_opencover(const Flags& fl) {
  Report rep("opencover");
  const auto mode = mode_flag(fl.mode);
  const Rational eps = required_rational("eps", fl.eps);
  const Rational eps_prime = required_rational("eps-prime", fl.eps_prime);
  const Trace t = load_trace(rep, fl.trace);
  expect_kind(t, FamilyKind::open, fl.trace);
  run_opencover(rep, t, mode, eps, eps_prime);
  return rep;
}

inline void run_omega(Report& rep, const std::vector<Rational>& prefix, const std::vector<Rational>& cycle,
                      const Rational& eps) {
  auto join = [](const std::vector<Rational>& v) {
    std::string s;
    for (const auto& r : v) s += (s.empty() ? "" : ",") + r.to_string();
    return s.empty() ? std::string("-") : s;
  };
  rep.param("prefix", join(prefix));
  rep.param("cycle", join(cycle));
  rep.param("eps", eps.to_string());
  const auto fam = omega_family(prefix, cycle, eps);
  for (std::size_t i = 0; i < fam.intervals.size(); ++i)
    rep.line("INTERVAL", std::to_string(i) + " w " + fam.w[i].to_string() + " U " + fam.intervals[i].to_string() +
                             " MEASURE " + fam.intervals[i].measure().to_string() + (fam.in_tail(i) ? " tail" : ""));
  const auto checks = check_omega_family(fam);
  rep.line("LIMIT", fam.w_min.to_string());
  rep.line("MEASURE", checks.liminf_measure.to_string());
  rep.line("BOUND", eps.to_string());

  // Tail infima recomputed by scanning the rest of the materialized sequence
  // and then one more full cycle, since the sequence keeps repeating.
  bool inf_ok = true;
  for (std::size_t i = 0; i < fam.w.size(); ++i) {
    Rational m = fam.w[i];
    for (const auto& c : cycle) m = min(m, c);
    for (std::size_t j = i + 1; j < fam.w.size(); ++j) m = min(m, fam.w[j]);
    inf_ok = inf_ok && m == fam.tail_inf[i];
  }
  rep.verdict("tail_infimum", inf_ok);
  rep.verdict("limit_in_tail_intervals", checks.limit_in_every_tail_interval);
  rep.verdict("small_at_minima", checks.small_at_minima);
  rep.verdict("measure_identity", checks.others_exact);
  rep.verdict("liminf_measure_within_eps", checks.liminf_measure_within_eps);
}

inline Report cmd_omegademo(const Flags& fl) {
  Report rep("omegademo");
  const auto prefix = rational_list("prefix", fl.prefix);
  const auto cycle = rational_list("cycle", fl.cycle);
  const Rational eps = required_rational("eps", fl.eps);
  rep.input("prefix=" + fl.prefix + " cycle=" + fl.cycle + " eps=" + fl.eps);
  run_omega(rep, prefix, cycle, eps);
  return rep;
}

inline Report cmd_fatou(const Flags& fl) {
  Report rep("fatou");
  const Trace t = load_trace(rep, fl.trace);
  switch (t.kind) {
    case FamilyKind::func:
      run_fatou_func(rep, t, required_rational("eps", fl.eps), required_rational("eps-prime", fl.eps_prime), fl.grid);
      break;
    case FamilyKind::sets: {
      const auto f = sets_family(t);
      const unsigned depth = fl.depth.value_or(cells_depth_for(f.universe().size()));
      rep.param("k", std::to_string(fl.k));
      rep.param("depth", std::to_string(depth));
      specialization_lines(rep, fatou_specializes(f, fl.k, depth));
      break;
    }
    case FamilyKind::measure: {
      const auto f = measure_family(t);
      const unsigned depth = fl.depth.value_or(cells_depth_for(f.universe().size()));
      rep.param("grid", std::to_string(fl.grid));
      rep.param("depth", std::to_string(depth));
      specialization_lines(rep, fatou_specializes(f, depth, RationalGrid(fl.grid)));
      break;
    }
    default:
      throw InputError(fl.trace + ": fatou takes a func, sets or measure trace");
  }
  return rep;
}

inline randlab::DecoderTable load_decoder(Report& rep, const std::string& path) {
  if (path.empty()) throw InputError("--decoder is required");
  const std::string bytes = read_file(path);
  rep.input(bytes);
  return parse_file(path, bytes, [](const std::string& b) { return randlab::DecoderTable::parse(b); });
}

inline void run_deficiency(Report& rep, const randlab::DecoderTable& dec, unsigned n, unsigned c) {
  rep.param("n", std::to_string(n));
  rep.param("c", std::to_string(c));
  if (c > n) throw InputError("need c <= n");
  if (n - c >= 63) throw InputError("n - c must be below 63");
  const auto d = randlab::deficiency_sets(dec, n, c);
  std::string s = "{";
  for (const auto& u : d) s += (s.size() > 1 ? "," : "") + u.to_string();
  rep.line("SET", s + "}");
  rep.line("SIZE", std::to_string(d.size()));
  const std::uint64_t bound = (std::uint64_t{1} << (n - c)) - 1;
  rep.line("BOUND", std::to_string(bound));
  // Membership recomputed from the raw program list.
  std::set<BinaryWord> direct;
  for (const auto& [prog, out] : dec.entries())
    if (out.length() == n && prog.length() + c < n) direct.insert(out);
  rep.verdict("matches_program_scan", direct == d);
  rep.verdict("size_bound", d.size() <= bound, std::to_string(d.size()) + " > " + std::to_string(bound));
}

inline void run_randlab_cover(Report& rep, const randlab::DecoderTable& dec, unsigned c, std::size_t nmax,
                              unsigned depth, OpenCoverMode mode) {
  rep.param("c", std::to_string(c));
  rep.param("nmax", std::to_string(nmax));
  rep.param("depth", std::to_string(depth));
  rep.param("mode", std::string(mode_name(mode)));
  const auto fam = randlab::deficiency_cover_family(dec, c, nmax, depth);
  const Rational eps = Rational(1).div_pow2(c);
  const Rational eps_prime = c == 0 ? Rational(1) : Rational(1).div_pow2(c - 1);
  bool small = true;
  for (std::size_t n = 0; n < nmax; ++n) {
    const auto mu = fam[n].measure();
    rep.line("MEMBER", std::to_string(n) + " " + fam[n].to_string() + " " + mu.to_string());
    small = small && mu <= eps;
  }
  rep.verdict("member_measure", small);
  const auto res = randlab::deficiency_pipeline(dec, c, nmax, depth, mode);
  open_cover_lines(rep, res, eps_prime);
  rep.verdicts(verify_open_cover(fam, eps, eps_prime, mode, res));
}

inline void run_stabilize(Report& rep, const randlab::TestApproximation& t) {
  rep.param("c", std::to_string(t.c));
  const Rational cap = Rational(1).div_pow2(t.c);
  for (const auto& level : randlab::stabilize_test(t)) {
    const std::string n = std::to_string(level.n);
    for (const auto& [i, w] : level.kept) rep.line("KEPT", n + " " + std::to_string(i) + " " + w.to_string());
    for (const auto& [i, w] : level.deleted) rep.line("DELETED", n + " " + std::to_string(i) + " " + w.to_string());
    for (const auto& u : level.strings) rep.line("CODE", n + " " + u.to_string() + " " + level.codes.at(u).to_string());

    Rational kept(0);
    for (const auto& [i, w] : level.kept) kept += Rational(1).div_pow2(w.length());
    rep.verdict("level" + n + ":kept_measure", kept <= cap, kept.to_string());
    const unsigned bits = static_cast<unsigned>(level.n) - std::min<unsigned>(t.c, static_cast<unsigned>(level.n));
    rep.verdict("level" + n + ":size_bound", level.strings.size() <= (std::size_t{1} << bits));
    std::set<BinaryWord> images;
    bool lengths = true;
    for (const auto& [u, code] : level.codes) {
      images.insert(code);
      lengths = lengths && code.length() == bits;
    }
    rep.verdict("level" + n + ":codes_injective",
                lengths && images.size() == level.codes.size() && level.codes.size() == level.strings.size());
  }
}

inline void run_bard(Report& rep, const randlab::DecoderTable& dec, const BinaryWord& x, unsigned L) {
  rep.param("x", x.to_string());
  rep.param("L", std::to_string(L));
  const auto v = randlab::bar_deficiency(dec, x, L);
  rep.line("BARD", v ? std::to_string(*v) : "none");
  // Brute force over every extension y with |x| <= |y| <= L.
  if (L <= 20) {
    std::optional<long> brute;
    for (unsigned len = x.length(); len <= L; ++len) {
      const unsigned extra = len - x.length();
      for (std::uint64_t tail = 0; tail < (std::uint64_t{1} << extra); ++tail) {
        const BinaryWord y = BinaryWord::from_index(len, (x.index() << extra) | tail);
        std::optional<unsigned> shortest;
        for (const auto& [prog, out] : dec.entries())
          if (out == y && (!shortest || prog.length() < *shortest)) shortest = prog.length();
        if (!shortest) continue;
        const long d = static_cast<long>(len) - static_cast<long>(*shortest);
        if (!brute || d < *brute) brute = d;
      }
    }
    rep.verdict("brute_force", brute == v);
  }
}

inline Report cmd_randlab(const std::string& which, const Flags& fl) {
  Report rep("randlab " + which);
  if (which == "deficiency") {
    run_deficiency(rep, load_decoder(rep, fl.decoder), fl.n, fl.c);
  } else if (which == "cover") {
    const auto dec = load_decoder(rep, fl.decoder);
    run_randlab_cover(rep, dec, fl.c, fl.nmax, fl.depth.value_or(static_cast<unsigned>(fl.nmax)), mode_flag(fl.mode));
  } else if (which == "stabilize") {
    if (fl.table.empty()) throw InputError("--table is required");
    const std::string bytes = read_file(fl.table);
    rep.input(bytes);
    const unsigned c = fl.c;
    run_stabilize(rep, parse_file(fl.table, bytes, [c](const std::string& b) {
                    return randlab::TestApproximation::parse(b, c);
                  }));
  } else {
    auto x = BinaryWord::from_string(fl.x);
    if (!x) throw InputError("--x: expected a binary word or 'e'");
    run_bard(rep, load_decoder(rep, fl.decoder), *x, fl.length_bound);
  }
  return rep;
}

inline gen::Params gen_params(const Flags& fl) {
  gen::Params p;
  p.nmax = fl.nmax;
  p.depth = fl.depth.value_or(3);
  p.budget = fl.count;
  p.k = fl.k;
  if (!fl.eps.empty()) p.eps = rational_flag("eps", fl.eps);
  return p;
}

/// One generated run for sweep: returns the report of the matching
/// construction on the trace for `seed`.
inline Report sweep_run(FamilyKind kind, const gen::Params& p, std::uint64_t seed, const Flags& fl) {
  const Trace t = gen::generate(kind, p, seed);
  const std::string bytes = t.serialize();
  Report rep(std::string("sweep ") + std::string(kind_name(kind)));
  rep.input(bytes);
  switch (kind) {
    case FamilyKind::sets: run_setcover(rep, t, p.k); break;
    case FamilyKind::measure: run_measurecover(rep, measure_family(t), fl.grid); break;
    case FamilyKind::tree: run_treecover(rep, t, fl.grid); break;
    case FamilyKind::open: {
      const Rational eps_prime = fl.eps_prime.empty() ? p.eps + Rational(1, 8) : rational_flag("eps-prime", fl.eps_prime);
      run_opencover(rep, t, mode_flag(fl.mode), p.eps, eps_prime);
      break;
    }
    case FamilyKind::func: {
      const Rational eps_prime = fl.eps_prime.empty() ? p.eps + Rational(1, 8) : rational_flag("eps-prime", fl.eps_prime);
      run_fatou_func(rep, t, p.eps, eps_prime, fl.grid);
      break;
    }
  }
  return rep;
}

/// Runs seeds seed .. seed+runs-1 on worker threads; each run owns all of its
/// state. Lines come back ordered by seed.
inline std::string cmd_sweep(const Flags& fl, std::size_t runs, bool& all_pass_out) {
  const FamilyKind kind = kind_flag(fl.kind);
  const gen::Params p = gen_params(fl);
  gen::detail::check_caps(kind, p);
  mode_flag(fl.mode);

  std::vector<std::string> lines(runs);
  std::vector<char> passed(runs, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < runs;) {
      const std::uint64_t seed = fl.seed + i;
      std::string line = "SEED " + std::to_string(seed);
      try {
        const Report rep = sweep_run(kind, p, seed, fl);
        const std::string text = rep.text();
        line += " REPORT fnv1a64 " + hex64(fnv1a64(text)) + (rep.pass() ? " PASS" : " FAIL");
        passed[i] = rep.pass();
      } catch (const std::exception& e) {
        line += std::string(" ERROR ") + e.what() + " FAIL";
      }
      lines[i] = std::move(line);
    }
  };
  std::size_t threads = fl.threads ? fl.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(runs, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::string out = "SUBCOMMAND sweep\nPARAM kind " + fl.kind + "\n";
  std::size_t ok = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    out += lines[i] + '\n';
    ok += passed[i] != 0;
  }
  out += "RUNS " + std::to_string(runs) + " PASSED " + std::to_string(ok) + '\n';
  all_pass_out = ok == runs;
  out += all_pass_out ? "VERDICT PASS\n" : "VERDICT FAIL\n";
  return out;
}

inline bool emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

/// Entry point: argv without the program name. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite simulator of covering constructions for liminf families", "limcov"};
  app.require_subcommand(1);
  Flags fl;

  auto trace_opt = [&](CLI::App* s) { s->add_option("--trace", fl.trace, "trace file"); };
  auto out_opt = [&](CLI::App* s) { s->add_option("--out", fl.out, "write the report here instead of stdout"); };
  auto grid_opt = [&](CLI::App* s) { s->add_option("--grid", fl.grid, "grid resolution g (values j/2^g)")->check(CLI::Range(1, 30)); };
  auto eps_opts = [&](CLI::App* s) {
    s->add_option("--eps", fl.eps, "p/q");
    s->add_option("--eps-prime", fl.eps_prime, "p/q");
  };

  auto* setcover = app.add_subcommand("setcover", "cover liminf of a set family by at most 2^k elements");
  trace_opt(setcover);
  out_opt(setcover);
  setcover->add_option("--k", fl.k, "cardinality exponent")->check(CLI::Range(0, 62));

  auto* measurecover = app.add_subcommand("measurecover", "semimeasure above liminf m_n at grid precision");
  trace_opt(measurecover);
  out_opt(measurecover);
  grid_opt(measurecover);

  auto* treecover = app.add_subcommand("treecover", "tree semimeasure above liminf a_n at grid precision");
  trace_opt(treecover);
  out_opt(treecover);
  grid_opt(treecover);

  auto* freq = app.add_subcommand("freq", "frequency semimeasures of a partial function, then measurecover");
  freq->add_option("--function", fl.function, "partial function file, lines '<i> <token>'");
  freq->add_option("--horizon", fl.horizon, "T (default: one past the largest defined point)");
  out_opt(freq);
  grid_opt(freq);

  auto* opencover = app.add_subcommand("opencover", "open cover of liminf U_n with measure <= eps'");
  trace_opt(opencover);
  out_opt(opencover);
  eps_opts(opencover);
  opencover->add_option("--mode", fl.mode, "trim, naive or blocks");

  auto* omega = app.add_subcommand("omegademo", "interval family around an eventually periodic sequence");
  omega->add_option("--prefix", fl.prefix, "comma-separated p/q values");
  omega->add_option("--cycle", fl.cycle, "comma-separated p/q values")->required();
  omega->add_option("--eps", fl.eps, "p/q");
  out_opt(omega);

  auto* fatou = app.add_subcommand("fatou", "integral-bounded majorant of liminf f_n (func trace) or specialization check (sets/measure trace)");
  trace_opt(fatou);
  out_opt(fatou);
  eps_opts(fatou);
  grid_opt(fatou);
  fatou->add_option("--k", fl.k, "sets traces: cardinality exponent")->check(CLI::Range(0, 20));
  fatou->add_option("--depth", fl.depth, "sets/measure traces: cell depth of the embedding");

  auto* randlab = app.add_subcommand("randlab", "deficiency constructions over a decoder table");
  randlab->require_subcommand(1);
  std::string randlab_which;
  for (const char* name : {"deficiency", "cover", "stabilize", "bard"}) {
    auto* s = randlab->add_subcommand(name);
    s->callback([&randlab_which, name] { randlab_which = name; });
    out_opt(s);
  }
  auto* r_def = randlab->get_subcommand("deficiency");
  r_def->add_option("--decoder", fl.decoder, "decoder file")->required();
  r_def->add_option("--n", fl.n, "length n")->required();
  r_def->add_option("--c", fl.c, "deficiency c")->required();
  auto* r_cov = randlab->get_subcommand("cover");
  r_cov->add_option("--decoder", fl.decoder, "decoder file")->required();
  r_cov->add_option("--c", fl.c, "deficiency c >= 1")->required()->check(CLI::Range(1, 60));
  r_cov->add_option("--nmax", fl.nmax, "family length")->check(CLI::Range(1, 64));
  r_cov->add_option("--depth", fl.depth, "cylinder depth (default nmax)");
  r_cov->add_option("--mode", fl.mode, "trim, naive or blocks");
  auto* r_stab = randlab->get_subcommand("stabilize");
  r_stab->add_option("--table", fl.table, "lines '<i> <n> <word>'")->required();
  r_stab->add_option("--c", fl.c, "deficiency c")->required();
  auto* r_bard = randlab->get_subcommand("bard");
  r_bard->add_option("--decoder", fl.decoder, "decoder file")->required();
  r_bard->add_option("--x", fl.x, "prefix word")->required();
  r_bard->add_option("--L", fl.length_bound, "extension length bound")->required()->check(CLI::Range(0, 64));

  auto* genc = app.add_subcommand("gen", "print a random trace");
  genc->add_option("--kind", fl.kind, "sets, open, measure, tree or func");
  genc->add_option("--nmax", fl.nmax, "family length (<= 64)");
  genc->add_option("--depth", fl.depth, "word depth (<= 12)");
  genc->add_option("--seed", fl.seed, "RNG seed");
  genc->add_option("--count", fl.count, "size budget");
  genc->add_option("--k", fl.k, "sets: |U_n| <= 2^k");
  genc->add_option("--eps", fl.eps, "open/func: measure or integral bound");
  out_opt(genc);

  std::size_t runs = 16;
  auto* sweep = app.add_subcommand("sweep", "generate and verify many seeds concurrently");
  sweep->add_option("--kind", fl.kind, "sets, open, measure, tree or func");
  sweep->add_option("--nmax", fl.nmax, "family length (<= 64)");
  sweep->add_option("--depth", fl.depth, "word depth (<= 12)");
  sweep->add_option("--seed", fl.seed, "first seed");
  sweep->add_option("--runs", runs, "number of seeds");
  sweep->add_option("--count", fl.count, "size budget per family");
  sweep->add_option("--k", fl.k, "sets: cardinality exponent");
  sweep->add_option("--grid", fl.grid, "grid resolution")->check(CLI::Range(1, 30));
  sweep->add_option("--mode", fl.mode, "open: trim, naive or blocks");
  sweep->add_option("--threads", fl.threads, "worker threads (default: hardware concurrency)");
  eps_opts(sweep);
  out_opt(sweep);

  std::vector<const char*> argv{"limcov"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "limcov: " << e.what() << '\n';
    return 2;
  }

  try {
    std::string text;
    bool pass = true;
    if (*setcover || *measurecover || *treecover || *freq || *opencover || *omega || *fatou || *randlab) {
      Report rep = *setcover       ? cmd_setcover(fl)
                   : *measurecover ? cmd_measurecover(fl)
                   : *treecover    ? cmd_treecover(fl)
                   : *freq         ? cmd_freq(fl)
                   : *opencover    ? cmd_opencover(fl)
                   : *omega        ? cmd_omegademo(fl)
                   : *fatou        ? cmd_fatou(fl)
                                   : cmd_randlab(randlab_which, fl);
      text = rep.text();
      pass = rep.pass();
    } else if (*genc) {
      text = gen::generate_text(kind_flag(fl.kind), gen_params(fl), fl.seed);
    } else {
      text = cmd_sweep(fl, runs, pass);
    }
    if (!emit(text, fl.out, out)) {
      err << "limcov: cannot write " << fl.out << '\n';
      return 2;
    }
    return pass ? 0 : 1;
  } catch (const InputError& e) {
    err << "limcov: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    err << "limcov: internal invariant failed: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace limcov::cli
