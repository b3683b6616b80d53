#pragma once

#include <string>
#include <vector>

#include "limcov/delta_schedule.hpp"
#include "limcov/error.hpp"
#include "limcov/measurecover.hpp"
#include "limcov/oracle.hpp"
#include "limcov/semimeasure.hpp"
#include "limcov/setcover.hpp"
#include "limcov/step_function.hpp"
#include "limcov/trace.hpp"

namespace limcov {

struct FatouResult {
  StepFunction phi;
  Rational threshold;
  std::string threshold_text;
  std::size_t attempts = 0;
  std::size_t max_trims = 0;
  std::size_t commits = 0;  // attempts whose u was nonzero after trimming
};

/// Builds φ with ∫φ ≤ eps' dominating liminf f_n at grid precision.
///
/// Attempts (m, U, r) run with m ascending over [0, nmax], U over cylinders
/// of length <= depth in length-lex order and r ascending over the grid. Each
/// attempt raises θ by the next δ_t, tries u = r·χ_U against f_m, f_{m+1}, ...,
/// caps u by the first f_s whose max with u overflows θ, and finally commits
/// f_s := max(f_s, u) for all s >= m and φ := max(φ, u).
inline FatouResult run_fatou(const FuncFamily& f, const Rational& eps, const Rational& eps_prime,
                             const RationalGrid& grid) {
  if (eps.sign() <= 0 || !(eps < eps_prime))
    throw InputError("need 0 < eps < eps', got eps=" + eps.to_string() + " eps'=" + eps_prime.to_string());
  for (std::size_t n = 0; n < f.nmax(); ++n)
    if (auto i = f[n].integral(); i > eps)
      throw InputError("f_" + std::to_string(n) + " has integral " + i.to_string() + " > eps");

  const unsigned depth = f.depth();
  const std::size_t slots = f.nmax() + 1;
  std::vector<StepFunction> working;
  std::vector<Rational> integrals;
  for (std::size_t s = 0; s < slots; ++s) {
    working.push_back(f[s]);
    integrals.push_back(f[s].integral());
  }

  FatouResult res;
  res.phi = StepFunction(depth);
  Threshold theta(eps, eps_prime);
  const auto targets = grid.members();
  std::vector<Rational> u;

  for (std::size_t m = 0; m < slots; ++m) {
    for_each_word_up_to(depth, [&](const BinaryWord& cyl) {
      const auto [first, last] = res.phi.cells_of(cyl);
      for (const auto& r : targets) {
        const std::size_t t = theta.advance();
        u.assign(last - first, r);
        std::size_t trims = 0;
        for (std::size_t s = m; s < slots; ++s) {
          // ∫max(f_s, u) = ∫f_s + ∫(u − f_s)^+
          Rational excess(0);
          for (std::size_t c = first; c < last; ++c)
            if (working[s][c] < u[c - first]) excess += u[c - first] - working[s][c];
          if (excess.is_zero()) continue;
          excess = excess.div_pow2(depth);
          if (!theta.exceeded_by(integrals[s] + excess)) continue;
          // u := min(u, f_s) removes exactly the excess, which is more than δ_t.
          ensure(theta.schedule().exceeded_by(excess, t), "fatou: trim removed no more than δ_t");
          for (std::size_t c = first; c < last; ++c) u[c - first] = min(u[c - first], working[s][c]);
          ++trims;
          ensure(theta.schedule().count_below(trims, t, r * Rational(1).div_pow2(cyl.length())),
                 "fatou: trim count reached ∫u/δ_t");
        }
        res.max_trims = std::max(res.max_trims, trims);
        bool nonzero = false;
        for (std::size_t c = first; c < last; ++c) {
          const Rational& v = u[c - first];
          if (v.is_zero()) continue;
          nonzero = true;
          if (res.phi[c] < v) res.phi.set(c, v);
        }
        if (!nonzero) continue;
        ++res.commits;
        for (std::size_t s = m; s < slots; ++s) {
          bool changed = false;
          for (std::size_t c = first; c < last; ++c) {
            if (working[s][c] < u[c - first]) {
              integrals[s] += (u[c - first] - working[s][c]).div_pow2(depth);
              working[s].set(c, u[c - first]);
              changed = true;
            }
          }
          if (changed) ensure(!theta.exceeded_by(integrals[s]), "fatou: working integral crossed θ");
        }
      }
    });
  }
  res.attempts = theta.attempts();
  res.threshold = theta.value();
  res.threshold_text = theta.describe();
  ensure(res.phi.integral() <= eps_prime, "fatou: ∫φ exceeds eps'");
  return res;
}

/// One row of a specialization report.
struct SpecializationRow {
  std::string element;
  Rational liminf;    // oracle value (1/0 membership for sets)
  Rational required;  // grid floor of liminf
  Rational direct;    // setcover membership (1/0) or measurecover m'(u)
  Rational fatou;     // φ on the element's cell
  bool pass = true;
};

struct SpecializationReport {
  std::vector<SpecializationRow> rows;
  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

namespace detail {

inline void check_embedding(std::size_t elements, unsigned depth) {
  if (depth > StepFunction::max_depth || elements > (std::size_t{1} << depth))
    throw InputError(std::to_string(elements) + " elements do not fit into 2^" + std::to_string(depth) +
                     " cells");
}

}  // namespace detail

/// Runs the Fatou procedure on indicator functions of a set family (element j
/// of the universe occupies cell j) and compares with run_set_cover: every
/// liminf element must be in the set cover and have φ = 1 on its cell.
inline SpecializationReport fatou_specializes(const SetFamily& f, unsigned k, unsigned depth) {
  const auto& universe = f.universe();
  detail::check_embedding(universe.size(), depth);
  std::vector<StepFunction> members;
  for (std::size_t n = 0; n < f.nmax(); ++n) {
    StepFunction g(depth);
    for (std::size_t j = 0; j < universe.size(); ++j)
      if (f[n].contains(universe[j])) g.set(j, Rational(1));
    members.push_back(std::move(g));
  }
  FuncFamily embedded(std::move(members), universe, depth);
  const Rational eps = Rational(static_cast<long>(cardinality_bound(k))).div_pow2(depth);
  const Rational eps_prime = eps + Rational(1).div_pow2(depth + 1);
  const RationalGrid grid(1);
  const auto fatou = run_fatou(embedded, eps, eps_prime, grid);
  const auto cover = run_set_cover(f, k);
  const auto liminf = oracle::liminf_sets(f);

  SpecializationReport rep;
  for (std::size_t j = 0; j < universe.size(); ++j) {
    SpecializationRow row;
    row.element = universe[j];
    row.liminf = Rational(liminf.contains(universe[j]) ? 1 : 0);
    row.required = grid.floor(row.liminf);
    row.direct = Rational(cover.cover.contains(universe[j]) ? 1 : 0);
    row.fatou = fatou.phi[j];
    row.pass = row.direct >= row.required && row.fatou >= row.required;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// Same comparison for a measure family, with m_n(u) placed on u's cell so
/// that ∫f_n = Σ m_n / 2^depth <= 2^-depth.
inline SpecializationReport fatou_specializes(const MeasureFamily& f, unsigned depth, const RationalGrid& grid) {
  const auto& universe = f.universe();
  detail::check_embedding(universe.size(), depth);
  std::vector<StepFunction> members;
  for (std::size_t n = 0; n < f.nmax(); ++n) {
    StepFunction g(depth);
    for (std::size_t j = 0; j < universe.size(); ++j) g.set(j, f[n][universe[j]]);
    members.push_back(std::move(g));
  }
  FuncFamily embedded(std::move(members), universe, depth);
  const Rational eps = Rational(1).div_pow2(depth);
  const auto fatou = run_fatou(embedded, eps, eps * Rational(2), grid);
  const auto cover = run_measure_cover(f, grid);

  SpecializationReport rep;
  for (std::size_t j = 0; j < universe.size(); ++j) {
    SpecializationRow row;
    row.element = universe[j];
    row.liminf = oracle::liminf_values(f, universe[j]);
    row.required = grid.floor(row.liminf);
    row.direct = cover.table[universe[j]];
    row.fatou = fatou.phi[j];
    row.pass = row.direct >= row.required && row.fatou >= row.required;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace limcov
