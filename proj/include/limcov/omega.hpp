#pragma once

#include <algorithm>
#include <vector>

#include "limcov/error.hpp"
#include "limcov/rational.hpp"
#include "limcov/real_interval.hpp"

namespace limcov {

/// Interval family U_i = (inf_{j≥i} w_j − ε/3, w_i + ε/3) over an eventually
/// periodic sequence w = prefix, cycle, cycle, ...
struct OmegaFamily {
  std::vector<Rational> w;               // materialized w_0 .. w_{P+2L-1}
  std::vector<Rational> tail_inf;        // inf_{j≥i} w_j for each materialized i
  std::vector<RealInterval> intervals;   // U_i
  std::size_t tail_start = 0;            // P: first index inside the periodic part
  Rational w_min;                        // min(cycle) = liminf w_i
  Rational eps;

  bool in_tail(std::size_t i) const { return i >= tail_start; }
};

struct OmegaChecks {
  bool limit_in_every_tail_interval = true;  // w_min ∈ U_i for tail i
  bool small_at_minima = true;               // μ(U_i) = 2ε/3 where w_i = w_min
  bool others_exact = true;                  // μ(U_i) = w_i − w_min + 2ε/3 elsewhere
  Rational liminf_measure;                   // min over tail of μ(U_i)
  bool liminf_measure_within_eps = true;

  bool all() const {
    return limit_in_every_tail_interval && small_at_minima && others_exact && liminf_measure_within_eps;
  }
};

inline OmegaFamily omega_family(const std::vector<Rational>& prefix, const std::vector<Rational>& cycle,
                                const Rational& eps) {
  if (cycle.empty()) throw InputError("cycle must be nonempty");
  if (eps.sign() <= 0) throw InputError("eps must be positive");

  OmegaFamily out;
  out.eps = eps;
  out.tail_start = prefix.size();
  out.w_min = *std::min_element(cycle.begin(), cycle.end());
  out.w = prefix;
  for (int rep = 0; rep < 2; ++rep) out.w.insert(out.w.end(), cycle.begin(), cycle.end());

  // Beyond the prefix the infimum is the cycle minimum; inside it, a suffix
  // minimum over the remaining prefix values.
  out.tail_inf.assign(out.w.size(), out.w_min);
  Rational running = out.w_min;
  for (std::size_t i = prefix.size(); i-- > 0;) {
    running = min(running, prefix[i]);
    out.tail_inf[i] = running;
  }
  const Rational third = eps / Rational(3);
  for (std::size_t i = 0; i < out.w.size(); ++i)
    out.intervals.push_back({out.tail_inf[i] - third, out.w[i] + third});
  return out;
}

inline OmegaChecks check_omega_family(const OmegaFamily& fam) {
  OmegaChecks c;
  const Rational two_thirds = fam.eps * Rational(2, 3);
  bool first = true;
  for (std::size_t i = fam.tail_start; i < fam.intervals.size(); ++i) {
    const auto& u = fam.intervals[i];
    const Rational mu = u.measure();
    if (!u.contains(fam.w_min)) c.limit_in_every_tail_interval = false;
    if (fam.w[i] == fam.w_min) {
      if (mu != two_thirds) c.small_at_minima = false;
    } else if (mu != fam.w[i] - fam.w_min + two_thirds) {
      c.others_exact = false;
    }
    c.liminf_measure = first ? mu : min(c.liminf_measure, mu);
    first = false;
  }
  c.liminf_measure_within_eps = c.liminf_measure <= fam.eps;
  return c;
}

}  // namespace limcov
