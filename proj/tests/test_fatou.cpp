#include <gtest/gtest.h>

#include "support.hpp"

using namespace limcov;
using limcov::testing::failing;

namespace {

FuncFamily func(const std::string& text) { return func_family(parse_trace(text)); }

std::size_t cell(const StepFunction& g, const std::string& w) { return g.cells_of(BinaryWord::parse(w)).first; }

}  // namespace

TEST(Fatou, ConstantHalfOnLeftHalf) {
  const auto f = func("family func nmax=2 depth=1\nraise 0 0 1/2\nraise 1 0 1/2\n");
  for (unsigned g = 1; g <= 3; ++g) {
    const auto res = run_fatou(f, Rational(1, 4), Rational(1, 2), RationalGrid(g));
    EXPECT_GE(res.phi[cell(res.phi, "0")], Rational(1, 2));
    EXPECT_LE(res.phi.integral(), Rational(1, 2));
    EXPECT_TRUE(all_pass(verify_fatou(f, Rational(1, 2), g, res)));
  }
}

TEST(Fatou, ZeroFamily) {
  const auto f = func("family func nmax=3 depth=2\n");
  const auto res = run_fatou(f, Rational(1, 8), Rational(1, 4), RationalGrid(2));
  EXPECT_LE(res.phi.integral(), Rational(1, 4));
}

// f_0 = χ_[0] has integral 1/2 > 1/4 and is refused as given.
TEST(Fatou, PreconditionNamesMemberAndIntegral) {
  const auto f = func("family func nmax=2 depth=2\nraise 0 0 1/1\nraise 1 00 1/1\n");
  try {
    run_fatou(f, Rational(1, 4), Rational(1, 2), RationalGrid(1));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()), "f_0 has integral 1/2 > eps");
  }
  EXPECT_THROW(run_fatou(f, Rational(1, 2), Rational(1, 2), RationalGrid(1)), InputError);
}

// With f_0 = χ_[10] instead, the candidate 1·χ_[0] started at m = 1 is cut
// down to f_1 = χ_[00].
TEST(Fatou, TrimMirrorsTheOpenCover) {
  const auto f = func("family func nmax=2 depth=2\nraise 0 10 1/1\nraise 1 00 1/1\n");
  const auto res = run_fatou(f, Rational(1, 4), Rational(1, 2), RationalGrid(1));
  EXPECT_EQ(res.phi[cell(res.phi, "00")], Rational(1));
  EXPECT_GE(res.max_trims, 1u);
  EXPECT_LE(res.phi.integral(), Rational(1, 2));
  EXPECT_TRUE(all_pass(verify_fatou(f, Rational(1, 2), 1, res)));
}

TEST(Fatou, RandomFamilies) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    gen::Rng pick(seed + 500);
    gen::Params p;
    p.nmax = pick.between(1, 6);
    p.depth = static_cast<unsigned>(pick.between(1, 4));
    p.budget = pick.between(1, 6);
    p.eps = Rational(static_cast<long>(pick.between(1, 4)), 8);
    const Rational eps_prime = p.eps + Rational(1, 8);
    const unsigned g = static_cast<unsigned>(pick.between(1, 3));
    const auto f = func_family(gen::generate(FamilyKind::func, p, seed));
    const auto res = run_fatou(f, p.eps, eps_prime, RationalGrid(g));
    const auto vs = verify_fatou(f, eps_prime, g, res);
    ASSERT_TRUE(all_pass(vs)) << "seed " << seed << ": " << failing(vs);
    EXPECT_LE(res.threshold, eps_prime);
  }
}

TEST(FatouSpecializes, SetsSingleton) {
  const auto f = sets_family(parse_trace("family sets nmax=2\nadd 0 a\nadd 1 a\n"));
  const auto rep = fatou_specializes(f, 0, 1);
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_EQ(rep.rows[0].required, Rational(1));
  EXPECT_GE(rep.rows[0].fatou, Rational(1));
  EXPECT_TRUE(rep.pass());
}

TEST(FatouSpecializes, MeasureHalf) {
  const auto f = measure_family(parse_trace("family measure nmax=2\nraise 0 a 1/2\nraise 1 a 1/2\n"));
  const auto rep = fatou_specializes(f, 1, RationalGrid(1));
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_GE(rep.rows[0].fatou, Rational(1, 2));
  EXPECT_GE(rep.rows[0].direct, Rational(1, 2));
  EXPECT_TRUE(rep.pass());
}

TEST(FatouSpecializes, EmptyFamilyPassesVacuously) {
  EXPECT_TRUE(fatou_specializes(sets_family(parse_trace("family sets nmax=1\n")), 0, 1).pass());
}

TEST(FatouSpecializes, EmbeddingOverflow) {
  const auto f = sets_family(parse_trace("family sets nmax=1\nadd 0 a\nadd 0 b\nadd 0 c\n"));
  try {
    fatou_specializes(f, 2, 1);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()), "3 elements do not fit into 2^1 cells");
  }
}

TEST(FatouSpecializes, RandomSetAndMeasureFamilies) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    gen::Rng pick(seed);
    gen::Params p;
    p.nmax = pick.between(1, 5);
    p.k = static_cast<unsigned>(pick.below(2));
    p.budget = pick.between(1, 8);
    const auto sets = sets_family(gen::generate(FamilyKind::sets, p, seed));
    EXPECT_TRUE(fatou_specializes(sets, p.k, 3).pass()) << "sets seed " << seed;
    const auto measure = measure_family(gen::generate(FamilyKind::measure, p, seed));
    EXPECT_TRUE(fatou_specializes(measure, 3, RationalGrid(2)).pass()) << "measure seed " << seed;
  }
}
