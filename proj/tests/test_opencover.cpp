#include <gtest/gtest.h>

#include "support.hpp"

using namespace limcov;
using limcov::testing::failing;

namespace {

OpenFamily open(const std::string& text) { return open_family(parse_trace(text)); }

CylinderSet cyl(const std::string& w) { return CylinderSet::cylinder(BinaryWord::parse(w)); }

constexpr OpenCoverMode all_modes[] = {OpenCoverMode::trim, OpenCoverMode::naive, OpenCoverMode::blocks};

}  // namespace

TEST(OpenCover, ConstantFamilyAllModes) {
  const auto f = open("family open nmax=3 depth=2\nadd 0 0\nadd 1 0\nadd 2 0\n");
  for (auto mode : all_modes) {
    const auto res = run_open_cover(mode, f, Rational(1, 2), Rational(3, 4));
    EXPECT_TRUE(subset(cyl("0"), res.cover)) << mode_name(mode);
    EXPECT_LE(res.cover.measure(), Rational(3, 4));
    const auto vs = verify_open_cover(f, Rational(1, 2), Rational(3, 4), mode, res);
    EXPECT_TRUE(all_pass(vs)) << mode_name(mode) << ": " << failing(vs);
  }
}

TEST(OpenCover, BlocksOnConstantFamilyIsTheSetItself) {
  const auto f = open("family open nmax=3 depth=2\nadd 0 0\nadd 1 0\nadd 2 0\n");
  const auto res = run_block_cover(f, Rational(1, 2), Rational(3, 4));
  EXPECT_EQ(res.cover, cyl("0"));
  ASSERT_FALSE(res.pieces.empty());
  EXPECT_EQ(res.pieces.front().last, 0u);  // k_1 = 0
}

// The literal example has μ(U_0) = 1/2 above eps = 1/4; it is rejected.
TEST(OpenCover, PreconditionRejectsOversizedMember) {
  const auto f = open("family open nmax=2 depth=2\nadd 0 0\nadd 1 00\n");
  try {
    run_trim_cover(f, Rational(1, 4), Rational(1, 2));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()), "U_0 has measure 1/2 > eps");
  }
}

TEST(OpenCover, PreconditionOnEpsilons) {
  const auto f = open("family open nmax=1 depth=1\n");
  EXPECT_THROW(run_trim_cover(f, Rational(1, 2), Rational(1, 2)), InputError);
  EXPECT_THROW(run_trim_cover(f, Rational(0), Rational(1, 2)), InputError);
  EXPECT_THROW(run_trim_cover(f, Rational(1, 2), Rational(3, 2)), InputError);
  EXPECT_THROW(run_block_cover(f, Rational(1, 2), Rational(1, 4)), InputError);
}

// Same shape with U_0 = [10] so that the precondition holds: the attempt
// ([0], i = 1) runs into U_1 = [00] and is trimmed down to it.
TEST(OpenCover, TrimAgainstTheNextMember) {
  const auto f = open("family open nmax=2 depth=2\nadd 0 10\nadd 1 00\n");
  const auto res = run_trim_cover(f, Rational(1, 4), Rational(1, 2));
  EXPECT_TRUE(subset(cyl("00"), res.cover));
  bool trimmed = false;
  for (const auto& p : res.pieces)
    if (p.word == BinaryWord::parse("0") && p.start == 1) {
      EXPECT_EQ(p.trims, 1u);
      EXPECT_EQ(p.added, cyl("00"));
      trimmed = true;
    }
  EXPECT_TRUE(trimmed);
  EXPECT_TRUE(all_pass(verify_open_cover(f, Rational(1, 4), Rational(1, 2), OpenCoverMode::trim, res)));
}

TEST(OpenCover, NaiveStillCoversTheLiminf) {
  const auto f = open("family open nmax=2 depth=2\nadd 0 10\nadd 1 00\n");
  const auto res = run_naive_cover(f, Rational(1, 4), Rational(1, 2));
  EXPECT_TRUE(subset(cyl("00"), res.cover));
  EXPECT_EQ(res.max_trims, 0u);
  const auto blocks = run_block_cover(f, Rational(1, 4), Rational(1, 2));
  EXPECT_TRUE(subset(cyl("00"), blocks.cover));
  EXPECT_LE(blocks.cover.measure(), Rational(1, 2));
}

TEST(OpenCover, EmptyFamily) {
  const auto f = open("family open nmax=2 depth=3\n");
  for (auto mode : all_modes) {
    const auto res = run_open_cover(mode, f, Rational(1, 8), Rational(1, 4));
    EXPECT_LE(res.cover.measure(), Rational(1, 4));
    if (mode == OpenCoverMode::blocks) { EXPECT_TRUE(res.cover.empty()); }
  }
}

TEST(OpenCover, TrimCountsStaySmall) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    gen::Params p;
    p.nmax = 8;
    p.depth = 5;
    p.eps = Rational(1, 4);
    const auto f = open_family(gen::generate(FamilyKind::open, p, seed));
    const auto res = run_trim_cover(f, p.eps, Rational(3, 8));
    for (const auto& piece : res.pieces)
      EXPECT_TRUE(DeltaSchedule(Rational(1, 8)).count_below(piece.trims, piece.attempt));
  }
}

TEST(OpenCover, RandomFamiliesAllModes) {
  const Rational eps_choices[] = {Rational(1, 8), Rational(1, 4), Rational(1, 2)};
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    gen::Rng pick(seed * 7 + 3);
    gen::Params p;
    p.nmax = pick.between(1, 10);
    p.depth = static_cast<unsigned>(pick.between(1, 6));
    p.budget = pick.between(1, 10);
    p.eps = eps_choices[pick.below(3)];
    const Rational eps_prime = p.eps + Rational(1, 8);
    const auto f = open_family(gen::generate(FamilyKind::open, p, seed));
    const auto lim = oracle::liminf_open(f);
    for (auto mode : all_modes) {
      const auto res = run_open_cover(mode, f, p.eps, eps_prime);
      const auto vs = verify_open_cover(f, p.eps, eps_prime, mode, res);
      ASSERT_TRUE(all_pass(vs)) << "seed " << seed << " " << mode_name(mode) << ": " << failing(vs);
      EXPECT_TRUE(subset(lim, res.cover));
      EXPECT_LE(res.cover.measure(), eps_prime);
      EXPECT_LE(res.threshold, eps_prime);
    }
  }
}

TEST(OpenCover, ModeNames) {
  for (auto mode : all_modes) EXPECT_EQ(mode_from_name(mode_name(mode)), mode);
  EXPECT_FALSE(mode_from_name("greedy").has_value());
}

TEST(Omega, CycleOfTwo) {
  const auto fam = omega_family({}, {Rational(1, 4), Rational(1, 2)}, Rational(3, 8));
  ASSERT_EQ(fam.intervals.size(), 4u);
  for (std::size_t i : {0u, 2u}) {
    EXPECT_EQ(fam.intervals[i].lo, Rational(1, 8));
    EXPECT_EQ(fam.intervals[i].hi, Rational(3, 8));
    EXPECT_EQ(fam.intervals[i].measure(), Rational(1, 4));
  }
  EXPECT_EQ(fam.intervals[1].measure(), Rational(1, 2));
  EXPECT_GT(fam.intervals[1].measure(), fam.eps);
  const auto c = check_omega_family(fam);
  EXPECT_TRUE(c.all());
  EXPECT_EQ(c.liminf_measure, Rational(1, 4));
}

TEST(Omega, ConstantCycle) {
  const auto fam = omega_family({}, {Rational(2, 3)}, Rational(1, 2));
  for (const auto& u : fam.intervals) {
    EXPECT_EQ(u.lo, Rational(2, 3) - Rational(1, 6));
    EXPECT_EQ(u.measure(), Rational(1, 3));
  }
}

TEST(Omega, PrefixAboveTheCycle) {
  const auto fam = omega_family({Rational(1)}, {Rational(0)}, Rational(3, 4));
  EXPECT_EQ(fam.tail_start, 1u);
  for (std::size_t i = 1; i < fam.intervals.size(); ++i) {
    EXPECT_EQ(fam.intervals[i].lo, Rational(-1, 4));
    EXPECT_EQ(fam.intervals[i].hi, Rational(1, 4));
    EXPECT_TRUE(fam.intervals[i].contains(Rational(0)));
  }
  // the prefix interval already starts at the tail infimum
  EXPECT_EQ(fam.intervals[0].lo, Rational(-1, 4));
}

TEST(Omega, Errors) {
  EXPECT_THROW(omega_family({Rational(1)}, {}, Rational(1, 2)), InputError);
  EXPECT_THROW(omega_family({}, {Rational(1)}, Rational(0)), InputError);
}

TEST(Omega, RandomInputsSatisfyIdentities) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto in = gen::omega_input(seed);
    const auto fam = omega_family(in.prefix, in.cycle, in.eps);
    EXPECT_TRUE(check_omega_family(fam).all()) << seed;
    // independent recomputation of the tail infimum
    for (std::size_t i = 0; i < fam.w.size(); ++i) {
      Rational inf = fam.w_min;
      for (std::size_t j = i; j < fam.w.size(); ++j) inf = min(inf, fam.w[j]);
      EXPECT_EQ(fam.tail_inf[i], inf);
    }
  }
}
