#include <gtest/gtest.h>

#include "mutate.hpp"
#include "support.hpp"

using namespace limcov;
using limcov::testing::failing;

namespace {

bool verdict_fails(const Verdicts& vs, const std::string& name) {
  for (const auto& v : vs)
    if (v.name == name) return !v.pass;
  ADD_FAILURE() << "no verdict " << name;
  return false;
}

}  // namespace

TEST(Check, GridFloorMatchesTheGrid) {
  gen::Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    Rational v = limcov::testing::random_rational(rng, 40, 40);
    if (v.sign() < 0) v = -v;
    for (unsigned g = 1; g <= 6; ++g) EXPECT_EQ(check::grid_floor(v, g), RationalGrid(g).floor(v)) << v.to_string();
  }
}

TEST(Check, CellsOfMarksSubtrees) {
  const std::vector<BinaryWord> ws{BinaryWord::parse("1"), BinaryWord::parse("01")};
  const auto c = check::cells_of(ws, 2);
  EXPECT_EQ(c, (std::vector<bool>{false, true, true, true}));
  EXPECT_EQ(check::cell_name(1, 2), "01");
}

TEST(Mutation, SetCoverOperationFlips) {
  std::size_t flipped = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    gen::Params p;
    p.nmax = 6;
    p.k = 2;
    const auto f = sets_family(gen::generate(FamilyKind::sets, p, seed));
    const auto res = run_set_cover(f, p.k);
    ASSERT_TRUE(all_pass(verify_set_cover(f, p.k, res)));
    for (std::size_t i = 0; i < res.log.size(); ++i) {
      EXPECT_FALSE(all_pass(verify_set_cover(f, p.k, mutate::set_op(res, i)))) << seed << " op " << i;
      ++flipped;
    }
  }
  EXPECT_GT(flipped, 50u);
}

TEST(Mutation, MeasureIncreaseFlips) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    gen::Params p;
    p.nmax = 5;
    const auto f = measure_family(gen::generate(FamilyKind::measure, p, seed));
    const auto res = run_measure_cover(f, RationalGrid(3));
    for (std::size_t i = 0; i < res.log.size(); ++i) {
      EXPECT_TRUE(verdict_fails(verify_measure_cover(f, 3, mutate::measure_op(res, i)), "log_consistent"));
      const auto vs = verify_measure_cover(f, 3, mutate::measure_op(res, i, true));
      EXPECT_TRUE(verdict_fails(vs, "replay_acceptable")) << seed;
      EXPECT_TRUE(verdict_fails(vs, "semimeasure")) << seed;
    }
  }
}

TEST(Mutation, OpenCoverPieceFlips) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    gen::Params p;
    p.nmax = 5;
    p.depth = 4;
    const auto f = open_family(gen::generate(FamilyKind::open, p, seed));
    for (auto mode : {OpenCoverMode::trim, OpenCoverMode::naive, OpenCoverMode::blocks}) {
      const auto res = run_open_cover(mode, f, p.eps, Rational(3, 8));
      for (std::size_t i = 0; i < res.pieces.size(); ++i) {
        if (res.pieces[i].added.empty() && mode == OpenCoverMode::blocks) continue;
        EXPECT_FALSE(all_pass(verify_open_cover(f, p.eps, Rational(3, 8), mode, mutate::open_piece(res, i))));
        const auto vs = verify_open_cover(f, p.eps, Rational(3, 8), mode, mutate::open_piece(res, i, true));
        EXPECT_TRUE(verdict_fails(vs, "measure"));
        if (mode != OpenCoverMode::blocks) { EXPECT_TRUE(verdict_fails(vs, "replay_within_eps_prime")); }
      }
    }
  }
}

TEST(Mutation, DroppedOperationFlips) {
  const auto f = sets_family(parse_trace("family sets nmax=2\nadd 0 a\nadd 0 b\nadd 1 b\nadd 1 c\n"));
  auto res = run_set_cover(f, 1);
  res.log.pop_back();
  EXPECT_TRUE(verdict_fails(verify_set_cover(f, 1, res), "log_consistent"));
}

TEST(VerifyTree, BrokenTableFails) {
  const auto f = tree_family(parse_trace("family tree nmax=1 depth=1\nraise 0 0 1/2\nraise 0 e 1/2\n"));
  auto res = run_tree_cover(f, RationalGrid(1));
  ASSERT_TRUE(all_pass(verify_tree_cover(f, 1, res))) << failing(verify_tree_cover(f, 1, res));
  res.table.set(BinaryWord{}, Rational(0));
  const auto vs = verify_tree_cover(f, 1, res);
  EXPECT_TRUE(verdict_fails(vs, "log_consistent"));
  EXPECT_TRUE(verdict_fails(vs, "tree_constraint"));
}

TEST(VerifyFatou, LoweredCellFails) {
  const auto f = func_family(parse_trace("family func nmax=2 depth=1\nraise 0 0 1/2\nraise 1 0 1/2\n"));
  auto res = run_fatou(f, Rational(1, 4), Rational(1, 2), RationalGrid(1));
  ASSERT_TRUE(all_pass(verify_fatou(f, Rational(1, 2), 1, res)));
  res.phi.set(0, Rational(0));
  EXPECT_TRUE(verdict_fails(verify_fatou(f, Rational(1, 2), 1, res), "dominates_liminf"));
  res.phi.set(1, Rational(2));
  EXPECT_TRUE(verdict_fails(verify_fatou(f, Rational(1, 2), 1, res), "integral"));
}

TEST(VerifyOpen, TrimBoundWitness) {
  const auto f = open_family(parse_trace("family open nmax=2 depth=2\nadd 0 10\nadd 1 00\n"));
  auto res = run_trim_cover(f, Rational(1, 4), Rational(1, 2));
  ASSERT_FALSE(res.pieces.empty());
  res.pieces[0].trims = 1000;
  const auto vs = verify_open_cover(f, Rational(1, 4), Rational(1, 2), OpenCoverMode::trim, res);
  EXPECT_TRUE(verdict_fails(vs, "trim_bound"));
}
