#include <gtest/gtest.h>

#include "support.hpp"

using namespace limcov;
using limcov::testing::failing;

namespace {

MeasureFamily constant_family(const std::map<std::string, Rational>& values, std::size_t nmax) {
  std::vector<SemimeasureTable> members(nmax);
  std::vector<std::string> universe;
  for (const auto& [u, v] : values) {
    universe.push_back(u);
    for (auto& m : members) m.set(u, v);
  }
  return MeasureFamily(std::move(members), universe);
}

TreeFamily tree(const std::string& text) { return tree_family(parse_trace(text)); }

}  // namespace

TEST(MeasureCover, ConstantHalfIsKept) {
  const auto f = constant_family({{"a", Rational(1, 2)}}, 3);
  const auto res = run_measure_cover(f, RationalGrid(1));
  EXPECT_GE(res.table["a"], Rational(1, 2));
  EXPECT_TRUE(all_pass(verify_measure_cover(f, 1, res)));
}

TEST(MeasureCover, AllZeroFamilyRaisesToOne) {
  const auto f = constant_family({{"a", Rational(0)}}, 2);
  const auto res = run_measure_cover(f, RationalGrid(1));
  EXPECT_EQ(res.table["a"], Rational(1));
}

TEST(MeasureCover, TwoHalvesArePinched) {
  const auto f = constant_family({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}, 2);
  const auto res = run_measure_cover(f, RationalGrid(2));
  EXPECT_EQ(res.table["a"], Rational(1, 2));
  EXPECT_EQ(res.table["b"], Rational(1, 2));
  EXPECT_TRUE(all_pass(verify_measure_cover(f, 2, res)));
}

TEST(MeasureCover, RejectsNonSemimeasures) {
  try {
    run_measure_cover(measure_family(parse_trace("family measure nmax=2\nraise 1 a 3/4\nraise 1 b 3/4\n")),
                      RationalGrid(2));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()), "m_1 is not a semimeasure: sum 3/2");
  }
}

TEST(MeasureCover, OutputIsAnUpperBoundNotTheLiminf) {
  // m_0(x) = 1, then 0 forever; the liminf is 0 but x may still be raised.
  const auto f = measure_family(parse_trace("family measure nmax=2\nraise 0 x 1/1\nraise 1 y 1/4\n"));
  const auto res = run_measure_cover(f, RationalGrid(2));
  EXPECT_TRUE(all_pass(verify_measure_cover(f, 2, res)));
  EXPECT_GE(res.table["y"], Rational(1, 4));
  EXPECT_LE(res.table.total(), Rational(1));
}

TEST(MeasureCover, RandomFamiliesPassVerification) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    gen::Rng pick(seed ^ 0xabc);
    gen::Params p;
    p.nmax = pick.between(1, 12);
    p.budget = pick.between(1, 32);
    const unsigned g = static_cast<unsigned>(pick.between(1, 6));
    const auto f = measure_family(gen::generate(FamilyKind::measure, p, seed));
    const auto res = run_measure_cover(f, RationalGrid(g));
    const auto vs = verify_measure_cover(f, g, res);
    ASSERT_TRUE(all_pass(vs)) << "seed " << seed << ": " << failing(vs);
  }
}

TEST(Frequency, ConstantFunction) {
  PartialFunction f{{0, "x"}, {1, "x"}, {2, "x"}, {3, "x"}};
  const auto res = frequency_semimeasures(f, 4);
  ASSERT_EQ(res.mu.size(), 4u);
  for (const auto& mu : res.mu) EXPECT_EQ(mu["x"], Rational(1));
}

TEST(Frequency, UndefinedEverywhere) {
  const auto res = frequency_semimeasures({}, 3);
  for (const auto& mu : res.mu) EXPECT_EQ(mu.total(), Rational(0));
  EXPECT_EQ(res.trace.nmax, 3u);
}

TEST(Frequency, CountsByFormula) {
  const auto res = frequency_semimeasures({{0, "a"}, {1, "b"}, {2, "a"}}, 3);
  EXPECT_EQ(res.mu[2]["a"], Rational(2, 3));
  EXPECT_EQ(res.mu[2]["b"], Rational(1, 3));
  EXPECT_EQ(res.mu[1]["a"], Rational(1, 2));
  EXPECT_EQ(res.mu[0]["a"], Rational(1));
  // the trace member n is μ_{n+1}
  const auto f = measure_family(res.trace);
  EXPECT_EQ(f[2]["a"], Rational(2, 3));
  EXPECT_EQ(f[0]["b"], Rational(0));
}

TEST(Frequency, Errors) {
  EXPECT_THROW(frequency_semimeasures({}, 0), InputError);
  EXPECT_THROW(frequency_semimeasures({{5, "a"}}, 3), InputError);
}

TEST(Frequency, PartialFunctionFile) {
  const auto f = parse_partial_function("0 a\n2 b\n");
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.at(2), "b");
  EXPECT_THROW(parse_partial_function("0 a\n0 b\n"), ParseError);
  EXPECT_THROW(parse_partial_function("x a\n"), ParseError);
}

// m' dominates the suffix-minimum frequency of every value at grid precision.
TEST(Frequency, PipelineDominatesSuffixMinima) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    gen::Rng pick(seed);
    const std::size_t T = pick.between(1, 64);
    const auto pf = gen::partial_function(seed, T, pick.between(1, 16));
    const unsigned g = static_cast<unsigned>(pick.between(1, 6));
    const auto fr = frequency_semimeasures(pf, T);
    const auto res = run_measure_cover(measure_family(fr.trace), RationalGrid(g));
    for (const auto& x : fr.trace.universe()) {
      Rational best(0);
      for (std::size_t start = 0; start < T; ++start) {
        Rational m = fr.mu[start][x];
        for (std::size_t n = start; n < T; ++n) m = min(m, fr.mu[n][x]);
        best = max(best, m);
      }
      EXPECT_GE(res.table[x], RationalGrid(g).floor(best)) << seed << " " << x;
    }
  }
}

TEST(TreeCover, RaiseOnEmptyTreeIsAccepted) {
  TreeSemimeasure a;
  const auto path = detail::repair_path(a, BinaryWord::parse("0"), Rational(1, 2));
  ASSERT_EQ(path.size(), 2u);
  EXPECT_EQ(path.back().first, BinaryWord{});
  EXPECT_EQ(path.back().second, Rational(1, 2));
}

TEST(TreeCover, RepairForcingTheRootAboveOneIsRejected) {
  const auto f = tree("family tree nmax=2 depth=1\nraise 0 1 1/4\nraise 0 e 1/4\nraise 1 0 3/4\nraise 1 e 3/4\n");
  TreeSemimeasure tail = f.tail();
  EXPECT_EQ(detail::repair_path(tail, BinaryWord::parse("1"), Rational(1, 2)).back().second, Rational(5, 4));
  const auto res = run_tree_cover(f, RationalGrid(2));
  // Next to a("0") >= 3/4 in the tail, "1" can never reach 1/2.
  EXPECT_LT(res.table[BinaryWord::parse("1")], Rational(1, 2));
  EXPECT_GE(res.table[BinaryWord::parse("0")], Rational(3, 4));
  EXPECT_LE(res.table[BinaryWord::parse("0")] + res.table[BinaryWord::parse("1")], res.table[BinaryWord{}]);
  EXPECT_LE(res.table[BinaryWord{}], Rational(1));
  EXPECT_TRUE(all_pass(verify_tree_cover(f, 2, res)));
}

TEST(TreeCover, RaiseBelowTheTailValueChangesNothing) {
  TreeSemimeasure a;
  a.set(BinaryWord::parse("01"), Rational(1, 2));
  a.set(BinaryWord::parse("0"), Rational(1, 2));
  a.set(BinaryWord{}, Rational(1, 2));
  for (const auto& [w, v] : detail::repair_path(a, BinaryWord::parse("01"), Rational(1, 4))) EXPECT_EQ(a[w], v);
}

TEST(TreeCover, RejectsInvalidMembers) {
  try {
    run_tree_cover(tree("family tree nmax=1 depth=2\nraise 0 01 1/2\n"), RationalGrid(1));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()), "a_0 violates the tree constraint at word 0");
  }
}

TEST(TreeCover, RandomFamiliesPassVerification) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    gen::Rng pick(seed + 1000);
    gen::Params p;
    p.nmax = pick.between(1, 8);
    p.depth = static_cast<unsigned>(pick.between(1, 6));
    p.budget = pick.between(1, 8);
    const unsigned g = static_cast<unsigned>(pick.between(1, 4));
    const auto f = tree_family(gen::generate(FamilyKind::tree, p, seed));
    const auto res = run_tree_cover(f, RationalGrid(g));
    const auto vs = verify_tree_cover(f, g, res);
    ASSERT_TRUE(all_pass(vs)) << "seed " << seed << ": " << failing(vs);
    EXPECT_TRUE(res.table.valid());
  }
}

TEST(TreeSemimeasure, ViolationFindsTheBrokenNode) {
  TreeSemimeasure a;
  a.set(BinaryWord::parse("10"), Rational(1, 4));
  a.set(BinaryWord::parse("11"), Rational(1, 4));
  a.set(BinaryWord::parse("1"), Rational(1, 4));
  a.set(BinaryWord{}, Rational(1));
  EXPECT_EQ(a.violation(), BinaryWord::parse("1"));
  a.set(BinaryWord::parse("1"), Rational(1, 2));
  EXPECT_TRUE(a.valid());
  a.set(BinaryWord{}, Rational(3, 2));
  EXPECT_EQ(a.violation(), BinaryWord{});
}
