#include <gtest/gtest.h>

#include "support.hpp"

using namespace limcov;

namespace {

constexpr FamilyKind kinds[] = {FamilyKind::sets, FamilyKind::open, FamilyKind::measure, FamilyKind::tree,
                                FamilyKind::func};

}  // namespace

TEST(Generate, SameSeedSameBytes) {
  gen::Params p;
  for (auto kind : kinds) {
    EXPECT_EQ(gen::generate_text(kind, p, 0), gen::generate_text(kind, p, 0));
    EXPECT_EQ(gen::generate_text(kind, p, 12345), gen::generate_text(kind, p, 12345));
  }
  // different seeds should not all collide
  std::set<std::string> seen;
  for (std::uint64_t s = 0; s < 20; ++s) seen.insert(gen::generate_text(FamilyKind::open, p, s));
  EXPECT_GT(seen.size(), 10u);
}

TEST(Generate, TextRoundTrips) {
  gen::Params p;
  p.nmax = 7;
  for (auto kind : kinds)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto t = gen::generate(kind, p, s);
      EXPECT_EQ(parse_trace(t.serialize()).serialize(), t.serialize());
    }
}

TEST(Generate, Caps) {
  gen::Params p;
  p.nmax = 0;
  EXPECT_THROW(gen::generate(FamilyKind::sets, p, 0), InputError);
  p.nmax = 65;
  EXPECT_THROW(gen::generate(FamilyKind::sets, p, 0), InputError);
  p.nmax = 4;
  p.depth = 13;
  EXPECT_THROW(gen::generate(FamilyKind::open, p, 0), InputError);
  EXPECT_NO_THROW(gen::generate(FamilyKind::sets, p, 0));  // depth unused
  p.depth = 3;
  p.k = 17;
  EXPECT_THROW(gen::generate(FamilyKind::sets, p, 0), InputError);
  p.k = 2;
  p.eps = Rational(0);
  EXPECT_THROW(gen::generate(FamilyKind::open, p, 0), InputError);
  p.eps = Rational(3, 2);
  EXPECT_THROW(gen::generate(FamilyKind::func, p, 0), InputError);
}

TEST(Generate, OpenMembersRespectEps) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    gen::Params p;
    p.nmax = 1 + s % 9;
    p.depth = static_cast<unsigned>(1 + s % 8);
    p.eps = Rational(1, 4);
    const auto f = open_family(gen::generate(FamilyKind::open, p, s));
    for (std::size_t n = 0; n <= f.nmax(); ++n) ASSERT_LE(f[n].measure(), Rational(1, 4)) << s;
  }
}

TEST(Generate, PreconditionsHoldForEveryKind) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    gen::Params p;
    p.nmax = 1 + s % 12;
    p.k = static_cast<unsigned>(s % 4);
    const auto sets = sets_family(gen::generate(FamilyKind::sets, p, s));
    for (std::size_t n = 0; n < sets.nmax(); ++n) EXPECT_LE(sets[n].size(), std::size_t{1} << p.k);
    const auto measure = measure_family(gen::generate(FamilyKind::measure, p, s));
    for (std::size_t n = 0; n < measure.nmax(); ++n) EXPECT_TRUE(measure[n].is_semimeasure());
    const auto tree = tree_family(gen::generate(FamilyKind::tree, p, s));
    for (std::size_t n = 0; n < tree.nmax(); ++n) EXPECT_TRUE(tree[n].valid());
    const auto func = func_family(gen::generate(FamilyKind::func, p, s));
    for (std::size_t n = 0; n < func.nmax(); ++n) EXPECT_LE(func[n].integral(), p.eps);
  }
}

TEST(Generate, SingleMemberFamily) {
  gen::Params p;
  p.nmax = 1;
  for (auto kind : kinds) EXPECT_EQ(gen::generate(kind, p, 3).nmax, 1u);
  const auto f = sets_family(gen::generate(FamilyKind::sets, p, 3));
  EXPECT_EQ(f.tail(), f[0]);
  EXPECT_EQ(f[5], f[0]);
}

TEST(Generate, OtherInputs) {
  const auto pf = gen::partial_function(4, 30, 5);
  for (const auto& [i, v] : pf) {
    EXPECT_LT(i, 30u);
    EXPECT_EQ(v[0], 'y');
  }
  EXPECT_EQ(pf, gen::partial_function(4, 30, 5));
  EXPECT_THROW(gen::partial_function(4, 30, 0), InputError);

  const auto dec = gen::decoder(9, 20, 8, 8);
  for (const auto& [prog, out] : dec.entries()) EXPECT_LE(prog.length(), 8u);

  const auto in = gen::omega_input(2);
  EXPECT_FALSE(in.cycle.empty());
  EXPECT_GT(in.eps, Rational(0));

  const auto t = gen::test_approximation(5, 2, 8);
  for (const auto& [key, w] : t.intervals) {
    EXPECT_LE(key.first, key.second);
    EXPECT_LE(w.length(), key.second);
  }
}
