#include <gtest/gtest.h>

#include "fg/families.hpp"
#include "fg/gamma.hpp"
#include "oracles.hpp"

using namespace fg;

namespace {

Word W(const char* s) { return parse_word(s); }

QuadraticEquation commutator_ab() { return parse_equation("quad orient n=1 m=0 d=1 rhs=a^-1 b^-1 a b"); }

}  // namespace

TEST(Families, Merzljakov) {
  EXPECT_EQ(merzljakov_word({2, 3}), W("b a^2 b a^3 b"));
  EXPECT_EQ(merzljakov_word({}), W("b"));
  auto ws = merzljakov_words({{1}, {2}});
  ASSERT_EQ(ws.size(), 2u);
  EXPECT_NE(ws[0], ws[1]);
  EXPECT_THROW(merzljakov_word({1, 0}), NonPositiveExponent);

  std::set<Word> seen;
  for (std::int64_t a = 1; a <= 4; ++a)
    for (std::int64_t b = 1; b <= 4; ++b) {
      Word w = merzljakov_word({a, b});
      EXPECT_TRUE(starts_with(w, W("b")));
      EXPECT_TRUE(ends_with(w, W("b")));
      EXPECT_TRUE(seen.insert(w).second);
    }
}

TEST(Families, Demo2Members) {
  auto D = demo2_sequence();
  auto fam = family(D, 4, {{1, 1, 1, 1}, {2, 3, 4, 5}}, parse_assignment("x=a;y=b"));
  Homomorphism psi = fam.member({1, 1, 1, 1});
  EXPECT_EQ(psi.apply(W("x")), W("a b a a b a b a"));
  EXPECT_EQ(psi.apply(W("y")), W("a b a a b"));
  for (const auto& p : fam.P) EXPECT_TRUE(fam.verify(p));
  auto sep = fam.separates({2, 3, 4, 5}, {{W("x"), W("y")}, {W("x y"), W("y x")}});
  EXPECT_EQ(sep, (std::vector<bool>{true, true}));
  EXPECT_THROW(family(D, 4, {{1, 1}}, parse_assignment("x=a;y=b")), LengthMismatch);
  EXPECT_THROW(family(D, 4, {}, parse_assignment("x=a;y=a")), BaseNotASolution);
}

TEST(Families, MembersSolveOnGrid) {
  oracle::Gen gen(41);
  for (auto [m, n] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {2, 0}, {0, 2}}) {
    auto s = build_standard(Orientation::Orientable, n, m, true);
    auto G = basic_sequence(s);
    Homomorphism base;
    std::vector<SignedLetter> ab = {signed_letter(intern("a"), 1), signed_letter(intern("b"), 1)};
    for (auto v : s.variables) base.set(v, reduce(gen.letters(ab, gen.uniform(1, 3))));
    for (int j = 1; j <= m; ++j) base.set(coef_c(j), reduce(gen.letters(ab, gen.uniform(1, 2))));
    base.set(coef_d(), base.apply(s.s0));
    int L = std::min(G.K() + 1, 5);
    std::vector<Tuple> P = {Tuple(static_cast<std::size_t>(L), 2), Tuple(static_cast<std::size_t>(L), 3)};
    auto fam = family(G, L, P, base);
    for (const auto& p : P) EXPECT_TRUE(fam.verify(p)) << m << "," << n;
  }
}

TEST(Families, CancellationBasics) {
  Homomorphism beta = parse_assignment("x=a;y=a^-1");
  auto rep = check_pairs(beta, 2, {{W("x"), W("y")}});
  ASSERT_EQ(rep.pairs.size(), 1u);
  EXPECT_EQ(rep.pairs[0].cancel, 1);
  EXPECT_EQ(rep.pairs[0].min_len, 1);
  EXPECT_FALSE(rep.ok);
  EXPECT_TRUE(check_pairs(beta, 2, {}).ok);
  EXPECT_TRUE(check_pairs(parse_assignment("x=a b;y=b a"), 2, {{W("x"), W("y")}}).ok);
}

TEST(Families, RequiredPairs) {
  auto pairs = required_pairs(0, 1, {});
  EXPECT_FALSE(pairs.empty());
  for (const auto& [u, v] : pairs) {
    EXPECT_EQ(u.length(), 1);
    EXPECT_EQ(v.length(), 1);
  }
  auto with_c = required_pairs(2, 0, {});
  bool cc = false;
  for (const auto& [u, v] : with_c) cc = cc || (u == W("c1") && v == W("c1"));
  EXPECT_TRUE(cc);
}

TEST(Families, BigPowerSolves) {
  auto S = commutator_ab();
  Homomorphism beta1 = parse_assignment("x1=a;y1=b");
  auto beta = big_power_beta(S, beta1);
  EXPECT_TRUE(check_solution(S, beta));
  EXPECT_TRUE(general_position(S, beta).ok);
  EXPECT_THROW(big_power_beta(S, parse_assignment("x1=a;y1=a")), BaseNotASolution);
  BigPowerParams bad;
  bad.n = {-1};
  EXPECT_THROW(big_power_beta(S, beta1, bad), NonPositiveExponent);

  auto S2 = build_standard(Orientation::Orientable, 1, 1, true);
  Homomorphism b2 = parse_assignment("x1=a;y1=b;z1=a b");
  b2.set(coef_c(1), W("b a^2"));
  b2.set(coef_d(), b2.apply(S2.s0));
  auto big2 = big_power_beta(S2, b2);
  EXPECT_TRUE(check_solution(S2, big2));
}

// The default n=20 leaves a cancellation of 4 against images of length 25
// (ratio 1/6.25); n >= 35 clears lambda = 10.
TEST(Families, BigPowerSmallCancellation) {
  auto S = commutator_ab();
  Homomorphism beta1 = parse_assignment("x1=a;y1=b");
  auto rep20 = check_small_cancellation(big_power_beta(S, beta1), 10, 0, 1);
  EXPECT_FALSE(rep20.ok);
  std::int64_t worst = 0;
  for (const auto& pc : rep20.pairs) worst = std::max(worst, pc.cancel);
  EXPECT_EQ(worst, 4);
  EXPECT_TRUE(check_small_cancellation(big_power_beta(S, beta1), 6, 0, 1).ok);

  for (std::int64_t n : {35, 45, 60}) {
    BigPowerParams bp;
    bp.n = {n};
    auto rep = check_small_cancellation(big_power_beta(S, beta1, bp), 10, 0, 1);
    EXPECT_TRUE(rep.ok) << n << "\n" << to_string(rep);
  }
  BigPowerParams bp;
  bp.n = {34};
  EXPECT_FALSE(check_small_cancellation(big_power_beta(S, beta1, bp), 10, 0, 1).ok);
}

// Cancellation between images of reduced words is decided by their boundary letters.
TEST(Families, BoundaryLetters) {
  auto S = commutator_ab();
  BigPowerParams bp;
  bp.n = {45};
  auto beta = big_power_beta(S, parse_assignment("x1=a;y1=b"), bp);
  auto G = basic_sequence(S);
  Homomorphism phiK = phi(G, {4, 5, 6}).fwd;
  std::vector<Word> gens;
  for (auto g : G.generators) {
    gens.push_back(phiK.image(g));
    gens.push_back(phiK.image(g).inverse());
  }
  int checked = 0;
  for (const auto& U : gens)
    for (const auto& V : gens) {
      if (U.last() == -V.first()) continue;
      Word u = Word::gen(letter_of(U.last()), U.last() > 0 ? 1 : -1);
      Word v = Word::gen(letter_of(V.first()), V.first() > 0 ? 1 : -1);
      if (!reduced_as_written({U, V})) continue;
      ++checked;
      EXPECT_EQ(cancellation(beta.apply(U), beta.apply(V)), cancellation(beta.apply(u), beta.apply(v)))
          << to_string(U) << " | " << to_string(V);
    }
  EXPECT_GT(checked, 0);
}
