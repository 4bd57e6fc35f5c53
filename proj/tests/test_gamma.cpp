#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "fg/compressed.hpp"
#include "fg/gamma.hpp"
#include "oracles.hpp"

using namespace fg;

namespace {

Word W(const char* s) { return parse_word(s); }

BasicSequence seq(int m, int n) { return basic_sequence(build_standard(Orientation::Orientable, n, m, m > 0)); }

const std::vector<std::pair<int, int>> kGrid = {{0, 1}, {0, 2}, {1, 1}, {2, 0}, {3, 0}, {2, 2}};

Tuple increasing(int len, std::int64_t from = 4) {
  Tuple p;
  for (int i = 0; i < len; ++i) p.push_back(from + i);
  return p;
}

}  // namespace

TEST(Gamma, SequenceShapes) {
  auto G = seq(0, 1);
  ASSERT_EQ(G.K(), 3);
  EXPECT_EQ(G.gamma(1).hom().apply(W("y1")), W("x1 y1"));
  EXPECT_EQ(G.gamma(2).hom().apply(W("x1")), W("y1 x1"));
  EXPECT_EQ(G.gamma(3).hom().apply(W("y1")), W("x1 y1"));
  EXPECT_EQ(G.gamma(4).label, G.gamma(1).label);

  G = seq(2, 0);
  ASSERT_EQ(G.K(), 1);
  Word T = W("z1^-1 c1 z1 z2^-1 c2 z2");
  EXPECT_EQ(G.gamma(1).hom().apply(W("z1")), W("z1") * T);
  EXPECT_EQ(G.gamma(1).hom().apply(W("z2")), W("z2") * T);

  G = seq(1, 1);
  ASSERT_EQ(G.K(), 4);
  EXPECT_EQ(G.gamma(1).hom().apply(W("z1")), W("z1 z1^-1 c1 z1 x1^-1"));
}

TEST(Gamma, FixesS0) {
  for (auto [m, n] : kGrid) {
    auto G = seq(m, n);
    for (int j = 1; j <= G.K(); ++j) {
      EXPECT_EQ(G.gamma(j).hom().apply(G.eq.s0), G.eq.s0) << m << "," << n << " j=" << j;
      EXPECT_EQ(power(G.gamma(j), -3).apply(G.eq.s0), G.eq.s0);
    }
  }
  auto D = demo2_sequence();
  for (const auto& g : D.gammas) EXPECT_EQ(g.hom().apply(D.eq.s0), D.eq.s0);
}

TEST(Gamma, ClosedPowerMatchesIteration) {
  for (auto [m, n] : kGrid) {
    auto G = seq(m, n);
    for (int j = 1; j <= G.K(); ++j)
      for (std::int64_t p = -5; p <= 5; ++p) {
        auto a = power(G.gamma(j), p), b = iterate_power(G.gamma(j), p);
        for (auto g : G.generators)
          EXPECT_EQ(a.apply(Word::gen(g)), b.apply(Word::gen(g)))
              << m << "," << n << " j=" << j << " p=" << p << " " << letter_name(g);
      }
  }
  auto G = seq(0, 1);
  EXPECT_EQ(power(G.gamma(1), 4).apply(W("y1")), W("x1^4 y1"));
  EXPECT_EQ(power(G.gamma(1), 0).apply(W("x1 y1")), W("x1 y1"));
}

TEST(Gamma, PhiInverse) {
  for (auto [m, n] : kGrid) {
    auto G = seq(m, n);
    Tuple p = {3, -2, 4};
    p.resize(static_cast<std::size_t>(std::min(G.K() + 1, 4)), 2);
    auto a = phi(G, p);
    for (auto g : G.generators) {
      Word w = Word::gen(g);
      EXPECT_EQ(a.inv.apply(a.fwd.apply(w)), w) << m << "," << n << " " << letter_name(g);
      EXPECT_EQ(a.fwd.apply(a.inv.apply(w)), w);
    }
  }
}

TEST(Gamma, PhiPrefixesAreConsistent) {
  auto G = seq(1, 1);
  Tuple p = {4, 5, 6, 7, 4};
  auto pre = phi_prefixes(G, p);
  ASSERT_EQ(pre.size(), p.size() + 1);
  for (std::size_t j = 0; j <= p.size(); ++j) {
    Tuple q(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(j));
    auto f = phi(G, q).fwd;
    for (auto g : G.generators) EXPECT_EQ(pre[j].apply(Word::gen(g)), f.apply(Word::gen(g))) << j;
  }
}

TEST(Gamma, Demo2ClosedForm) {
  auto D = demo2_sequence();
  Homomorphism beta = parse_assignment("x=a;y=b");
  Homomorphism psi = phi(D, {1, 1, 1, 1}).fwd.then(beta);
  EXPECT_EQ(psi.apply(W("x")), W("a b a a b a b a"));
  EXPECT_EQ(psi.apply(W("y")), W("a b a a b"));

  for (Tuple p : {Tuple{2, 3, 4, 5}, Tuple{1, 2, 1, 3}, Tuple{3, 1, 2, 2}}) {
    psi = phi(D, p).fwd.then(beta);
    Word a = W("a"), b = W("b");
    Word period = power(power(power(a, p[0]) * b, p[1]) * a, p[2]) * power(a, p[0]) * b;
    EXPECT_EQ(psi.apply(W("y")), period);
    EXPECT_EQ(psi.apply(W("x")), power(period, p[3]) * power(power(a, p[0]) * b, p[1]) * a);
  }
}

TEST(Gamma, LeadingTermsArePrimitive) {
  for (auto [m, n] : kGrid) {
    auto G = seq(m, n);
    int len = std::min(2 * G.K(), 8);
    auto As = leading_terms(G, increasing(len));
    ASSERT_EQ(static_cast<int>(As.size()), len);
    for (std::size_t j = 0; j < As.size(); ++j) {
      EXPECT_TRUE(is_cyclically_reduced(As[j]));
      EXPECT_EQ(power_root(As[j]).exponent, 1) << m << "," << n << " j=" << j + 1;
      for (std::size_t i = 0; i < j; ++i) EXPECT_FALSE(contains(As[i], power(As[j], 2)));
    }
  }
}

TEST(Gamma, LeadingTermData) {
  auto G = seq(0, 1);
  Tuple p = {4, 5, 6};
  auto lt = leading_term(G, 2, p);
  EXPECT_EQ(lt.A, W("x1^4 y1"));
  auto all = leading_terms(G, p);
  EXPECT_EQ(all.at(1), lt.A);
  auto l4 = leading_term(G, 4, {4, 5, 6, 7});
  ASSERT_TRUE(l4.has_star);
  EXPECT_EQ(l4.R.inverse() * l4.star_core * l4.R, l4.star);
}

TEST(Gamma, CompressedAgreesWithExplicit) {
  for (auto [m, n] : kGrid) {
    auto G = seq(m, n);
    Tuple p = increasing(std::min(G.K() + 2, 6));
    auto ex = phi_prefixes(G, p);
    auto cp = compressed_phi_prefixes(G, p);
    ASSERT_EQ(ex.size(), cp.size());
    for (std::size_t j = 0; j < ex.size(); ++j)
      for (auto g : G.generators) ASSERT_EQ(cp[j].image(g).expand(), ex[j].image(g));
    auto A = leading_terms(G, p);
    auto cA = compressed_leading_terms(G, p);
    for (std::size_t j = 0; j < A.size(); ++j) EXPECT_EQ(cA[j].expand(), A[j]);
  }
}

TEST(Gamma, Largeness) {
  EXPECT_TRUE(is_large({4, 5, 6}, 3));
  EXPECT_FALSE(is_large({4, 3, 6}, 3));
  EXPECT_EQ(parse_tuple("4,5,6"), (Tuple{4, 5, 6}));
  EXPECT_EQ(to_string(Tuple{4, -5}), "4,-5");
  EXPECT_THROW(parse_tuple("4,,5"), ParseError);
}

TEST(Gamma, Membership) {
  auto G = seq(0, 2);
  Tuple pK = increasing(G.K());
  EXPECT_TRUE(w_gamma_membership(W("x1^3"), G, pK).member);
  auto r = w_gamma_membership(W("x1^2"), G, pK);
  EXPECT_FALSE(r.member);
  EXPECT_EQ(r.condition, 2);
  EXPECT_TRUE(w_gamma_membership(Word(), G, pK).member);
}

TEST(Gamma, ExceptionSetsAreInverseClosed) {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {1, 3}}) {
    auto T = exception_T(m, n);
    for (const auto& w : T) EXPECT_TRUE(T.count(w.inverse()));
  }
  EXPECT_THROW(exception_T(0, 2), InvalidForm);
}

TEST(Gamma, CancellationProfile) {
  auto G = seq(0, 1);
  Homomorphism phiK = phi(G, {4, 5, 6}).fwd;
  Word u = W("x1");
  auto cp = cancellation_profile(phiK, u, u.inverse());
  EXPECT_TRUE(cp.left_residue.empty());
  EXPECT_TRUE(cp.right_residue.empty());
  EXPECT_EQ(cp.cancelled, cp.left_image);
  cp = cancellation_profile(phiK, W("x1"), W("y1"));
  EXPECT_EQ(cp.left_residue * cp.right_residue, phiK.apply(W("x1 y1")));
}

TEST(Gamma, PhiCache) {
  auto dir = std::filesystem::temp_directory_path() / "fg_gamma_cache_test";
  std::filesystem::remove_all(dir);
  setenv("GAMMA_CACHE_DIR", dir.c_str(), 1);
  auto G = seq(1, 1);
  Tuple p = {4, 5, 6, 7};
  Homomorphism first = phi_cached(G, p);
  EXPECT_FALSE(std::filesystem::is_empty(dir));
  Homomorphism second = phi_cached(G, p);
  unsetenv("GAMMA_CACHE_DIR");
  auto direct = phi(G, p).fwd;
  for (auto g : G.generators) {
    EXPECT_EQ(first.apply(Word::gen(g)), second.apply(Word::gen(g)));
    EXPECT_EQ(first.apply(Word::gen(g)), direct.apply(Word::gen(g)));
  }
  std::filesystem::remove_all(dir);
}

TEST(Compressed, BasicOperations) {
  oracle::Gen gen(21);
  std::vector<SignedLetter> ab = {signed_letter(intern("a"), 1), signed_letter(intern("b"), 1)};
  for (int t = 0; t < 400; ++t) {
    Word u = reduce(gen.letters(ab, gen.uniform(0, 20)));
    Word v = reduce(gen.letters(ab, gen.uniform(0, 20)));
    CWord cu(u), cv(v);
    ASSERT_EQ((cu * cv).expand(), u * v);
    ASSERT_EQ(cancellation(cu, cv), cancellation(u, v));
    ASSERT_EQ(cu.inverse().expand(), u.inverse());
    std::int64_t k = gen.uniform(-4, 4);
    ASSERT_EQ(power(cu, k).expand(), power(u, k));
    auto cr = cyclic_reduce(cu);
    auto er = cyclic_reduce(u);
    ASSERT_EQ(cr.core.expand(), er.core);
    ASSERT_EQ(cr.conjugator.expand(), er.conjugator);
    if (!u.empty()) {
      ASSERT_EQ(power_root_exponent(cr.core), power_root(er.core).exponent);
      std::int64_t pos = gen.uniform(0, u.length() - 1);
      std::int64_t n = gen.uniform(0, u.length() - pos);
      ASSERT_EQ(cu.slice(pos, n).expand(), u.slice(pos, n));
      ASSERT_EQ(cu.at(pos), u.at(pos));
    }
    ASSERT_EQ(contains(CWord(u * v), cv), contains(u * v, v));
    ASSERT_EQ(contains(cu, cv), contains(u, v)) << to_string(u) << " / " << to_string(v);
  }
}

TEST(Compressed, HugeRepeats) {
  CWord a(W("a b"));
  CWord big = CWord::repeat(a, std::int64_t{1} << 40);
  EXPECT_EQ(big.length(), std::int64_t{1} << 41);
  EXPECT_EQ(power_root_exponent(big), std::int64_t{1} << 40);
  EXPECT_TRUE(contains(big, CWord(W("b a b a"))));
  EXPECT_FALSE(contains(big, CWord(W("a a"))));
  EXPECT_THROW(big.expand(), std::length_error);
  EXPECT_EQ((big * big.inverse()).length(), 0);
}
