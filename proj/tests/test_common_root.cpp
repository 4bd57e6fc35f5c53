#include <gtest/gtest.h>

#include "fg/word.hpp"
#include "oracles.hpp"

using namespace fg;

TEST(CommonRoot, ExhaustiveUpToFour) {
  auto r = oracle::common_root(4);
  EXPECT_EQ(r.pairs, 128 * 128);
  EXPECT_GT(r.premise, 0);
  EXPECT_TRUE(r.counterexamples.empty()) << r.counterexamples.front();
}

TEST(CommonRoot, PrefixBoundIsTight) {
  // u = a b a, v = a b: u^2 and v^2 share "a b a" (length 3) but not |u|+|v| letters.
  Word u = parse_word("a b a"), v = parse_word("a b");
  Word U = power(u, 3), V = power(v, 4);
  std::int64_t common = 0;
  while (common < U.length() && common < V.length() && U.at(common) == V.at(common)) ++common;
  EXPECT_LT(common, u.length() + v.length());
  EXPECT_NE(u * v, v * u);
}

TEST(CommonRoot, LibraryRootsAgree) {
  auto a = signed_letter(intern("a"), 1), b = signed_letter(intern("b"), 1);
  for (const auto& w : oracle::cyclic_words(a, b, 4)) {
    for (std::int64_t k = 1; k <= 3; ++k) {
      auto rw = oracle::repeat(w, k);
      auto [root, e] = oracle::power_root(rw);
      auto got = power_root(reduce(rw));
      ASSERT_EQ(got.root, reduce(root));
      ASSERT_EQ(got.exponent, e);
    }
  }
}
