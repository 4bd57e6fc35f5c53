#include <gtest/gtest.h>

#include "fg/word.hpp"
#include "oracles.hpp"

using namespace fg;

namespace {

Word W(const char* s) { return parse_word(s); }

std::vector<SignedLetter> abc() {
  return {signed_letter(intern("a"), 1), signed_letter(intern("b"), 1), signed_letter(intern("c"), 1)};
}

}  // namespace

TEST(Word, ReduceExamples) {
  EXPECT_EQ(to_string(W("a a^-1 b")), "b");
  EXPECT_TRUE(W("1").empty());
  EXPECT_THROW(W(""), ParseError);
  EXPECT_EQ(to_string(W("x1 x1 y1")), "x1^2 y1");
  EXPECT_EQ(W("x1 x1 y1").syllables().size(), 2u);
  EXPECT_EQ(to_string(W("a^5 a^-2")), "a^3");
}

TEST(Word, LetterKinds) {
  EXPECT_EQ(infer_kind("a"), LetterKind::Constant);
  EXPECT_EQ(infer_kind("x1"), LetterKind::Variable);
  EXPECT_EQ(infer_kind("c2"), LetterKind::Coefficient);
  EXPECT_EQ(infer_kind("d"), LetterKind::Coefficient);
  EXPECT_EQ(infer_kind("mu3"), LetterKind::CutVariable);
  EXPECT_TRUE(W("a x1").has_kind(LetterKind::Variable));
  EXPECT_FALSE(W("a b").has_kind(LetterKind::Variable));
}

TEST(Word, ConcatWitness) {
  auto w = concat(W("a b"), W("b a^-1"));
  EXPECT_EQ(to_string(w.result), "a b^2 a^-1");
  EXPECT_TRUE(w.cancelled.empty());

  EXPECT_EQ(concat_nc(W("x1^2"), W("y1")), W("x1^2 y1"));
  try {
    concat_nc(W("a b"), W("b^-1 a"));
    FAIL() << "expected a violation";
  } catch (const CancellationViolation& e) {
    EXPECT_EQ(e.witness.cancelled, W("b"));
  }

  auto [r, c] = concat_bounded(W("a^5 b"), W("b^-1 a"), 1);
  EXPECT_EQ(r, W("a^6"));
  EXPECT_EQ(c, 1);
  EXPECT_THROW(concat_bounded(W("a b"), W("b^-1 a^-1 c"), 1), CancellationViolation);
  auto id = concat_bounded(W("a b"), Word(), 0);
  EXPECT_EQ(id.first, W("a b"));
  EXPECT_EQ(id.second, 0);
}

TEST(Word, ConcatSplitsSyllables) {
  auto w = concat(W("b a^5"), W("a^-2 c"));
  EXPECT_EQ(w.cancelled, W("a^2"));
  EXPECT_EQ(w.left, W("b a^5"));
  EXPECT_EQ(w.right, W("a^-2 c"));
  EXPECT_EQ(w.result, W("b a^3 c"));
  EXPECT_EQ(cancellation(W("b a^5"), W("a^-2 c")), 2);
}

TEST(Word, CyclicReduce) {
  auto r = cyclic_reduce(W("x^-1 a x"));
  EXPECT_EQ(r.core, W("a"));
  EXPECT_EQ(r.conjugator, W("x"));
  r = cyclic_reduce(W("a b"));
  EXPECT_EQ(r.core, W("a b"));
  EXPECT_TRUE(r.conjugator.empty());
  r = cyclic_reduce(W("y^-1 x^-1 a b x y"));
  EXPECT_EQ(r.core, W("a b"));
  EXPECT_EQ(r.conjugator, W("x y"));
  r = cyclic_reduce(W("a^3 b a^-1"));
  EXPECT_EQ(r.core, W("a^2 b"));
}

TEST(Word, Subwords) {
  std::set<Word> want = {W("a b"), W("b a")};
  EXPECT_EQ(subwords(W("a b a b"), 2, false), want);
  EXPECT_EQ(subwords(W("a b"), 2, true), want);
  std::set<Word> sub3 = {W("x1^3"), W("x1^2 y1"), W("x1 y1 x1"), W("y1 x1^2")};
  for (int p = 3; p <= 7; ++p) EXPECT_EQ(subwords(power(W("x1"), p) * W("y1"), 3, true), sub3) << p;
}

TEST(Word, PowerRootExamples) {
  auto r = power_root(W("a b a b"));
  EXPECT_EQ(r.root, W("a b"));
  EXPECT_EQ(r.exponent, 2);
  EXPECT_EQ(power_root(W("a b")).exponent, 1);
  r = power_root(W("a^6"));
  EXPECT_EQ(r.root, W("a"));
  EXPECT_EQ(r.exponent, 6);
}

TEST(Word, PowerRootMatchesDivisorScan) {
  oracle::Gen gen(3);
  for (int t = 0; t < 3000; ++t) {
    auto base = gen.letters(abc(), gen.uniform(1, 6));
    auto w = oracle::repeat(base, gen.uniform(1, 4));
    if (w.size() > 24) w.resize(24);
    w = oracle::free_reduce(w);
    if (w.empty()) continue;
    auto [root, e] = oracle::power_root(w);
    auto got = power_root(reduce(w));
    ASSERT_EQ(got.exponent, e) << to_string(reduce(w));
    ASSERT_EQ(got.root, reduce(root));
  }
}

TEST(Word, ReductionProperties) {
  oracle::Gen gen(11);
  for (int t = 0; t < 2000; ++t) {
    auto raw_u = gen.letters(abc(), gen.uniform(0, 30));
    auto raw_v = gen.letters(abc(), gen.uniform(0, 30));
    raw_u.insert(raw_u.end(), raw_v.begin(), raw_v.end());
    Word u = reduce(gen.letters(abc(), gen.uniform(0, 30)));
    Word v = reduce(gen.letters(abc(), gen.uniform(0, 30)));
    Word uv = u * v;
    ASSERT_LE(uv.length(), u.length() + v.length());
    ASSERT_EQ(uv.length(), u.length() + v.length() - 2 * cancellation(u, v));
    ASSERT_TRUE((u * u.inverse()).empty());
    ASSERT_EQ(reduce(uv.letters()), uv);
    ASSERT_EQ(reduce(raw_u), reduce(oracle::free_reduce(raw_u)));
    ASSERT_EQ(reduce(raw_u).letters(), oracle::free_reduce(raw_u));

    auto cr = cyclic_reduce(uv);
    ASSERT_EQ(cr.conjugator.inverse() * cr.core * cr.conjugator, uv);
    ASSERT_TRUE(is_cyclically_reduced(cr.core));
  }
}

TEST(Word, SliceAndFind) {
  Word w = W("a^3 b a^2");
  EXPECT_EQ(w.slice(2, 3), W("a b a"));
  EXPECT_EQ(w.prefix(1), W("a"));
  EXPECT_EQ(w.suffix(2), W("a^2"));
  EXPECT_EQ(find_all(w, W("a^2")), (std::vector<std::int64_t>{0, 1, 4}));
  EXPECT_TRUE(contains(w, W("b a")));
  EXPECT_FALSE(contains(w, W("b^2")));
  EXPECT_TRUE(starts_with(w, W("a^2")));
  EXPECT_TRUE(ends_with(w, W("b a^2")));
  EXPECT_EQ(w.at(3), signed_letter(intern("b"), 1));
}

TEST(Homomorphism, Examples) {
  Homomorphism h = parse_assignment("x=a;y=b");
  EXPECT_EQ(h.apply(commutator(W("x"), W("y"))), W("a^-1 b^-1 a b"));
  Homomorphism id;
  EXPECT_EQ(id.apply(W("x a y^-2")), W("x a y^-2"));
  Homomorphism g = parse_assignment("y=x y");
  EXPECT_EQ(g.apply(commutator(W("x"), W("y"))), commutator(W("x"), W("y")));
}

TEST(Homomorphism, CompositionProperty) {
  oracle::Gen gen(5);
  std::vector<SignedLetter> xy = {signed_letter(intern("x"), 1), signed_letter(intern("y"), 1),
                                  signed_letter(intern("a"), 1)};
  for (int t = 0; t < 300; ++t) {
    Homomorphism h, g;
    h.set("x", reduce(gen.letters(xy, gen.uniform(0, 5))));
    h.set("y", reduce(gen.letters(xy, gen.uniform(0, 5))));
    g.set("x", reduce(gen.letters(xy, gen.uniform(0, 5))));
    g.set("a", reduce(gen.letters(xy, gen.uniform(0, 5))));
    Word w = reduce(gen.letters(xy, gen.uniform(0, 12)));
    ASSERT_EQ(g.apply(h.apply(w)), h.then(g).apply(w));
  }
}

TEST(TextFormat, RoundTrip) {
  for (const char* s : {"1", "a", "a^-1", "x1^2 y1^-3 c1 d", "mu4 nu2^-1"}) {
    EXPECT_EQ(to_string(parse_word(s)), s);
  }
  EXPECT_EQ(to_string(parse_assignment("x=a b;y=b")), "x=a b;y=b");
  EXPECT_THROW(parse_word("a^"), ParseError);
  EXPECT_THROW(parse_word("a^x"), ParseError);
  EXPECT_THROW(parse_assignment("x a"), ParseError);
}

TEST(TextFormat, SortedStrings) {
  std::set<Word> s = {W("b a"), W("a"), W("a b"), W("b")};
  EXPECT_EQ(sorted_strings(s), (std::vector<std::string>{"a", "b", "a b", "b a"}));
}
