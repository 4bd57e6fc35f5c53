#include <gtest/gtest.h>

#include "fg/cut.hpp"
#include "oracles.hpp"

using namespace fg;

namespace {

Word W(const char* s) { return parse_word(s); }

CutEquation single(const char* fx, const char* fm, const char* alpha, const char* beta) {
  CutEquation pi;
  pi.intervals.push_back({"s", W(fx), W(fm)});
  pi.alpha = parse_assignment(alpha);
  pi.beta = parse_assignment(beta);
  for (const auto& [x, w] : pi.beta.assignments()) pi.params.push_back(x);
  for (const auto& [v, w] : pi.alpha.assignments()) pi.vars.push_back(v);
  return pi;
}

CutEquation with_sizes(std::vector<int> sizes) {
  CutEquation pi;
  int id = 0, var = 0;
  for (int s : sizes) {
    std::vector<SignedLetter> fm;
    for (int i = 0; i < s; ++i) {
      LetterId v = intern("mu" + std::to_string(++var));
      pi.vars.push_back(v);
      fm.push_back(signed_letter(v, 1));
    }
    pi.intervals.push_back({"s" + std::to_string(++id), W("x"), reduce(fm)});
  }
  return pi;
}

const char* kExample =
    "PARAMS x y\n"
    "VARS mu1 mu2\n"
    "INTERVAL s X: y x^6 y M: mu1 mu2\n"
    "ALPHA mu1 = b a^6\n"
    "ALPHA mu2 = b\n"
    "BETA x = a\n"
    "BETA y = b\n";

}  // namespace

TEST(Cut, VerifyExamples) {
  EXPECT_TRUE(verify_solution(single("x", "mu1", "mu1=a b", "x=a b")).ok);
  EXPECT_FALSE(verify_solution(single("x", "mu1", "mu1=1", "x=a b")).ok);
  auto pi = single("x", "mu1 mu2", "mu1=a b;mu2=b^-1 a", "x=a^2");
  EXPECT_FALSE(verify_solution(pi, SolutionMode::Graphic).ok);
  EXPECT_TRUE(verify_solution(pi, SolutionMode::Group).ok);
  EXPECT_FALSE(verify_solution(single("x", "mu1", "mu1=a", "x=b")).ok);
}

TEST(Cut, FileRoundTrip) {
  CutEquation pi = parse_cut_equation(kExample);
  EXPECT_EQ(to_string(pi), kExample);
  EXPECT_EQ(parse_cut_equation(to_string(pi)), pi);
  EXPECT_THROW(parse_cut_equation("FOO x\n"), ParseError);
  EXPECT_THROW(parse_cut_equation("INTERVAL s X: x M: mu1\nINTERVAL s X: x M: mu1\n"), ParseError);
  EXPECT_THROW(parse_cut_equation("INTERVAL s X: x\n"), ParseError);

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    SyntheticOptions so;
    so.shape = static_cast<SyntheticOptions::Shape>(seed % 3);
    so.twisted = seed % 2;
    CutEquation s = synthetic_cut_equation(seed, so);
    ASSERT_EQ(parse_cut_equation(to_string(s)), s);
  }
}

TEST(Cut, ComplexityExamples) {
  auto pi = with_sizes({1, 2, 2, 3});
  auto c = complexity(pi);
  EXPECT_EQ(c.length, 3);
  EXPECT_EQ(c.k, (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(to_string(c), "length=3 k=(2,1)");
  Complexity other{3, {0, 2}};
  EXPECT_EQ(compare(c, other), -1);
  EXPECT_EQ(compare(other, c), 1);
  EXPECT_TRUE(complexity(with_sizes({1, 1})).is_zero());
  EXPECT_EQ(to_string(complexity(with_sizes({1, 1}))), "0");

  auto m = metrics(pi);
  EXPECT_EQ(m.S, 7);
  EXPECT_EQ(m.width, 2);
  m = metrics(with_sizes({1, 1, 1}));
  EXPECT_EQ(m.S, 0);
  EXPECT_EQ(m.width, 0);
  EXPECT_EQ(kappa(pi, 2), 9);
}

TEST(Cut, CompareIsTotalOrder) {
  oracle::Gen gen(17);
  std::vector<Complexity> cs;
  for (int i = 0; i < 60; ++i) {
    Complexity c;
    c.length = 4;
    for (int k = 0; k < 3; ++k) c.k.push_back(gen.uniform(0, 2));
    cs.push_back(c);
  }
  for (const auto& a : cs)
    for (const auto& b : cs) {
      ASSERT_EQ(compare(a, b), -compare(b, a));
      ASSERT_EQ(compare(a, b) == 0, a == b);
      for (const auto& d : cs)
        if (compare(a, b) < 0 && compare(b, d) < 0) ASSERT_LT(compare(a, d), 0);
    }
}

TEST(Cut, GeneralizedEquation) {
  auto ge = to_generalized(single("x", "mu1", "mu1=a b", "x=a b"));
  ASSERT_EQ(ge.V.size(), 2u);
  EXPECT_EQ(ge.boundaries(), 3);
  ASSERT_EQ(ge.bases.size(), 4u);
  EXPECT_EQ(ge.bases[0].label, "x");
  EXPECT_EQ(ge.bases[0].begin, 1);
  EXPECT_EQ(ge.bases[0].end, 2);
  EXPECT_EQ(ge.bases[1].label, "mu1");
  EXPECT_EQ(ge.bases[1].begin, 2);
  EXPECT_EQ(ge.bases[2].kind, GeBase::Kind::Lambda);
  EXPECT_EQ(ge.bases[2].begin, 1);
  EXPECT_EQ(ge.bases[2].end, 2);
  EXPECT_EQ(ge.bases[3].kind, GeBase::Kind::LambdaDual);
  EXPECT_EQ(ge.bases[3].begin, 2);
  EXPECT_EQ(ge.bases[3].end, 3);
  EXPECT_EQ(ge.bases[2].dual, 3);

  auto two = to_generalized(single("x", "mu1 a mu1", "mu1=a", "x=a^3"));
  int first = -1;
  for (std::size_t i = 0; i < two.bases.size(); ++i) {
    const auto& b = two.bases[i];
    if (b.label == "mu1" && first < 0) first = static_cast<int>(i);
    if (b.label == "a") EXPECT_EQ(b.kind, GeBase::Kind::Constant);
  }
  ASSERT_GE(first, 0);
  int dual = two.bases[static_cast<std::size_t>(first)].dual;
  ASSERT_GE(dual, 0);
  EXPECT_EQ(two.bases[static_cast<std::size_t>(dual)].label, "mu1");
  EXPECT_EQ(two.bases[static_cast<std::size_t>(dual)].exp, two.bases[static_cast<std::size_t>(first)].exp);
}

// Every letter is one item base; lambda bases pair with their duals.
TEST(Cut, GeneralizedEquationCoverage) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CutEquation pi = synthetic_cut_equation(seed);
    auto ge = to_generalized(pi);
    std::vector<int> cover(ge.V.size(), 0);
    for (const auto& b : ge.bases) {
      if (b.kind == GeBase::Kind::Variable || b.kind == GeBase::Kind::Constant) {
        ASSERT_EQ(b.end, b.begin + 1);
        ++cover[static_cast<std::size_t>(b.begin - 1)];
      }
    }
    for (int c : cover) ASSERT_EQ(c, 1);
    for (std::size_t i = 0; i < pi.intervals.size(); ++i) {
      const auto& iv = pi.intervals[i];
      Word img = pi.alpha.apply(iv.fm);
      ASSERT_EQ(pi.beta.apply(iv.fx).length(), img.length());
    }
    for (std::size_t i = 0; i < ge.bases.size(); ++i) {
      const auto& b = ge.bases[i];
      if (b.kind != GeBase::Kind::Lambda) continue;
      const auto& d = ge.bases.at(static_cast<std::size_t>(b.dual));
      ASSERT_EQ(d.kind, GeBase::Kind::LambdaDual);
      ASSERT_EQ(static_cast<std::size_t>(d.dual), i);
    }
  }
}

TEST(Cut, TStarWorkedExample) {
  CutEquation pi = parse_cut_equation(kExample);
  GammaCutEquation g{pi, W("x"), Word(), 1, 0, {}};
  TStarOptions opt;
  opt.N = 4;
  auto r = t_star(g, opt);
  EXPECT_FALSE(r.identity);
  EXPECT_EQ(r.long_vars, std::vector<std::string>{"mu1"});
  ASSERT_EQ(r.result.intervals.size(), 2u);
  EXPECT_EQ(r.result.intervals[0].fm, W("nu1"));
  EXPECT_EQ(r.result.intervals[1].fm, W("nu2 mu2"));
  EXPECT_EQ(r.result.intervals[0].fx, W("y x"));
  EXPECT_EQ(r.result.intervals[1].fx, W("x y"));
  EXPECT_EQ(r.result.alpha.image(intern("nu1")), W("b a"));
  EXPECT_EQ(r.result.alpha.image(intern("nu2")), W("a"));
  EXPECT_TRUE(verify_solution(r.result).ok);
  EXPECT_LE(compare(complexity(r.result), complexity(pi)), 0);

  opt.N = 6;
  EXPECT_TRUE(t_star(g, opt).identity);
}

TEST(Cut, TStarWithoutLongVariable) {
  CutEquation pi = single("y x^6 y", "mu1 mu2 mu3", "mu1=b a^2;mu2=a^2;mu3=a^2 b", "x=a;y=b");
  GammaCutEquation g{pi, W("x"), Word(), 1, 0, {}};
  TStarOptions opt;
  opt.N = 4;
  EXPECT_THROW(t_star(g, opt), NoLongVariable);
}

TEST(Cut, SplitAtJunction) {
  CutEquation pi = single("x y", "mu1 mu2", "mu1=a;mu2=c", "x=a b;y=b^-1 c");
  auto out = split_interval(pi, "s", 1, SplitCase::AtVarJunction);
  ASSERT_EQ(out.intervals.size(), 2u);
  EXPECT_EQ(out.intervals[0].fm, W("mu1 lam1"));
  EXPECT_EQ(out.intervals[1].fm, W("lam1^-1 mu2"));
  EXPECT_EQ(out.alpha.image(intern("lam1")), W("b"));
  EXPECT_TRUE(verify_solution(out).ok);
  EXPECT_THROW(split_interval(pi, "s", 1, SplitCase::InsideFirstVar), InconsistentBoundary);
  EXPECT_THROW(split_interval(pi, "s", 0, SplitCase::AtVarJunction), InconsistentBoundary);
  EXPECT_THROW(split_interval(pi, "t", 1, SplitCase::AtVarJunction), InvalidForm);
}

TEST(Cut, SplitInsideVariables) {
  CutEquation first = single("x^3 y", "mu1 mu2", "mu1=a^2;mu2=a b", "x=a;y=b");
  auto out = split_interval(first, "s", 1, SplitCase::InsideFirstVar);
  ASSERT_EQ(out.delta.size(), 1u);
  EXPECT_EQ(out.delta[0].var, intern("mu1"));
  EXPECT_TRUE(verify_solution(out).ok);

  CutEquation last = single("x y^3", "mu1 mu2", "mu1=a b;mu2=b^2", "x=a;y=b");
  out = split_interval(last, "s", 3, SplitCase::InsideLastVar);
  EXPECT_TRUE(verify_solution(out).ok);
  EXPECT_EQ(out.intervals.size(), 2u);

  CutEquation inner = single("x y^3", "mu1 mu2 mu3", "mu1=a;mu2=b^2;mu3=b", "x=a;y=b");
  out = split_interval(inner, "s", 2, SplitCase::InsideInnerVar);
  ASSERT_EQ(out.delta.size(), 1u);
  EXPECT_EQ(out.delta[0].var, intern("mu2"));
  EXPECT_TRUE(verify_solution(out).ok);
  EXPECT_EQ(parse_split_case("inside-inner-var"), SplitCase::InsideInnerVar);
  EXPECT_THROW(parse_split_case("nowhere"), ParseError);
}

TEST(Cut, SplitKeepsLabels) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    CutEquation pi = synthetic_cut_equation(seed);
    const auto& iv = pi.intervals.front();
    for (std::int64_t pos = 1; pos < iv.fx.length(); ++pos) {
      for (auto sc : {SplitCase::AtVarJunction, SplitCase::InsideFirstVar, SplitCase::InsideInnerVar,
                      SplitCase::InsideLastVar}) {
        CutEquation out;
        try {
          out = split_interval(pi, iv.id, pos, sc);
        } catch (const InconsistentBoundary&) {
          continue;
        }
        ASSERT_TRUE(verify_solution(out).ok);
        ASSERT_EQ(out.interval(iv.id + ".1").fx * out.interval(iv.id + ".2").fx, iv.fx);
      }
    }
  }
}

TEST(Cut, IterateProperties) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    for (auto shape : {SyntheticOptions::Shape::Random, SyntheticOptions::Shape::Collapse,
                       SyntheticOptions::Shape::Peel}) {
      SyntheticOptions so;
      so.shape = shape;
      so.intervals = 1 + static_cast<int>(seed % 3);
      CutEquation pi = synthetic_cut_equation(seed, so);
      ASSERT_TRUE(verify_solution(pi).ok) << seed;
      auto tr = iterate(pi, parse_schedule("x@1;y@1;x y@1;x y^-1@1;x@1"));
      ASSERT_TRUE(tr.violations.empty()) << seed << ": " << tr.violations.front();
      for (std::size_t i = 1; i < tr.entries.size(); ++i) {
        ASSERT_LE(compare(tr.entries[i].comp, tr.entries[i - 1].comp), 0);
        ASSERT_LE(tr.entries[i].m.length, tr.entries[i - 1].m.length);
        ASSERT_TRUE(tr.entries[i].verified);
      }
      if (shape == SyntheticOptions::Shape::Collapse) EXPECT_TRUE(tr.reached_zero) << seed;
    }
  }
}

TEST(Cut, IterateShapes) {
  auto zero = with_sizes({1});
  zero.alpha.set(intern("mu1"), W("a"));
  zero.beta.set(intern("x"), W("a"));
  EXPECT_EQ(iterate(zero, parse_schedule("x@1")).entries.size(), 1u);

  SyntheticOptions peel;
  peel.shape = SyntheticOptions::Shape::Peel;
  auto tr = iterate(synthetic_cut_equation(4, peel), parse_schedule("x@1;y@1;x y@1;x y^-1@1"));
  EXPECT_EQ(tr.stabilized_at, 0);
}

TEST(Cut, Schedule) {
  auto s = parse_schedule("x@1;x y/b@2#7");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].period, W("x y"));
  EXPECT_EQ(s[1].R, W("b"));
  EXPECT_EQ(s[1].size, 2);
  EXPECT_EQ(s[1].N, 7);
  EXPECT_FALSE(s[0].N.has_value());
  EXPECT_THROW(parse_schedule("x"), ParseError);
}
