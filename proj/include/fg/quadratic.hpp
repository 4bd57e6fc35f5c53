#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fg/word.hpp"

namespace fg {

enum class Orientation { Orientable, NonOrientable };

struct QuadraticEquation {
  Orientation orientation = Orientation::Orientable;
  int n = 0;
  int m = 0;
  bool has_d = false;
  Word s0;
  Word rhs;  // the equation reads s0 = rhs
  std::vector<LetterId> variables;

  LetterId x(int i) const;
  LetterId y(int i) const;
  LetterId z(int j) const;
  LetterId c(int j) const;
};

LetterId var_x(int i);
LetterId var_y(int i);
LetterId var_z(int j);
LetterId coef_c(int j);
LetterId coef_d();

QuadraticEquation build_standard(Orientation o, int n, int m, bool has_d);
// Same as build_standard but with the right-hand side given explicitly.
QuadraticEquation build_with_rhs(Orientation o, int n, int m, const Word& rhs);

int kappa(const QuadraticEquation& s);
int K(int m, int n);

struct RegularityVerdict {
  bool regular;
  std::string reason;
};
RegularityVerdict is_regular(const QuadraticEquation& s, const Homomorphism* witness);

bool check_solution(const QuadraticEquation& s, const Homomorphism& beta);

// `quad orient n=1 m=0 d=1 [rhs=<word>]`
QuadraticEquation parse_equation(const std::string& text);
std::string to_string(const QuadraticEquation& s);

}  // namespace fg
