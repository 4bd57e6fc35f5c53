#include "fg/quadratic.hpp"

#include <sstream>

namespace fg {

LetterId var_x(int i) { return intern("x" + std::to_string(i), LetterKind::Variable); }
LetterId var_y(int i) { return intern("y" + std::to_string(i), LetterKind::Variable); }
LetterId var_z(int j) { return intern("z" + std::to_string(j), LetterKind::Variable); }
LetterId coef_c(int j) { return intern("c" + std::to_string(j), LetterKind::Coefficient); }
LetterId coef_d() { return intern("d", LetterKind::Coefficient); }

LetterId QuadraticEquation::x(int i) const { return var_x(i); }
LetterId QuadraticEquation::y(int i) const { return var_y(i); }
LetterId QuadraticEquation::z(int j) const { return var_z(j); }
LetterId QuadraticEquation::c(int j) const { return coef_c(j); }

namespace {

void validate(Orientation o, int n, int m, bool has_d) {
  if (n < 0 || m < 0) throw InvalidForm("negative parameters");
  if (has_d) {
    if (n + m < 1) throw InvalidForm("empty equation (n=m=0)");
  } else {
    if (m != 0) throw InvalidForm("coefficients c_i require the constant d");
    if (n < 1) throw InvalidForm("empty equation (n=0 without d)");
  }
  (void)o;
}

QuadraticEquation assemble(Orientation o, int n, int m, bool has_d) {
  validate(o, n, m, has_d);
  QuadraticEquation s;
  s.orientation = o;
  s.n = n;
  s.m = m;
  s.has_d = has_d;
  Word acc;
  for (int j = 1; j <= m; ++j) {
    acc = concat_nc(acc, conjugate(Word::gen(coef_c(j)), Word::gen(var_z(j))));
    s.variables.push_back(var_z(j));
  }
  for (int i = 1; i <= n; ++i) {
    if (o == Orientation::Orientable) {
      acc = concat_nc(acc, commutator(Word::gen(var_x(i)), Word::gen(var_y(i))));
      s.variables.push_back(var_x(i));
      s.variables.push_back(var_y(i));
    } else {
      acc = concat_nc(acc, Word::gen(var_x(i), 2));
      s.variables.push_back(var_x(i));
    }
  }
  s.s0 = acc;
  s.rhs = has_d ? Word::gen(coef_d()) : Word();
  return s;
}

}  // namespace

QuadraticEquation build_standard(Orientation o, int n, int m, bool has_d) {
  return assemble(o, n, m, has_d);
}

QuadraticEquation build_with_rhs(Orientation o, int n, int m, const Word& rhs) {
  auto s = assemble(o, n, m, true);
  s.rhs = rhs;
  return s;
}

int kappa(const QuadraticEquation& s) {
  return static_cast<int>(s.variables.size()) + (s.has_d ? 1 : 0);
}

int K(int m, int n) {
  if (m < 0 || n < 0 || (m == 0 && n == 0)) throw InvalidForm("K(0,0) is undefined");
  if (n == 0) return m - 1;
  if (m == 0) return 4 * n - 1;
  return m + 4 * n - 1;
}

RegularityVerdict is_regular(const QuadraticEquation& s, const Homomorphism* witness) {
  if (s.orientation == Orientation::Orientable && s.n == 1 && s.m == 0 && s.has_d)
    return {true, "form [x,y]d"};
  if (witness != nullptr && !check_solution(s, *witness))
    throw WitnessNotASolution("the witness does not solve the equation");
  if (kappa(s) < 4) return {false, "kappa < 4"};
  if (witness == nullptr) return {false, "no witness supplied"};
  std::vector<Word> images;
  for (auto v : s.variables) images.push_back(witness->image(v));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (!commutator(images[i], images[j]).empty())
        return {true, "images of " + letter_name(s.variables[i]) + " and " +
                          letter_name(s.variables[j]) + " do not commute"};
  return {false, "witness images pairwise commute"};
}

bool check_solution(const QuadraticEquation& s, const Homomorphism& beta) {
  for (auto v : s.variables)
    if (!beta.assigns(v)) throw UnassignedVariable(letter_name(v) + " has no image");
  Word lhs = beta.apply(s.s0);
  Word rhs = beta.apply(s.rhs);
  return lhs == rhs;
}

QuadraticEquation parse_equation(const std::string& text) {
  std::string body = text;
  std::string rhs_text;
  auto rp = body.find("rhs=");
  if (rp != std::string::npos) {
    rhs_text = body.substr(rp + 4);
    body = body.substr(0, rp);
  }
  std::istringstream in(body);
  std::string kw, orient;
  in >> kw >> orient;
  if (kw != "quad") throw ParseError("equation must start with 'quad'");
  Orientation o;
  if (orient == "orient")
    o = Orientation::Orientable;
  else if (orient == "nonorient")
    o = Orientation::NonOrientable;
  else
    throw ParseError("orientation must be 'orient' or 'nonorient'");
  int n = -1, m = -1, d = -1;
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("bad clause '" + tok + "'");
    std::string key = tok.substr(0, eq);
    int val;
    try {
      val = std::stoi(tok.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("bad value in '" + tok + "'");
    }
    if (key == "n")
      n = val;
    else if (key == "m")
      m = val;
    else if (key == "d")
      d = val;
    else
      throw ParseError("unknown clause '" + key + "'");
  }
  if (n < 0 || m < 0 || (d != 0 && d != 1)) throw ParseError("need n=, m=, d=0|1");
  if (!rhs_text.empty()) {
    if (d != 1) throw ParseError("rhs= requires d=1");
    return build_with_rhs(o, n, m, parse_word(rhs_text));
  }
  return build_standard(o, n, m, d == 1);
}

std::string to_string(const QuadraticEquation& s) {
  std::string out = "quad ";
  out += s.orientation == Orientation::Orientable ? "orient" : "nonorient";
  out += " n=" + std::to_string(s.n) + " m=" + std::to_string(s.m) +
         " d=" + std::to_string(s.has_d ? 1 : 0);
  if (s.has_d && s.rhs != Word::gen(coef_d())) out += " rhs=" + to_string(s.rhs);
  return out;
}

}  // namespace fg
