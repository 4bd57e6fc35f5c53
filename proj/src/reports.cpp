#include "fg/reports.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "fg/cut.hpp"
#include "fg/quadratic.hpp"

namespace fg {

bool Report::ok() const {
  return std::all_of(items.begin(), items.end(), [](const ReportItem& i) { return i.ok; });
}

const ReportItem* Report::find(const std::string& name) const {
  for (const auto& i : items)
    if (i.name == name) return &i;
  return nullptr;
}

namespace {

using WS = std::set<Word>;

Word X(int i) { return Word::gen(var_x(i)); }
Word Y(int i) { return Word::gen(var_y(i)); }
Word Z(int j) { return Word::gen(var_z(j)); }
Word C(int j) { return Word::gen(coef_c(j)); }
Word I(const Word& w) { return w.inverse(); }
Word cj(int j) { return I(Z(j)) * C(j) * Z(j); }
Word pw(const Word& w, std::int64_t e) { return power(w, e); }

Word prod(std::initializer_list<Word> ws) {
  Word acc;
  for (const auto& w : ws) acc = acc * w;
  return acc;
}

WS inv(const WS& s) {
  WS out;
  for (const auto& w : s) out.insert(w.inverse());
  return out;
}

WS uni(std::initializer_list<WS> parts) {
  WS out;
  for (const auto& p : parts) out.insert(p.begin(), p.end());
  return out;
}

WS pm(const WS& s) { return uni({s, inv(s)}); }
WS sub3(const Word& w) { return subwords(w, 3, false); }
WS subc3(const Word& w) { return subwords(w, 3, true); }
WS words(std::initializer_list<Word> ws) { return WS(ws.begin(), ws.end()); }

std::string brief(const Word& w) {
  if (w.length() <= 48) return "'" + to_string(w) + "'";
  return "len=" + std::to_string(w.length());
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

class Checker {
 public:
  explicit Checker(Report& r, std::string prefix = {}) : r_(r), prefix_(std::move(prefix)) {}

  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    r_.items.push_back({prefix_ + name, ok, detail});
  }

  void word(const std::string& name, const Word& expected, const Word& got) {
    if (expected == got) return check(name, true);
    auto a = expected.letters(), b = got.letters();
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    check(name, false,
          "expected=" + brief(expected) + " got=" + brief(got) + " first_diff=" + std::to_string(i));
  }

  void set(const std::string& name, const WS& expected, const WS& got) {
    WS missing, extra;
    std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(),
                        std::inserter(missing, missing.end()));
    std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                        std::inserter(extra, extra.end()));
    if (missing.empty() && extra.empty()) return check(name, true, "size=" + std::to_string(got.size()));
    std::string d;
    if (!missing.empty()) d += "missing={" + join(sorted_strings(missing)) + "}";
    if (!extra.empty()) d += std::string(d.empty() ? "" : " ") + "extra={" + join(sorted_strings(extra)) + "}";
    check(name, false, d);
  }

 private:
  Report& r_;
  std::string prefix_;
};

BasicSequence seq(int m, int n) { return basic_sequence(build_standard(Orientation::Orientable, n, m, m > 0)); }

Tuple increasing(int len) {
  Tuple p;
  for (int i = 0; i < len; ++i) p.push_back(4 + i);
  return p;
}

void require_large(const Tuple& p) {
  if (!is_large(p, 3)) throw TupleNotLarge("tuple " + to_string(p) + " is not 3-large");
}

std::string params(int m, int n, const Tuple& p) {
  return "m=" + std::to_string(m) + " n=" + std::to_string(n) + " p=" + to_string(p);
}

// ------------------------------------------------------------ closed forms

// A_1 .. A_m of the z-part (A_m only when n != 0), indexed from 1.
std::vector<Word> z_leading_terms(int m, int n, const Tuple& p) {
  auto P = [&](int j) { return p.at(static_cast<std::size_t>(j - 1)); };
  std::vector<Word> A(static_cast<std::size_t>(m + 1));
  if (m >= 2) A[1] = cj(1) * cj(2);
  for (int i = 2; i <= m - 1; ++i)
    A[i] = prod({pw(A[i - 1], -P(i - 1)), cj(i), pw(A[i - 1], P(i - 1)), cj(i + 1)});
  if (n != 0 && m >= 1) {
    if (m == 1)
      A[1] = cj(1) * I(X(1));
    else
      A[m] = prod({pw(A[m - 1], -P(m - 1)), cj(m), pw(A[m - 1], P(m - 1)), I(X(1))});
  }
  return A;
}

// y_1^{phi_{m+3}}.
Word tilde_y1(int m, int n, const Tuple& p) {
  auto P = [&](int j) { return p.at(static_cast<std::size_t>(j - 1)); };
  if (m == 0) {
    Word A2 = pw(X(1), P(1)) * Y(1);
    return prod({pw(pw(A2, P(2)) * X(1), P(3)), pw(X(1), P(1)), Y(1)});
  }
  Word Am = z_leading_terms(m, n, p)[m];
  Word A2 = prod({pw(Am, -P(m)), pw(X(1), P(m + 1)), Y(1)});
  Word inner = prod({pw(X(1), P(m + 1)), Y(1), pw(A2, P(m + 2) - 1), pw(Am, -P(m)), X(1)});
  return prod({pw(Am, -P(m)), pw(inner, P(m + 3)), pw(X(1), P(m + 1)), Y(1)});
}

// ------------------------------------------------------------------ suites

Report power_formulas(const ReportOptions& opt) {
  Report r;
  std::vector<std::pair<int, int>> grid = {{0, 1}, {0, 2}, {1, 1}, {2, 0}, {3, 0}, {2, 2}};
  if (opt.m || opt.n) grid = {{opt.m.value_or(0), opt.n.value_or(1)}};
  r.params = "grid";
  for (auto [m, n] : grid) r.params += " (" + std::to_string(m) + "," + std::to_string(n) + ")";
  r.params += " |p|<=5";
  for (auto [m, n] : grid) {
    BasicSequence G = seq(m, n);
    Checker ck(r, "(" + std::to_string(m) + "," + std::to_string(n) + "):");
    for (int j = 1; j <= G.K(); ++j) {
      // The displayed action of gamma_j^p on the generators it moves.
      auto shown = [&](std::int64_t e) {
        std::map<LetterId, Word> img;
        if (j <= m - 1) {
          Word T = cj(j) * cj(j + 1);
          img[var_z(j)] = Z(j) * pw(T, e);
          img[var_z(j + 1)] = Z(j + 1) * pw(T, e);
        } else if (j == m) {
          Word T = cj(m) * I(X(1));
          img[var_z(m)] = Z(m) * pw(T, e);
          img[var_x(1)] = conjugate(X(1), pw(T, e));
          img[var_y(1)] = pw(T, -e) * Y(1);
        } else {
          int t = j - m, i = (t - 1) / 4 + 1, k = t - 4 * (i - 1);
          if (k == 1 || k == 3) img[var_y(i)] = pw(X(i), e) * Y(i);
          if (k == 2) img[var_x(i)] = pw(Y(i), e) * X(i);
          if (k == 4) {
            Word T = Y(i) * I(X(i + 1));
            img[var_x(i)] = pw(T, -e) * X(i);
            img[var_y(i)] = conjugate(Y(i), pw(T, e));
            img[var_x(i + 1)] = conjugate(X(i + 1), pw(T, e));
            img[var_y(i + 1)] = pw(T, -e) * Y(i + 1);
          }
        }
        return img;
      };
      std::string bad, bad_iter;
      for (std::int64_t e = -5; e <= 5; ++e) {
        if (e == 0) continue;
        auto img = shown(e);
        Homomorphism closed = power(G.gamma(j), e), iter = iterate_power(G.gamma(j), e);
        for (auto g : G.generators) {
          Word want = img.count(g) ? img[g] : Word::gen(g);
          if (bad.empty() && closed.apply(Word::gen(g)) != want)
            bad = "p=" + std::to_string(e) + " " + letter_name(g) + ": expected=" + brief(want) +
                  " got=" + brief(closed.apply(Word::gen(g)));
          if (bad_iter.empty() && iter.apply(Word::gen(g)) != closed.apply(Word::gen(g)))
            bad_iter = "p=" + std::to_string(e) + " " + letter_name(g);
        }
      }
      ck.check("gamma" + std::to_string(j), bad.empty(), bad);
      ck.check("gamma" + std::to_string(j) + ":iterated", bad_iter.empty(), bad_iter);
    }
    bool fixed = true;
    for (const auto& g : G.gammas) fixed = fixed && g.hom(1).apply(G.eq.s0) == G.eq.s0;
    ck.check("S0-fixed", fixed);
  }
  return r;
}

Report closed_form(const ReportOptions& opt) {
  Report r;
  Tuple p = opt.p.empty() ? Tuple{2, 3, 4, 5} : opt.p;
  if (p.size() != 4) throw LengthMismatch("the closed form is stated for L = 4");
  for (auto v : p)
    if (v < 1) throw NonPositiveExponent("exponents must be positive");
  r.params = "p=" + to_string(p);
  Checker ck(r);
  BasicSequence G = demo2_sequence();
  Word a = Word::gen("a"), b = Word::gen("b");
  LetterId x = intern("x"), y = intern("y");
  Homomorphism beta;
  beta.set(x, a);
  beta.set(y, b);
  Homomorphism psi4 = phi(G, p).fwd.then(beta);
  Word period = prod({pw(pw(pw(a, p[0]) * b, p[1]) * a, p[2]), pw(a, p[0]), b});
  Word xs = pw(period, p[3]) * pw(pw(a, p[0]) * b, p[1]) * a;
  ck.word("x^psi4", xs, psi4.apply(Word::gen(x)));
  ck.word("y^psi4", period, psi4.apply(Word::gen(y)));
  Homomorphism psi3 = phi(G, Tuple(p.begin(), p.begin() + 3)).fwd.then(beta);
  ck.word("period=y^psi3", period, psi3.apply(Word::gen(y)));
  Homomorphism sol;
  sol.set(x, psi4.apply(Word::gen(x)));
  sol.set(y, psi4.apply(Word::gen(y)));
  ck.check("solution", check_solution(G.eq, sol));
  return r;
}

Report z_forms(const ReportOptions& opt) {
  Report r;
  int m = opt.m.value_or(3), n = opt.n.value_or(1);
  if (m < 2 || n < 0) throw InvalidForm("the z-forms need m >= 2");
  BasicSequence G = seq(m, n);
  Tuple p = opt.p.empty() ? increasing(G.K()) : opt.p;
  if (static_cast<int>(p.size()) != G.K()) throw LengthMismatch("p must have length K");
  require_large(p);
  r.params = params(m, n, p);
  auto P = [&](int j) { return p.at(static_cast<std::size_t>(j - 1)); };
  Checker ck(r);
  auto A = z_leading_terms(m, n, p);
  auto lt = leading_terms(G, p);
  auto ph = phi(G, p).fwd;
  int top = n != 0 ? m : m - 1;
  for (int i = 1; i <= top; ++i) ck.word("A" + std::to_string(i), A[i], lt[i - 1]);

  std::vector<WS> SC(static_cast<std::size_t>(m + 1));
  SC[1] = words({I(Z(1)) * C(1) * Z(1), C(1) * Z(1) * I(Z(2)), Z(1) * I(Z(2)) * C(2),
                 I(Z(2)) * C(2) * Z(2), C(2) * Z(2) * I(Z(1)), Z(2) * I(Z(1)) * C(1)});
  for (int i = 2; i <= m - 1; ++i)
    SC[i] = uni({pm(subc3(A[i - 1])),
                 words({C(i - 1) * Z(i - 1) * I(Z(i)), Z(i - 1) * I(Z(i)) * C(i), I(Z(i)) * C(i) * Z(i),
                        C(i) * Z(i) * I(Z(i - 1)), Z(i) * I(Z(i - 1)) * I(C(i - 1)),
                        C(i) * Z(i) * I(Z(i + 1)), Z(i) * I(Z(i + 1)) * C(i + 1),
                        I(Z(i + 1)) * C(i + 1) * Z(i + 1), C(i + 1) * Z(i + 1) * I(Z(i)),
                        Z(i + 1) * I(Z(i)) * I(C(i))})});
  if (n != 0)
    SC[m] = uni({pm(subc3(A[m - 1])),
                 words({C(m - 1) * Z(m - 1) * I(Z(m)), Z(m - 1) * I(Z(m)) * C(m),
                        I(Z(m - 1)) * C(m) * Z(m), C(m) * Z(m) * I(Z(m - 1)), C(m) * Z(m) * I(X(1)),
                        Z(m) * I(X(1)) * I(Z(m)), I(X(1)) * I(Z(m)) * I(C(m))})});
  for (int i = 1; i <= top; ++i)
    ck.set("SubC3(A" + std::to_string(i) + ")", SC[i], subc3(lt[i - 1]));

  auto zname = [](int i) { return "z" + std::to_string(i) + "^phiK"; };
  std::vector<Word> zf(static_cast<std::size_t>(m + 1));
  zf[1] = prod({C(1), Z(1), cj(2), pw(A[1], P(1) - 1)});
  for (int i = 2; i <= m - 1; ++i)
    zf[i] = prod({C(i), Z(i), pw(A[i - 1], P(i - 1)), cj(i + 1), pw(A[i], P(i) - 1)});
  if (n != 0)
    zf[m] = prod({C(m), Z(m), pw(A[m - 1], P(m - 1)), I(X(1)), pw(A[m], P(m) - 1)});
  else
    zf[m] = Z(m) * pw(A[m - 1], P(m - 1));
  for (int i = 1; i <= m; ++i) ck.word(zname(i), zf[i], ph.image(var_z(i)));

  std::vector<WS> S3(static_cast<std::size_t>(m + 1));
  S3[1] = subc3(A[1]);
  for (int i = 2; i <= m - 1; ++i)
    S3[i] = uni({subc3(A[i - 1]), subc3(A[i]),
                 words({C(i) * Z(i) * I(Z(i - 1)), Z(i) * I(Z(i - 1)) * I(C(i - 1)),
                        C(i) * Z(i) * I(Z(i + 1)), Z(i) * I(Z(i + 1)) * C(i + 1),
                        I(Z(i + 1)) * C(i + 1) * Z(i + 1), C(i + 1) * Z(i + 1) * I(Z(i)),
                        Z(i + 1) * I(Z(i)) * I(C(i))})});
  S3[m] = uni({subc3(A[m - 1]), words({C(m) * Z(m) * I(Z(m - 1)), Z(m) * I(Z(m - 1)) * I(C(m - 1))})});
  if (n != 0)
    S3[m] = uni({S3[m], words({C(m) * Z(m) * I(X(1)), Z(m) * I(X(1)) * I(Z(m)),
                               I(X(1)) * I(Z(m)) * I(C(m))})});
  for (int i = 1; i <= m; ++i) ck.set("Sub3(" + zname(i) + ")", S3[i], sub3(ph.image(var_z(i))));
  return r;
}

Report genus_forms(const ReportOptions& opt) {
  Report r;
  int n = opt.n.value_or(2);
  if (opt.m.value_or(0) != 0 || n < 1) throw InvalidForm("this suite is stated for m = 0, n >= 1");
  BasicSequence G = seq(0, n);
  Tuple p = opt.p.empty() ? (n == 1 ? Tuple{4, 5, 6} : Tuple{4, 5, 6, 7}) : opt.p;
  std::size_t need = n == 1 ? 3 : 4;
  if (p.size() < need || static_cast<int>(p.size()) > G.K())
    throw LengthMismatch("p must have between " + std::to_string(need) + " and K entries");
  require_large(p);
  r.params = params(0, n, p);
  auto P = [&](int j) { return p.at(static_cast<std::size_t>(j - 1)); };
  Checker ck(r);
  auto lt = leading_terms(G, p);
  auto ph = phi_prefixes(G, p);
  auto xi = [&](int j) { return ph[static_cast<std::size_t>(j)].image(var_x(1)); };
  auto yi = [&](int j) { return ph[static_cast<std::size_t>(j)].image(var_y(1)); };

  Word A1 = X(1), A2 = pw(X(1), P(1)) * Y(1);
  Word A3 = prod({pw(A2, P(2) - 1), pw(X(1), P(1) + 1), Y(1)});
  WS SC2 = words({pw(X(1), 3), pw(X(1), 2) * Y(1), X(1) * Y(1) * X(1), Y(1) * pw(X(1), 2)});
  ck.word("A1", A1, lt[0]);
  ck.word("A2", A2, lt[1]);
  ck.set("SubC3(A2)", SC2, subc3(lt[1]));
  ck.word("A3", A3, lt[2]);
  ck.set("SubC3(A3)", SC2, subc3(lt[2]));
  ck.word("x1^phi1", X(1), xi(1));
  ck.word("y1^phi1", A2, yi(1));
  ck.word("x1^phi2", pw(A2, P(2)) * X(1), xi(2));
  ck.word("x1^phi3", pw(A2, P(2)) * X(1), xi(3));
  ck.word("y1^phi2", A2, yi(2));
  ck.word("y1^phi3", prod({pw(pw(A2, P(2)) * X(1), P(3)), pw(X(1), P(1)), Y(1)}), yi(3));
  if (n == 1) {
    ck.set("Sub3(x1^phiK)", SC2, sub3(xi(3)));
    ck.set("Sub3(y1^phiK)", SC2, sub3(yi(3)));
    return r;
  }
  Word A4 = prod({pw(pw(A2, P(2)) * X(1), P(3)), A2, I(X(2))});
  ck.word("A4", A4, lt[3]);
  WS SC4 = uni({SC2, words({X(1) * Y(1) * I(X(2)), Y(1) * I(X(2)) * X(1), I(X(2)) * pw(X(1), 2)})});
  ck.set("SubC3(A4)", SC4, subc3(lt[3]));
  Word x4 = prod({pw(A4, -(P(4) - 1)), X(2), I(A2), pw(I(X(1)) * pw(A2, -P(2)), P(3) - 1)});
  ck.word("x1^phi4", x4, xi(4));
  ck.set("Sub3(x1^phiK)",
         uni({inv(SC4), inv(SC2),
              words({pw(X(1), -2) * X(2), I(X(1)) * X(2) * I(Y(1)), X(2) * I(Y(1)) * I(X(1)), pw(X(1), -3),
                     pw(X(1), -2) * I(Y(1)), I(X(1)) * I(Y(1)) * I(X(1))})}),
         sub3(xi(4)));
  Word y4 = prod({pw(A4, -(P(4) - 1)), X(2), pw(A4, P(4))});
  ck.word("y1^phi4", y4, yi(4));
  ck.set("Sub3(y1^phiK)",
         uni({pm(SC4), words({pw(X(1), -2) * X(2), I(X(1)) * X(2) * X(1), X(2) * pw(X(1), 2)})}),
         sub3(yi(4)));
  return r;
}

Report mixed_forms(const ReportOptions& opt) {
  Report r;
  int m = opt.m.value_or(2), n = opt.n.value_or(2);
  if (m < 1 || n < 1) throw InvalidForm("this suite is stated for m, n >= 1");
  BasicSequence G = seq(m, n);
  int need = std::min(G.K(), m + 4);
  Tuple p = opt.p.empty() ? increasing(need) : opt.p;
  if (static_cast<int>(p.size()) < need || static_cast<int>(p.size()) > G.K())
    throw LengthMismatch("p must have between " + std::to_string(need) + " and K entries");
  require_large(p);
  r.params = params(m, n, p);
  auto P = [&](int j) { return p.at(static_cast<std::size_t>(j - 1)); };
  Checker ck(r);
  auto lt = leading_terms(G, p);
  auto ph = phi_prefixes(G, p);
  auto xi = [&](int j) { return ph[static_cast<std::size_t>(j)].image(var_x(1)); };
  auto yi = [&](int j) { return ph[static_cast<std::size_t>(j)].image(var_y(1)); };
  auto A = [&](int j) { return lt[static_cast<std::size_t>(j - 1)]; };
  auto nm = [&](const std::string& base, int off) {
    return base + std::to_string(m + off);
  };

  Word Am = z_leading_terms(m, n, p)[m];
  Word Amp = pw(Am, P(m)), Amn = pw(Am, -P(m));
  Word A2 = prod({Amn, pw(X(1), P(m + 1)), Y(1)});
  Word A3 = prod({pw(A2, P(m + 2) - 1), Amn, pw(X(1), P(m + 1) + 1), Y(1)});
  WS SC2 = uni({inv(subc3(Am)), words({C(m) * Z(m) * X(1), Z(m) * pw(X(1), 2), pw(X(1), 3),
                                       pw(X(1), 2) * Y(1), X(1) * Y(1) * X(1), Y(1) * X(1) * I(Z(m))})});
  ck.word(nm("A", 1), X(1), A(m + 1));
  ck.word(nm("A", 2), A2, A(m + 2));
  ck.set("SubC3(" + nm("A", 2) + ")", SC2, subc3(A(m + 2)));
  ck.word(nm("A", 3), A3, A(m + 3));
  ck.set("SubC3(" + nm("A", 3) + ")", SC2, subc3(A(m + 3)));
  ck.word("x1^phi" + std::to_string(m), prod({Amn, X(1), Amp}), xi(m));
  ck.word("y1^phi" + std::to_string(m), Amn * Y(1), yi(m));
  ck.word(nm("y1^phi", 1), A2, yi(m + 1));
  Word x2 = prod({pw(A2, P(m + 2)), Amn, X(1), Amp});
  ck.word(nm("x1^phi", 2), x2, xi(m + 2));
  Word inner = prod({pw(X(1), P(m + 1)), Y(1), pw(A2, P(m + 2) - 1), Amn, X(1)});
  Word y3 = prod({Amn, pw(inner, P(m + 3)), pw(X(1), P(m + 1)), Y(1)});
  ck.word(nm("y1^phi", 3), y3, yi(m + 3));
  if (n == 1) {
    ck.set("Sub3(x1^phiK)",
           uni({SC2, subc3(Am), words({Z(m) * X(1) * I(Z(m)), X(1) * I(Z(m)) * I(C(m))})}),
           sub3(xi(m + 3)));
    return r;
  }
  Word A4 = prod({Amn, pw(inner, P(m + 3)), pw(X(1), P(m + 1)), Y(1), I(X(2))});
  ck.word(nm("A", 4), A4, A(m + 4));
  WS SC4 = uni({SC2, words({X(1) * Y(1) * I(X(2)), Y(1) * I(X(2)) * X(1), I(X(2)) * X(1) * I(Z(m))})});
  ck.set("SubC3(" + nm("A", 4) + ")", SC4, subc3(A(m + 4)));
  Word loop = prod({I(X(1)), Amp, pw(A2, -P(m + 2)), I(Y(1)), pw(X(1), -P(m + 1))});
  Word x4 = prod({pw(A4, -P(m + 4) + 1), X(2), I(Y(1)), pw(X(1), -P(m + 1)), pw(loop, P(m + 3) - 1), Amp});
  ck.word(nm("x1^phi", 4), x4, xi(m + 4));
  ck.set("Sub3(x1^phiK)",
         uni({inv(SC2), words({Z(m) * I(X(1)) * X(2), I(X(1)) * X(2) * I(Y(1)), X(2) * I(Y(1)) * I(X(1))})}),
         sub3(xi(m + 4)));
  Word y4 = prod({pw(A4, -(P(m + 4) - 1)), X(2), pw(A4, P(m + 4))});
  ck.word(nm("y1^phi", 4), y4, yi(m + 4));
  ck.set("Sub3(y1^phiK)",
         uni({pm(SC4), words({Z(m) * I(X(1)) * X(2), I(X(1)) * X(2) * X(1), X(2) * X(1) * I(Z(m))})}),
         sub3(yi(m + 4)));
  return r;
}

Report genus_chain(const ReportOptions& opt) {
  Report r;
  int m = opt.m.value_or(0), n = opt.n.value_or(3);
  if (m < 0 || n < 2) throw InvalidForm("this suite needs n >= 2");
  BasicSequence G = seq(m, n);
  Tuple p = opt.p;
  if (p.empty()) p.assign(static_cast<std::size_t>(G.K()), 4);
  if (static_cast<int>(p.size()) < m + 7 || static_cast<int>(p.size()) > G.K())
    throw LengthMismatch("p must have between m+7 and K entries");
  require_large(p);
  r.params = params(m, n, p);
  const int L = static_cast<int>(p.size());
  auto P = [&](int j) { return p.at(static_cast<std::size_t>(j - 1)); };
  Checker ck(r);
  auto lt = leading_terms(G, p);
  auto ph = phi_prefixes(G, p);
  auto img = [&](int j, LetterId g) { return ph[static_cast<std::size_t>(j)].image(g); };
  auto A = [&](int j) { return lt[static_cast<std::size_t>(j - 1)]; };
  Word y0 = m == 0 ? I(X(1)) : Z(m);
  auto y = [&](int k) { return k == 0 ? y0 : Y(k); };
  auto s = [](int k) { return std::to_string(k); };

  // (1): which gammas move x_i and y_i.
  for (int i = 1; i <= n; ++i) {
    std::set<int> mx = {m + 4 * (i - 1), m + 4 * i - 2, m + 4 * i};
    std::set<int> my = {m + 4 * (i - 1), m + 4 * i - 3, m + 4 * i - 1, m + 4 * i};
    std::string bad;
    for (int j = 1; j <= G.K(); ++j) {
      auto h = G.gamma(j).hom(1);
      bool fx = h.apply(X(i)) == X(i), fy = h.apply(Y(i)) == Y(i);
      if (fx == static_cast<bool>(mx.count(j))) bad += " x" + s(i) + "/gamma" + s(j);
      if (fy == static_cast<bool>(my.count(j))) bad += " y" + s(i) + "/gamma" + s(j);
    }
    ck.check("fixers:" + s(i), bad.empty(), bad);
  }

  Word ty = tilde_y1(m, n, p);  // expected tilde y_{i-1}
  for (int i = 1; i <= n; ++i) {
    int b = m + 4 * i;  // m + 4i
    if (b - 1 > L) break;
    std::string I_ = s(i);
    // (2)
    Word got_ty = img(b - 1, var_y(i));
    ck.check("tilde_y" + I_ + ":ends",
             starts_with(got_ty, X(i) * I(y(i - 1))) && ends_with(got_ty, X(i) * Y(i)),
             "len=" + std::to_string(got_ty.length()));
    if (i == 1) {
      ck.word("tilde_y1", ty, got_ty);
      continue;
    }
    auto q = [&](int j) { return P(m + 4 * (i - 1) + j); };
    auto nmA = [&](int off) { return "A" + s(b + off); };
    // (3)
    Word A4 = ty * I(X(i));
    ck.word(nmA(-4), A4, A(b - 4));
    ck.set("SubC3(" + nmA(-4) + ")",
           uni({sub3(ty), words({X(i - 1) * y(i - 1) * I(X(i)), y(i - 1) * I(X(i)) * X(i - 1),
                                 I(X(i)) * X(i - 1) * I(y(i - 2))})}),
           subc3(A(b - 4)));
    ck.word(nmA(-3), X(i), A(b - 3));
    Word A2 = prod({pw(A4, -q(0)), pw(X(i), q(1)), Y(i)});
    ck.word(nmA(-2), A2, A(b - 2));
    ck.set("SubC3(" + nmA(-2) + ")",
           uni({subc3(A4), words({y(i - 2) * I(X(i - 1)) * X(i), I(X(i - 1)) * pw(X(i), 2),
                                  pw(X(i), 2) * Y(i), X(i) * Y(i) * X(i), Y(i) * X(i) * I(y(i - 1)),
                                  pw(X(i), 3)})}),
           subc3(A(b - 2)));
    Word A1 = prod({pw(A2, q(2) - 1), pw(A4, -q(0)), pw(X(i), q(1) + 1), Y(i)});
    ck.word(nmA(-1), A1, A(b - 1));
    ck.set("SubC3(" + nmA(-1) + ")", subc3(A2), subc3(A(b - 1)));
    // (4)
    auto nx = [&](int off) { return "x" + I_ + "^phi" + s(b + off); };
    auto ny = [&](int off) { return "y" + I_ + "^phi" + s(b + off); };
    Word x4 = prod({pw(A4, -q(0)), X(i), pw(A4, q(0))});
    ck.word(nx(-4), x4, img(b - 4, var_x(i)));
    ck.word(ny(-4), pw(A4, -q(0)) * Y(i), img(b - 4, var_y(i)));
    ck.word(nx(-3), x4, img(b - 3, var_x(i)));
    Word y3 = prod({pw(A4, -q(0)), pw(X(i), q(1)), Y(i)});
    ck.word(ny(-3), y3, img(b - 3, var_y(i)));
    Word x2 = prod({pw(A2, q(2)), pw(A4, -q(0)), X(i), pw(A4, q(0))});
    ck.word(nx(-2), x2, img(b - 2, var_x(i)));
    ck.word(ny(-2), y3, img(b - 2, var_y(i)));
    ck.word(nx(-1), x2, img(b - 1, var_x(i)));
    Word inner = prod({pw(X(i), q(1)), Y(i), pw(A2, q(2) - 1), pw(A4, -q(0)), X(i)});
    Word ty_i = prod({pw(A4, -q(0)), pw(inner, q(3)), pw(X(i), q(1)), Y(i)});
    ck.word(ny(-1), ty_i, img(b - 1, var_y(i)));
    ck.set("Sub3(tilde_y" + I_ + ")",
           uni({subc3(A2), inv(subc3(A4)),
                words({y(i - 2) * I(X(i - 1)) * X(i), I(X(i - 1)) * pw(X(i), 2), pw(X(i), 3),
                       X(i) * Y(i) * X(i), Y(i) * X(i) * I(y(i - 1)), pw(X(i), 2) * Y(i)})}),
           sub3(img(b - 1, var_y(i))));
    if (i == n) {
      ck.set("Sub3(x" + I_ + "^phiK)",
             uni({subc3(A2), pm(subc3(A4)),
                  words({y(i - 2) * I(X(i - 1)) * X(i), I(X(i - 1)) * X(i) * X(i - 1),
                         X(i) * X(i - 1) * I(y(i - 2))})}),
             sub3(img(b - 1, var_x(i))));
    } else if (b <= L) {
      Word A0 = ty_i * I(X(i + 1));
      Word loop = prod({I(X(i)), pw(A4, q(0)), pw(A2, -q(2) + 1), I(Y(i)), pw(X(i), -q(1))});
      Word x0 = prod({pw(A0, -q(4) + 1), X(i + 1), I(Y(i)), pw(X(i), -q(1)), pw(loop, q(3) - 1), pw(A4, q(0))});
      ck.word(nx(0), x0, img(b, var_x(i)));
      ck.set("Sub3(x" + I_ + "^phiK)",
             uni({inv(subc3(A0)), inv(subc3(A2)), subc3(A4),
                  words({y(i - 1) * I(X(i)) * X(i + 1), I(X(i)) * X(i + 1) * I(Y(i)),
                         X(i + 1) * I(Y(i)) * I(X(i)), I(Y(i)) * pw(X(i), -2), pw(X(i), -3),
                         pw(X(i), -2) * X(i - 1), I(X(i)) * X(i - 1) * I(y(i - 2)),
                         y(i - 1) * I(X(i)) * X(i - 1), y(i - 1) * I(X(i)) * I(Y(i)),
                         I(X(i)) * I(Y(i)) * I(X(i))})}),
             sub3(img(b, var_x(i))));
      Word y0w = prod({pw(A0, -q(4) + 1), X(i + 1), ty_i, I(X(i + 1)), pw(A0, q(4) - 1)});
      ck.word(ny(0), y0w, img(b, var_y(i)));
      ck.set("Sub3(y" + I_ + "^phiK)",
             uni({pm(subc3(A0)), sub3(ty_i),
                  words({y(i - 1) * I(X(i)) * X(i + 1), I(X(i)) * X(i + 1) * X(i),
                         X(i + 1) * X(i) * I(y(i - 1)), X(i) * Y(i) * I(X(i + 1)),
                         Y(i) * I(X(i + 1)) * X(i), I(X(i + 1)) * X(i) * I(y(i - 1))})}),
             sub3(img(b, var_y(i))));
    }
    ty = ty_i;
  }
  return r;
}

// The catalog rows, each under its own side conditions.
std::pair<WS, WS> catalogs(int m, int n) {
  WS s2, s3;
  for (int j = 1; j <= m; ++j) {
    s2.insert({C(j) * Z(j), I(Z(j)) * C(j)});
    s3.insert(I(Z(j)) * C(j) * Z(j));
  }
  for (int j = 1; j <= m - 1; ++j) {
    s2.insert(Z(j) * I(Z(j + 1)));
    s3.insert({C(j) * Z(j) * I(Z(j + 1)), Z(j) * I(Z(j + 1)) * I(C(j + 1)), Z(j) * I(Z(j + 1)) * C(j + 1)});
  }
  if (m != 0 && n != 0) {
    s2.insert({Z(m) * I(X(1)), Z(m) * X(1)});
    s3.insert({C(m) * Z(m) * I(X(1)), C(m) * Z(m) * X(1), Z(m) * I(X(1)) * I(Z(m)), Z(m) * pw(X(1), 2),
               Z(m) * I(X(1)) * I(Y(1))});
  }
  for (int i = 1; i <= n; ++i) {
    s2.insert({pw(X(i), 2), X(i) * Y(i), Y(i) * X(i)});
    s3.insert({pw(X(i), 3), pw(X(i), 2) * Y(i), X(i) * Y(i) * X(i)});
  }
  for (int i = 1; i <= n - 1; ++i) {
    s2.insert({X(i + 1) * I(Y(i)), I(X(i)) * X(i + 1), X(i + 1) * X(i)});
    s3.insert({I(X(i)) * X(i + 1) * X(i), Y(i) * I(X(i + 1)) * X(i), X(i) * Y(i) * I(X(i + 1))});
  }
  if (m == 0 && n == 1) s3.insert(Y(1) * pw(X(1), 2));
  if (m == 0 && n >= 2) s3.insert({I(X(2)) * pw(X(1), 2), X(2) * pw(X(1), 2)});
  if (m == 1 && n != 0) s3.insert(I(C(m)) * Z(m) * X(1));
  if (m != 0 && n >= 2) s3.insert({Z(m) * I(X(1)) * X(2), Z(m) * I(X(1)) * I(X(2))});
  if (m >= 2) s3.insert(I(C(1)) * Z(1) * I(Z(2)));
  for (int i = 2; i <= n; ++i) s3.insert({I(X(i - 1)) * pw(X(i), 2), Y(i) * X(i) * I(Y(i - 1))});
  for (int i = 3; i <= n; ++i)
    s3.insert({Y(i - 2) * I(X(i - 1)) * I(X(i)), Y(i - 2) * I(X(i - 1)) * X(i)});
  return {pm(s2), pm(s3)};
}

Report catalog_table(const ReportOptions& opt) {
  Report r;
  struct Case {
    int m, n;
    Tuple p;
  };
  std::vector<Case> cases;
  auto fours = [](int K) { return Tuple(static_cast<std::size_t>(K), 4); };
  if (opt.m || opt.n) {
    int m = opt.m.value_or(3), n = opt.n.value_or(0);
    Tuple p = opt.p.empty() ? fours(K(m, n)) : opt.p;
    cases.push_back({m, n, p});
  } else {
    for (auto [m, n] : std::vector<std::pair<int, int>>{
             {3, 0}, {4, 0}, {5, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {2, 1}, {3, 1}, {1, 2}, {2, 2}})
      cases.push_back({m, n, fours(K(m, n))});
    for (auto [m, n] : std::vector<std::pair<int, int>>{{3, 0}, {4, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 1}})
      cases.push_back({m, n, increasing(K(m, n))});
  }
  r.params = std::to_string(cases.size()) + " cases";
  for (const auto& cs : cases) {
    BasicSequence G = seq(cs.m, cs.n);
    if (G.K() == 0) throw InvalidForm("empty basic sequence");
    if (static_cast<int>(cs.p.size()) != G.K()) throw LengthMismatch("p must have length K");
    require_large(cs.p);
    Checker ck(r, "(" + std::to_string(cs.m) + "," + std::to_string(cs.n) + ")" + to_string(cs.p) + ":");
    Homomorphism f = phi(G, cs.p).fwd;
    WS got2, got3;
    std::vector<Word> imgs;
    for (auto g : G.generators) {
      imgs.push_back(f.image(g));
      imgs.push_back(f.image(g).inverse());
    }
    for (const auto& w : imgs) {
      auto a = subwords(w, 2, false), b = subwords(w, 3, false);
      got2.insert(a.begin(), a.end());
      got3.insert(b.begin(), b.end());
    }
    auto [want2, want3] = catalogs(cs.m, cs.n);
    ck.set("Sub2", want2, got2);
    ck.set("Sub3", want3, got3);
    // z_j^-1 c_j and c_j z_j only inside (z_j^-1 c_j z_j)^{+-1}.
    std::string bad;
    for (std::size_t t = 0; t < imgs.size() && bad.empty(); ++t) {
      auto v = imgs[t].letters();
      for (std::size_t k = 0; k + 1 < v.size() && bad.empty(); ++k) {
        for (int j = 1; j <= cs.m; ++j) {
          SignedLetter z = signed_letter(var_z(j), 1), c = signed_letter(coef_c(j), 1);
          bool zc = v[k] == -z && (v[k + 1] == c || v[k + 1] == -c);
          bool cz_ = (v[k] == c || v[k] == -c) && v[k + 1] == z;
          if ((zc && !(k + 2 < v.size() && v[k + 2] == z)) || (cz_ && !(k >= 1 && v[k - 1] == -z)))
            bad = to_string(imgs[t].slice(static_cast<std::int64_t>(k), 2)) + " at " + std::to_string(k) +
                  " of " + letter_name(G.generators[t / 2]) + (t % 2 ? "^-phiK" : "^phiK");
        }
      }
    }
    ck.check("triples", bad.empty(), bad);
    // (3): images of the 2-letter subwords stay inside the catalogs; u^phiK is
    // only defined for variables, so words with a coefficient letter are skipped.
    std::string bad2, bad3;
    for (const auto& uv : got2) {
      if (uv.has_kind(LetterKind::Coefficient)) continue;
      Word w = f.apply(uv);
      for (const auto& s : subwords(w, 2, false))
        if (!got2.count(s) && bad2.empty()) bad2 = to_string(uv) + " -> " + to_string(s);
      for (const auto& s : subwords(w, 3, false))
        if (!got3.count(s) && bad3.empty()) bad3 = to_string(uv) + " -> " + to_string(s);
    }
    ck.check("images-Sub2", bad2.empty(), bad2);
    ck.check("images-Sub3", bad3.empty(), bad3);
  }
  return r;
}

Report cut_claims(const ReportOptions& opt) {
  Report r;
  r.params = "seed=" + std::to_string(opt.seed) + " instances=" + std::to_string(opt.instances);
  Checker ck(r);
  bool zero = false, stab = false;
  for (int k = 0; k < opt.instances; ++k) {
    SyntheticOptions so;
    std::string sched, label;
    switch (k % 4) {
      case 0:
        so.size = 1;
        sched = "x@1;y@1";
        label = "random";
        break;
      case 1:
        so.size = 2;
        so.twisted = true;
        sched = "x@2";
        label = "random-twisted";
        break;
      case 2:
        so.shape = SyntheticOptions::Shape::Collapse;
        sched = "x@1";
        label = "collapse";
        break;
      default:
        so.shape = SyntheticOptions::Shape::Peel;
        sched = "x@1;y@1;x y@1;x y^-1@1";
        label = "peel";
        break;
    }
    so.intervals = 1 + k % 3;
    std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(k);
    std::string name = "inst" + std::to_string(k) + ":" + label;
    try {
      CutEquation pi = synthetic_cut_equation(seed, so);
      Trace tr = iterate(pi, parse_schedule(sched));
      std::string comps;
      for (const auto& e : tr.entries) comps += (comps.empty() ? "" : " ") + ("[" + to_string(e.comp) + "]");
      std::string d = "S0=" + std::to_string(tr.entries.front().m.S) + " comps=" + comps;
      if (tr.reached_zero) d += " zero";
      if (tr.stabilized_at >= 0) d += " stabilized@" + std::to_string(tr.stabilized_at);
      if (!tr.violations.empty()) d += " violation=\"" + tr.violations.front() + "\"";
      zero = zero || tr.reached_zero;
      stab = stab || tr.stabilized_at >= 0;
      ck.check(name, tr.violations.empty(), d);
    } catch (const Error& e) {
      ck.check(name, false, e.code() + ": " + e.what());
    }
  }
  ck.check("reaches-zero", zero);
  ck.check("stabilization", stab);
  return r;
}

}  // namespace

const std::vector<std::string>& report_suites() {
  static const std::vector<std::string> s = {"lemma-5.1", "lemma-5.3", "lemma-5.4", "lemma-5.5",
                                             "lemma-5.6", "lemma-5.7", "claims-8",  "eq-sec1"};
  return s;
}

Report report_suite(const std::string& name, const ReportOptions& opt) {
  static const std::map<std::string, std::function<Report(const ReportOptions&)>> table = {
      {"lemma-5.1", power_formulas}, {"lemma-5.3", z_forms}, {"lemma-5.4", genus_forms},
      {"lemma-5.5", mixed_forms}, {"lemma-5.6", genus_chain}, {"lemma-5.7", catalog_table},
      {"claims-8", cut_claims},   {"eq-sec1", closed_form}};
  auto it = table.find(name);
  if (it == table.end()) throw InvalidForm("unknown report suite '" + name + "'");
  Report r = it->second(opt);
  r.suite = name;
  return r;
}

std::string to_string(const Report& r, bool structured) {
  std::size_t passed = 0;
  for (const auto& i : r.items) passed += i.ok ? 1 : 0;
  std::string out;
  if (structured) {
    out += "suite=" + r.suite + "\nparams=" + r.params + "\n";
    for (const auto& i : r.items) {
      out += "item=" + i.name + " status=" + (i.ok ? "PASS" : "FAIL");
      if (!i.detail.empty()) out += " detail=" + i.detail;
      out += "\n";
    }
    out += std::string("result=") + (r.ok() ? "PASS" : "FAIL") + " passed=" + std::to_string(passed) +
           " total=" + std::to_string(r.items.size()) + "\n";
    return out;
  }
  out += "suite " + r.suite + " " + r.params + "\n";
  for (const auto& i : r.items) {
    out += std::string(i.ok ? "PASS " : "FAIL ") + i.name;
    if (!i.detail.empty()) out += " " + i.detail;
    out += "\n";
  }
  out += std::string(r.ok() ? "PASS" : "FAIL") + " " + std::to_string(passed) + "/" +
         std::to_string(r.items.size()) + "\n";
  return out;
}

}  // namespace fg
