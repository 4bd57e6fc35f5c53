#include "fg/families.hpp"

#include <algorithm>

namespace fg {

Word merzljakov_word(const std::vector<std::int64_t>& exps) {
  LetterId a = intern("a"), b = intern("b");
  WordBuilder w;
  w.push(b, 1);
  for (auto e : exps) {
    if (e <= 0) throw NonPositiveExponent("exponents must be positive, got " + std::to_string(e));
    w.push(a, e);
    w.push(b, 1);
  }
  return std::move(w).build();
}

std::vector<Word> merzljakov_words(const std::vector<std::vector<std::int64_t>>& specs) {
  std::vector<Word> out;
  for (const auto& s : specs) out.push_back(merzljakov_word(s));
  return out;
}

Homomorphism SolutionFamily::member(const Tuple& p) const {
  if (static_cast<int>(p.size()) != L)
    throw LengthMismatch("tuple has " + std::to_string(p.size()) + " entries, expected " +
                         std::to_string(L));
  Homomorphism f = phi(G, p).fwd;
  Homomorphism psi = base;
  for (auto g : G.generators) psi.set(g, base.apply(f.image(g)));
  return psi;
}

bool SolutionFamily::verify(const Tuple& p) const { return check_solution(G.eq, member(p)); }

std::vector<bool> SolutionFamily::separates(const Tuple& p,
                                            const std::vector<std::pair<Word, Word>>& pairs) const {
  Homomorphism psi = member(p);
  std::vector<bool> out;
  for (const auto& [u, v] : pairs) out.push_back(!(psi.apply(u) == psi.apply(v)));
  return out;
}

SolutionFamily family(const BasicSequence& G, int L, std::vector<Tuple> P, const Homomorphism& base) {
  if (!check_solution(G.eq, base)) throw BaseNotASolution("the base map does not solve the equation");
  for (const auto& p : P)
    if (static_cast<int>(p.size()) != L)
      throw LengthMismatch("tuple " + to_string(p) + " does not have length " + std::to_string(L));
  return SolutionFamily{G, base, L, std::move(P)};
}

namespace {

std::int64_t pick(const std::vector<std::int64_t>& v, int i, std::int64_t dflt) {
  return i >= 1 && static_cast<std::size_t>(i) <= v.size() ? v[static_cast<std::size_t>(i - 1)] : dflt;
}

Tuple default_tuple(int len) {
  Tuple p;
  for (int i = 0; i < len; ++i) p.push_back(3 + i);
  return p;
}

}  // namespace

std::int64_t BigPowerParams::n_at(int i) const { return pick(n, i, 20); }
std::int64_t BigPowerParams::k_at(int i) const { return pick(k, i, 2); }
std::int64_t BigPowerParams::m_at(int i) const { return pick(m, i, 1); }
std::int64_t BigPowerParams::q_at(int j) const { return pick(q, j, 3); }

Homomorphism big_power_beta(const QuadraticEquation& S, const Homomorphism& beta1,
                            const BigPowerParams& par) {
  if (!check_solution(S, beta1)) throw BaseNotASolution("beta_1 does not solve the equation");
  for (const auto* v : {&par.n, &par.k, &par.m, &par.q})
    for (auto e : *v)
      if (e < 0) throw NonPositiveExponent("parameters must be non-negative");
  const int m = S.m, n = S.n;
  // phi_m for n >= 1, phi_K for n = 0; no automorphism when m = 0.
  Homomorphism base = beta1;
  int len = n >= 1 ? m : K(m, n);
  if (m > 0 && len > 0) {
    BasicSequence G = basic_sequence(S);
    Tuple p = par.p.empty() ? default_tuple(len) : par.p;
    if (static_cast<int>(p.size()) != len)
      throw LengthMismatch("tuple must have " + std::to_string(len) + " entries");
    Homomorphism f = phi(G, p).fwd;
    for (auto g : S.variables) base.set(g, beta1.apply(f.image(g)));
  }
  // Coefficient images carry over from beta_1.
  Homomorphism beta = beta1;
  for (int i = 1; i <= n; ++i) {
    Word a = base.image(var_x(i)), b = base.image(var_y(i));
    Word u = power(b, par.n_at(i)) * a;
    Word conj = power(commutator(a, b), par.m_at(i));
    beta.set(var_x(i), conjugate(u, conj));
    beta.set(var_y(i), conjugate(power(u, par.k_at(i)) * b, conj));
  }
  Word d = beta1.apply(S.rhs);
  for (int j = 1; j <= m; ++j) {
    Word z = power(beta1.apply(Word::gen(coef_c(j))), par.q_at(j)) * base.image(var_z(j));
    if (n == 0) z = z * power(d, par.s);
    beta.set(var_z(j), z);
  }
  if (!check_solution(S, beta)) throw BaseNotASolution("constructed map fails the equation");
  return beta;
}

GeneralPosition general_position(const QuadraticEquation& S, const Homomorphism& beta) {
  std::vector<std::pair<std::string, Word>> items;
  for (int j = 1; j <= S.m; ++j)
    items.emplace_back("c" + std::to_string(j) + "^z" + std::to_string(j),
                       conjugate(Word::gen(coef_c(j)), beta.image(var_z(j))));
  for (int i = 1; i <= S.n; ++i)
    items.emplace_back("[x" + std::to_string(i) + ",y" + std::to_string(i) + "]",
                       commutator(beta.image(var_x(i)), beta.image(var_y(i))));
  for (std::size_t i = 0; i + 1 < items.size(); ++i)
    if (commutator(items[i].second, items[i + 1].second).empty())
      return {false, items[i].first + " commutes with " + items[i + 1].first};
  for (const auto& [name, w] : items)
    if (w.empty()) return {false, name + " is trivial"};
  return {};
}

std::vector<std::pair<Word, Word>> required_pairs(int m, int n, const Tuple& pK) {
  QuadraticEquation S = build_standard(Orientation::Orientable, n, m, m > 0);
  BasicSequence G = basic_sequence(S);
  Tuple p = pK.empty() ? default_tuple(G.K()) : pK;
  Homomorphism f = phi(G, p).fwd;
  std::set<std::pair<Word, Word>> seen;
  std::vector<std::pair<Word, Word>> out;
  auto add = [&](const Word& u, const Word& v) {
    if (seen.insert({u, v}).second) out.emplace_back(u, v);
  };
  for (auto g : G.generators) {
    for (const Word& w : {f.image(g), f.image(g).inverse()}) {
      // Split into Y-letters: c_j^{+-z_j} triples or single letters.
      auto L = w.letters();
      std::vector<Word> tok;
      for (std::size_t i = 0; i < L.size();) {
        if (i + 2 < L.size() && L[i] < 0 && L[i + 2] > 0 && letter_of(L[i]) == letter_of(L[i + 2]) &&
            letter_kind(letter_of(L[i + 1])) == LetterKind::Coefficient) {
          tok.push_back(reduce({L[i], L[i + 1], L[i + 2]}));
          i += 3;
        } else {
          tok.push_back(reduce({L[i]}));
          ++i;
        }
      }
      for (std::size_t i = 0; i + 1 < tok.size(); ++i) add(tok[i], tok[i + 1]);
    }
  }
  for (int i = 2; i <= m; ++i) add(Word::gen(var_z(i)), cz(i - 1, -1));
  for (int i = 1; i <= m; ++i) {
    add(Word::gen(coef_c(i)), Word::gen(var_z(i)));
    add(Word::gen(coef_c(i)), Word::gen(coef_c(i)));
  }
  return out;
}

CancellationReport check_pairs(const Homomorphism& beta, std::int64_t lambda,
                               const std::vector<std::pair<Word, Word>>& pairs) {
  CancellationReport r;
  r.lambda = lambda;
  for (const auto& [u, v] : pairs) {
    PairCheck c;
    c.u = u;
    c.v = v;
    Word ub = beta.apply(u), vb = beta.apply(v);
    c.cancel = cancellation(ub, vb);
    c.min_len = std::min(ub.length(), vb.length());
    c.ok = c.cancel * lambda <= c.min_len;
    if (c.cancel > 0) r.cancelled.insert(ub.suffix(c.cancel));
    r.ok = r.ok && c.ok;
    r.pairs.push_back(std::move(c));
  }
  return r;
}

CancellationReport check_small_cancellation(const Homomorphism& beta, std::int64_t lambda, int m,
                                            int n, const Tuple& pK) {
  auto r = check_pairs(beta, lambda, required_pairs(m, n, pK));
  auto gp = general_position(build_standard(Orientation::Orientable, n, m, m > 0), beta);
  r.general_position = gp.ok;
  r.ok = r.ok && gp.ok;
  return r;
}

std::string to_string(const CancellationReport& r) {
  std::string out = "lambda=" + std::to_string(r.lambda) + " pairs=" + std::to_string(r.pairs.size()) +
                    " general_position=" + (r.general_position ? "yes" : "no") + "\n";
  for (const auto& c : r.pairs)
    out += std::string(c.ok ? "ok   " : "FAIL ") + "(" + to_string(c.u) + ", " + to_string(c.v) +
           ") cancel=" + std::to_string(c.cancel) + " min=" + std::to_string(c.min_len) + "\n";
  out += std::string("verdict: ") + (r.ok ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace fg
