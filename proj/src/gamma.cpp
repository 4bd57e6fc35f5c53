#include "fg/gamma.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace fg {

Word cz(int j, int sign) {
  Word w = conjugate(Word::gen(coef_c(j)), Word::gen(var_z(j)));
  return sign > 0 ? w : w.inverse();
}

Word prod_cz(int m) {
  Word w;
  for (int i = 1; i <= m; ++i) w = w * cz(i);
  return w;
}

// --------------------------------------------------------------------- Twist

Word Twist::image(LetterId g, std::int64_t p) const {
  for (const auto& mv : moves) {
    if (mv.gen != g) continue;
    WordBuilder b;
    b.append(power(T, mv.a * p));
    b.push(g, 1);
    b.append(power(T, mv.b * p));
    return std::move(b).build();
  }
  return Word::gen(g);
}

Homomorphism Twist::hom(std::int64_t p) const {
  Homomorphism h;
  for (const auto& mv : moves) h.set(mv.gen, image(mv.gen, p));
  return h;
}

Homomorphism power(const Twist& g, std::int64_t p) { return g.hom(p); }

Homomorphism iterate_power(const Twist& g, std::int64_t p) {
  // Build gamma^{-1} by substitution-checked inversion: gamma^{-1} is the map
  // g -> T^{-a} g T^{-b}; it is accepted only if it undoes gamma on every
  // moved generator, so the iteration below never trusts the closed form.
  Homomorphism step = g.hom(1);
  if (p < 0) {
    Homomorphism inv = g.hom(-1);
    for (const auto& mv : g.moves)
      if (inv.apply(step.image(mv.gen)) != Word::gen(mv.gen))
        throw std::logic_error("inverse twist does not undo " + g.label);
    step = inv;
    p = -p;
  }
  Homomorphism acc;
  for (std::int64_t i = 0; i < p; ++i) acc = acc.then(step);
  return acc;
}

// ------------------------------------------------------------ basic sequence

std::optional<int> BasicSequence::special_index(int j) const {
  if (demo2 || n == 0 || K() == 0) return std::nullopt;
  int r = wrap(j);
  int t = r - m + 1;
  if (t <= 0 || t % 4 != 0) return std::nullopt;
  int i = t / 4;
  if (i < 1 || i > n) return std::nullopt;
  return i;
}

namespace {

Twist twist(std::string label, Word T, std::vector<Twist::Move> moves) {
  return Twist{std::move(label), std::move(T), std::move(moves)};
}

void verify_fixes(const BasicSequence& G) {
  for (const auto& g : G.gammas) {
    if (g.hom(1).apply(G.eq.s0) != G.eq.s0)
      throw std::logic_error(g.label + " does not fix S0");
    if (g.hom(1).apply(g.T) != g.T) throw std::logic_error(g.label + " moves its leading term");
  }
}

}  // namespace

BasicSequence basic_sequence(const QuadraticEquation& s) {
  if (s.orientation != Orientation::Orientable)
    throw InvalidForm("basic sequences are defined for orientable equations only");
  int m = s.m, n = s.n;
  K(m, n);
  BasicSequence G;
  G.m = m;
  G.n = n;
  G.eq = s;
  G.generators = s.variables;
  auto X = [](int i) { return Word::gen(var_x(i)); };
  auto Y = [](int i) { return Word::gen(var_y(i)); };
  int idx = 0;
  auto label = [&idx]() { return "gamma" + std::to_string(++idx); };
  for (int i = 1; i <= m - 1; ++i)
    G.gammas.push_back(twist(label(), cz(i) * cz(i + 1), {{var_z(i), 0, 1}, {var_z(i + 1), 0, 1}}));
  if (n >= 1) {
    if (m >= 1)
      G.gammas.push_back(twist(label(), cz(m) * X(1).inverse(),
                               {{var_z(m), 0, 1}, {var_x(1), -1, 1}, {var_y(1), -1, 0}}));
    for (int i = 1; i <= n; ++i) {
      G.gammas.push_back(twist(label(), X(i), {{var_y(i), 1, 0}}));
      G.gammas.push_back(twist(label(), Y(i), {{var_x(i), 1, 0}}));
      G.gammas.push_back(twist(label(), X(i), {{var_y(i), 1, 0}}));
      if (i <= n - 1)
        G.gammas.push_back(twist(label(), Y(i) * X(i + 1).inverse(),
                                 {{var_x(i), -1, 0},
                                  {var_y(i), -1, 1},
                                  {var_x(i + 1), -1, 1},
                                  {var_y(i + 1), -1, 0}}));
    }
  }
  if (G.K() != K(m, n)) throw std::logic_error("sequence length differs from K(m,n)");
  verify_fixes(G);
  return G;
}

BasicSequence demo2_sequence() {
  BasicSequence G;
  G.demo2 = true;
  G.m = 0;
  G.n = 1;
  LetterId x = intern("x", LetterKind::Variable);
  LetterId y = intern("y", LetterKind::Variable);
  Word a = Word::gen("a"), b = Word::gen("b");
  G.eq.orientation = Orientation::Orientable;
  G.eq.n = 1;
  G.eq.m = 0;
  G.eq.has_d = true;
  G.eq.s0 = commutator(Word::gen(x), Word::gen(y));
  G.eq.rhs = commutator(a, b);
  G.eq.variables = {x, y};
  G.generators = {x, y};
  G.gammas.push_back(twist("gamma1", Word::gen(x), {{y, 1, 0}}));
  G.gammas.push_back(twist("gamma2", Word::gen(y), {{x, 1, 0}}));
  verify_fixes(G);
  return G;
}

// -------------------------------------------------------------------- tuples

bool is_large(const Tuple& p, std::int64_t s) {
  return std::all_of(p.begin(), p.end(), [s](std::int64_t v) { return v > s; });
}

Tuple parse_tuple(const std::string& text) {
  Tuple p;
  if (text.find_first_not_of(" \t") == std::string::npos) return p;
  std::stringstream ss(text + ",");
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) throw ParseError("empty tuple entry in '" + text + "'");
    try {
      std::size_t used = 0;
      p.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw ParseError(item);
    } catch (const std::exception&) {
      throw ParseError("bad tuple entry '" + item + "'");
    }
  }
  return p;
}

std::string to_string(const Tuple& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out;
}

// ----------------------------------------------------------------------- phi

std::vector<Homomorphism> phi_prefixes(const BasicSequence& G, const Tuple& p) {
  if (G.K() == 0 && !p.empty()) throw InvalidForm("empty basic sequence");
  std::vector<Homomorphism> pref(p.size() + 1);
  for (std::size_t k = 1; k <= p.size(); ++k) {
    const Twist& g = G.gamma(static_cast<int>(k));
    const Homomorphism& prev = pref[k - 1];
    Word Timg = prev.apply(g.T);
    Homomorphism next = prev;
    std::int64_t pk = p[k - 1];
    for (const auto& mv : g.moves) {
      WordBuilder b;
      b.append(power(Timg, mv.a * pk));
      b.append(prev.image(mv.gen));
      b.append(power(Timg, mv.b * pk));
      next.set(mv.gen, std::move(b).build());
    }
    pref[k] = std::move(next);
  }
  return pref;
}

Automorphism phi(const BasicSequence& G, const Tuple& p) {
  auto pref = phi_prefixes(G, p);
  Homomorphism inv;
  for (std::size_t k = 1; k <= p.size(); ++k) {
    Homomorphism step = G.gamma(static_cast<int>(k)).hom(-p[k - 1]);
    Homomorphism next;
    for (auto g : G.generators) next.set(g, step.apply(inv.image(g)));
    inv = std::move(next);
  }
  Homomorphism fwd = pref.back();
  for (auto g : G.generators)
    if (!fwd.assigns(g)) fwd.set(g, Word::gen(g));
  return {fwd, inv};
}

Homomorphism phi_cached(const BasicSequence& G, const Tuple& p) {
  const char* dir = std::getenv("GAMMA_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return phi(G, p).fwd;
  std::string key = G.demo2 ? "demo2" : "m" + std::to_string(G.m) + "n" + std::to_string(G.n);
  key += "_p" + to_string(p);
  std::replace(key.begin(), key.end(), ',', '-');
  std::filesystem::path file = std::filesystem::path(dir) / ("phi_" + key + ".txt");
  if (std::filesystem::exists(file)) {
    std::ifstream in(file);
    Homomorphism h;
    std::string line;
    bool ok = true;
    while (std::getline(in, line)) {
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        ok = false;
        break;
      }
      h.set(intern(line.substr(0, eq)), parse_word(line.substr(eq + 1)));
    }
    if (ok) return h;
  }
  Homomorphism h = phi(G, p).fwd;
  std::filesystem::create_directories(dir);
  std::ofstream out(file);
  for (auto g : G.generators) out << letter_name(g) << "=" << to_string(h.image(g)) << "\n";
  return h;
}

// ------------------------------------------------------------- leading terms

namespace {

Word raw_leading(const BasicSequence& G, int j, const std::vector<Homomorphism>& pref) {
  const Twist& g = G.gamma(j);
  Word w = pref[static_cast<std::size_t>(j - 1)].apply(g.T);
  if (auto i = G.special_index(j)) {
    Word yi = pref[static_cast<std::size_t>(j - 2)].image(var_y(*i));
    w = yi.inverse() * w * yi;
  }
  return w;
}

bool is_rotation(const Word& a, const Word& b) {
  if (a.length() != b.length()) return false;
  if (a.empty()) return true;
  // b is cyclically reduced, so b*b is the plain concatenation.
  return contains(b * b, a);
}

}  // namespace

std::vector<Word> leading_terms(const BasicSequence& G, const Tuple& p) {
  auto pref = phi_prefixes(G, p);
  std::vector<Word> out;
  for (int j = 1; j <= static_cast<int>(p.size()); ++j)
    out.push_back(cyclic_reduce(raw_leading(G, j, pref)).core);
  return out;
}

LeadingTerm leading_term(const BasicSequence& G, int j, const Tuple& p) {
  if (static_cast<int>(p.size()) < j) throw LengthMismatch("tuple shorter than rank");
  Tuple pj(p.begin(), p.begin() + j);
  if (!is_large(pj, 3)) throw TupleNotLarge("leading terms need a 3-large tuple");
  auto pref = phi_prefixes(G, pj);
  LeadingTerm lt;
  lt.j = j;
  auto cr = cyclic_reduce(raw_leading(G, j, pref));
  lt.A = cr.core;
  lt.conj = cr.conjugator;
  int K = G.K();
  if (j > K) {
    int L = K * ((j - 1) / K);
    int r = j - L;
    Tuple shifted(pj.begin() + L, pj.end());
    auto spref = phi_prefixes(G, shifted);
    Word Ar = cyclic_reduce(raw_leading(G, r, spref)).core;
    lt.has_star = true;
    lt.star = pref[static_cast<std::size_t>(L)].apply(Ar);
    auto sc = cyclic_reduce(lt.star);
    lt.star_core = sc.core;
    lt.R = sc.conjugator;
    lt.star_core_equals_A = sc.core == lt.A;
    lt.star_core_rotation_of_A = is_rotation(sc.core, lt.A);
  }
  return lt;
}

std::vector<CHomomorphism> compressed_phi_prefixes(const BasicSequence& G, const Tuple& p) {
  if (G.K() == 0 && !p.empty()) throw InvalidForm("empty basic sequence");
  std::vector<CHomomorphism> pref(p.size() + 1);
  for (std::size_t k = 1; k <= p.size(); ++k) {
    const Twist& g = G.gamma(static_cast<int>(k));
    const CHomomorphism& prev = pref[k - 1];
    CWord Timg = prev.apply(g.T);
    CHomomorphism next = prev;
    std::int64_t pk = p[k - 1];
    for (const auto& mv : g.moves)
      next.set(mv.gen, power(Timg, mv.a * pk) * prev.image(mv.gen) * power(Timg, mv.b * pk));
    pref[k] = std::move(next);
  }
  return pref;
}

std::vector<CWord> compressed_leading_terms(const BasicSequence& G, const Tuple& p) {
  auto pref = compressed_phi_prefixes(G, p);
  std::vector<CWord> out;
  for (int j = 1; j <= static_cast<int>(p.size()); ++j) {
    CWord w = pref[static_cast<std::size_t>(j - 1)].apply(G.gamma(j).T);
    if (auto i = G.special_index(j)) {
      CWord yi = pref[static_cast<std::size_t>(j - 2)].image(var_y(*i));
      w = yi.inverse() * w * yi;
    }
    out.push_back(cyclic_reduce(w).core);
  }
  return out;
}

// ------------------------------------------------------------ exception sets

std::set<Word> exception_T(int m, int n) {
  if (m < 1 || n < 1) throw InvalidForm("exception sets need m >= 1 and n >= 1");
  auto X = [](int i) { return Word::gen(var_x(i)); };
  auto Yv = [m](int i) { return i == 0 ? Word::gen(var_z(m)) : Word::gen(var_y(i)); };
  auto inv = [](const Word& w) { return w.inverse(); };
  Word P = prod_cz(m);
  std::vector<Word> base;
  for (int s = 1; s <= m; ++s) base.push_back(cz(s));
  base.push_back(P * X(1) * inv(P));
  if (n == 2) {
    base.push_back(P * inv(X(1)) * X(2) * X(1) * inv(P));
    base.push_back(Yv(1) * inv(X(2)) * X(1) * inv(P));
    base.push_back(P * inv(X(1)) * inv(Yv(1)));
  } else if (n >= 3) {
    base.push_back(P * inv(X(1)) * inv(X(2)));
    base.push_back(P * inv(X(1)) * inv(Yv(1)));
    base.push_back(Yv(n - 2) * inv(X(n - 1)) * X(n) * X(n - 1) * inv(Yv(n - 2)));
    base.push_back(Yv(n - 1) * inv(X(n)) * X(n - 1) * inv(Yv(n - 2)));
    for (int r = 2; r < n; ++r) {
      base.push_back(Yv(r - 2) * inv(X(r - 1)) * inv(X(r)));
      base.push_back(Yv(r - 1) * inv(X(r)) * inv(Yv(r)));
    }
  }
  std::set<Word> out;
  for (const auto& w : base) {
    out.insert(w);
    out.insert(w.inverse());
  }
  return out;
}

namespace {

// Stallings graph of a finitely generated subgroup, used for Y-membership.
class SubgroupGraph {
 public:
  explicit SubgroupGraph(const std::vector<Word>& gens) {
    vertices_ = 1;
    for (const auto& g : gens) add_loop(g);
    fold();
  }

  bool contains(const Word& w) const {
    int v = 0;
    for (auto s : w.letters()) {
      auto it = edges_.find({v, s});
      if (it == edges_.end() || it->second.empty()) return false;
      v = *it->second.begin();
    }
    return v == 0;
  }

 private:
  int vertices_;
  std::map<std::pair<int, SignedLetter>, std::set<int>> edges_;

  void add_edge(int u, SignedLetter s, int v) {
    edges_[{u, s}].insert(v);
    edges_[{v, -s}].insert(u);
  }

  void add_loop(const Word& w) {
    auto ls = w.letters();
    int prev = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      int next = i + 1 == ls.size() ? 0 : vertices_++;
      add_edge(prev, ls[i], next);
      prev = next;
    }
  }

  void merge(int keep, int drop) {
    std::map<std::pair<int, SignedLetter>, std::set<int>> fresh;
    for (auto& [k, targets] : edges_) {
      int src = k.first == drop ? keep : k.first;
      for (int t : targets) fresh[{src, k.second}].insert(t == drop ? keep : t);
    }
    edges_ = std::move(fresh);
  }

  void fold() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [k, targets] : edges_) {
        if (targets.size() > 1) {
          int a = *targets.begin();
          int b = *std::next(targets.begin());
          merge(std::min(a, b), std::max(a, b));
          changed = true;
          break;
        }
      }
    }
  }
};

std::vector<Word> y_generators(int m, int n) {
  std::vector<Word> gens;
  if (n != 0) {
    for (int i = 1; i <= n; ++i) {
      gens.push_back(Word::gen(var_x(i)));
      gens.push_back(Word::gen(var_y(i)));
    }
    for (int j = 1; j <= m; ++j) gens.push_back(cz(j));
  } else {
    for (int j = 1; j <= m - 1; ++j) gens.push_back(cz(j));
    gens.push_back(prod_cz(m));
  }
  return gens;
}

}  // namespace

bool is_y_word(const Word& w, int m, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<SubgroupGraph>> cache;
  std::shared_ptr<SubgroupGraph> g;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{m, n}];
    if (!slot) slot = std::make_shared<SubgroupGraph>(y_generators(m, n));
    g = slot;
  }
  return g->contains(w);
}

std::set<Word> image_subwords(const BasicSequence& G, const Tuple& pK, int k) {
  Homomorphism f = phi(G, pK).fwd;
  std::set<Word> out;
  for (auto g : G.generators) {
    Word w = f.image(g);
    auto s1 = subwords(w, k, false);
    auto s2 = subwords(w.inverse(), k, false);
    out.insert(s1.begin(), s1.end());
    out.insert(s2.begin(), s2.end());
  }
  return out;
}

namespace {

struct Pattern {
  Word word;
  std::vector<std::int64_t> offsets;  // allowed positions of the target; empty means any
};

bool covered(const std::vector<SignedLetter>& v, std::int64_t s, std::int64_t len,
             const std::vector<Pattern>& pats, bool ext) {
  std::int64_t V = static_cast<std::int64_t>(v.size());
  for (const auto& pat : pats) {
    auto P = pat.word.letters();
    std::int64_t PL = static_cast<std::int64_t>(P.size());
    std::vector<std::int64_t> offs = pat.offsets;
    if (offs.empty())
      for (std::int64_t o = 0; o + len <= PL; ++o) offs.push_back(o);
    for (auto o : offs) {
      std::int64_t base = s - o;
      if (!ext && (base < 0 || base + PL > V)) continue;
      bool ok = true;
      for (std::int64_t t = 0; t < PL && ok; ++t) {
        std::int64_t pos = base + t;
        if (pos < 0 || pos >= V) continue;
        ok = v[static_cast<std::size_t>(pos)] == P[static_cast<std::size_t>(t)];
      }
      if (ok) return true;
    }
  }
  return false;
}

std::vector<Pattern> with_inverses(std::vector<Pattern> pats) {
  std::vector<Pattern> out = pats;
  for (const auto& p : pats) {
    Pattern q{p.word.inverse(), {}};
    for (auto o : p.offsets) q.offsets.push_back(o);  // callers only use symmetric offsets
    out.push_back(q);
  }
  return out;
}

}  // namespace

MembershipReport w_gamma_membership(const Word& w, const BasicSequence& G, const Tuple& pK,
                                    bool as_subword) {
  MembershipReport rep;
  if (w.empty()) return rep;
  auto fail = [&rep](int c, std::string d) {
    rep.member = false;
    rep.condition = c;
    rep.detail = std::move(d);
    return rep;
  };
  int m = G.m;
  // condition 1
  for (int k : {3, 2}) {
    if (w.length() < k) continue;
    auto cat = image_subwords(G, pK, k);
    for (const auto& s : subwords(w, k, false))
      if (!cat.count(s))
        return fail(1, "Sub" + std::to_string(k) + " word not in catalog: " + to_string(s));
  }
  // condition 2
  const auto& syl = w.syllables();
  for (std::size_t i = 0; i < syl.size(); ++i) {
    const auto& s = syl[i];
    if (letter_kind(s.letter) != LetterKind::Variable) continue;
    if (letter_name(s.letter)[0] != 'x') continue;
    if (s.exp != 2 && s.exp != -2) continue;
    bool at_end = i == 0 || i + 1 == syl.size();
    if (as_subword && at_end) continue;
    return fail(2, "square " + to_string(Word::gen(s.letter, s.exp)) + " not inside a cube");
  }
  if (m == 0) return rep;
  auto v = w.letters();
  auto occurrences = [&v](int j) {
    std::vector<std::int64_t> at;
    SignedLetter zi = signed_letter(var_z(j), -1), c = signed_letter(coef_c(j), 1),
                 z = signed_letter(var_z(j), 1);
    for (std::size_t s = 0; s + 2 < v.size(); ++s)
      if (v[s] == zi && (v[s + 1] == c || v[s + 1] == -c) && v[s + 2] == z)
        at.push_back(static_cast<std::int64_t>(s));
    return at;
  };
  Word E12 = m >= 2 ? cz(1) * cz(2) : cz(1) * Word::gen(var_x(1)).inverse();
  // condition 3
  {
    auto pats = with_inverses({{power(E12, 3), {}}});
    for (auto s : occurrences(1))
      if (!covered(v, s, 3, pats, as_subword))
        return fail(3, "c1^{z1} occurrence outside an elementary cube");
  }
  // condition 4
  if (m >= 3) {
    auto pats = with_inverses({{prod_cz(m), {}}});
    for (auto s : occurrences(m))
      if (!covered(v, s, 3, pats, as_subword))
        return fail(4, "c_m^{z_m} occurrence outside the full product");
  }
  // condition 5
  if (m >= 2) {
    Word cube = power(cz(1) * cz(2), 3);
    std::vector<Pattern> pats = with_inverses({{cube, {}}});
    for (int sgn : {1, -1}) {
      Word mid = cube.inverse() * cz(2, sgn) * cube;
      pats.push_back({mid, {cube.length()}});
    }
    Word third = Word::gen(coef_c(1)) * Word::gen(var_z(1)) * cz(2) * cube;
    pats.push_back({third, {}});
    pats.push_back({third.inverse(), {}});
    for (auto s : occurrences(2))
      if (!covered(v, s, 3, pats, as_subword))
        return fail(5, "c2^{z2} occurrence in no admissible context");
  }
  return rep;
}

std::set<Word> exception_E(int m, int n, const Tuple& p) {
  auto T = exception_T(m, n);
  QuadraticEquation s = build_standard(Orientation::Orientable, n, m, true);
  BasicSequence G = basic_sequence(s);
  Tuple pK(p.begin(), p.begin() + std::min<std::size_t>(p.size(), static_cast<std::size_t>(G.K())));
  if (static_cast<int>(pK.size()) != G.K()) throw LengthMismatch("E(m,n) needs a tuple of length K");
  std::set<Word> subs;
  for (const auto& t : T)
    for (std::int64_t i = 2; i <= t.length(); ++i) {
      auto s2 = subwords(t, i, false);
      subs.insert(s2.begin(), s2.end());
    }
  std::set<Word> out;
  for (const auto& w : subs)
    if (is_y_word(w, m, n) && w_gamma_membership(w, G, pK, true).member) out.insert(w);
  return out;
}

CancellationProfile cancellation_profile(const Homomorphism& phiK, const Word& u, const Word& v) {
  CancellationProfile cp;
  cp.left_image = phiK.apply(u);
  cp.right_image = phiK.apply(v);
  std::int64_t c = cancellation(cp.left_image, cp.right_image);
  cp.cancelled = cp.left_image.suffix(c);
  cp.left_residue = cp.left_image.prefix(cp.left_image.length() - c);
  cp.right_residue = cp.right_image.suffix(cp.right_image.length() - c);
  return cp;
}

}  // namespace fg
