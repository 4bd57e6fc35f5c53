#include "fg/cut.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fg/decomposition.hpp"

namespace fg {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<LetterId> parse_names(const std::string& rest) {
  std::istringstream in(rest);
  std::vector<LetterId> out;
  std::string t;
  while (in >> t) out.push_back(parse_word(t).syllables().at(0).letter);
  return out;
}

std::string join_names(const std::vector<LetterId>& ids) {
  std::string out;
  for (auto id : ids) out += " " + letter_name(id);
  return out;
}

// Letter occurrence of f_M together with its image and span in W^beta.
struct Span {
  SignedLetter s;
  Word img;
  std::int64_t begin;
  std::int64_t end;
};

std::vector<Span> spans(const Word& fm, const Homomorphism& alpha) {
  std::vector<Span> out;
  std::int64_t pos = 0;
  for (auto s : fm.letters()) {
    LetterId id = letter_of(s);
    if (letter_kind(id) == LetterKind::CutVariable && !alpha.assigns(id))
      throw UnassignedVariable("cut variable " + letter_name(id) + " has no image");
    Word img = alpha.image(id);
    if (s < 0) img = img.inverse();
    out.push_back({s, img, pos, pos + img.length()});
    pos += img.length();
  }
  return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::set<std::string> names_in(const CutEquation& pi) {
  std::set<std::string> out;
  for (auto v : pi.vars) out.insert(letter_name(v));
  for (auto v : pi.params) out.insert(letter_name(v));
  for (const auto& iv : pi.intervals)
    for (const auto& w : {iv.fx, iv.fm})
      for (const auto& s : w.syllables()) out.insert(letter_name(s.letter));
  for (const auto& [k, v] : pi.alpha.assignments()) out.insert(letter_name(k));
  return out;
}

class Fresh {
 public:
  explicit Fresh(std::set<std::string> used) : used_(std::move(used)) {}
  LetterId next(const std::string& prefix) {
    for (int k = 1;; ++k) {
      std::string name = prefix + std::to_string(k);
      if (used_.insert(name).second) return intern(name, LetterKind::CutVariable);
    }
  }
  LetterId named(const std::string& name) {
    if (!used_.insert(name).second) throw InvalidForm("variable name " + name + " already in use");
    return intern(name, LetterKind::CutVariable);
  }

 private:
  std::set<std::string> used_;
};

bool mentions(const Word& w, const std::set<LetterId>& ids) {
  for (const auto& s : w.syllables())
    if (ids.count(s.letter)) return true;
  return false;
}

Word substitute(const Word& w, LetterId var, const Word& by) {
  Homomorphism h;
  h.set(var, by);
  return h.apply(w);
}

std::string first_problem(const VerifyReport& r) {
  for (const auto& iv : r.intervals)
    if (!iv.ok) return iv.id + ": " + iv.reason;
  return r.problems.empty() ? std::string("unknown") : r.problems.front();
}

}  // namespace

const Interval& CutEquation::interval(const std::string& id) const {
  for (const auto& iv : intervals)
    if (iv.id == id) return iv;
  throw InvalidForm("no interval " + id);
}

std::string to_string(const CutEquation& pi) {
  std::string out = "PARAMS" + join_names(pi.params) + "\n";
  out += "VARS" + join_names(pi.vars) + "\n";
  for (const auto& iv : pi.intervals)
    out += "INTERVAL " + iv.id + " X: " + to_string(iv.fx) + " M: " + to_string(iv.fm) + "\n";
  std::set<LetterId> done;
  for (auto v : pi.vars)
    if (auto* w = pi.alpha.image_of(v)) {
      out += "ALPHA " + letter_name(v) + " = " + to_string(*w) + "\n";
      done.insert(v);
    }
  for (const auto& [k, w] : pi.alpha.assignments())
    if (!done.count(k)) out += "ALPHA " + letter_name(k) + " = " + to_string(w) + "\n";
  done.clear();
  for (auto v : pi.params)
    if (auto* w = pi.beta.image_of(v)) {
      out += "BETA " + letter_name(v) + " = " + to_string(*w) + "\n";
      done.insert(v);
    }
  for (const auto& [k, w] : pi.beta.assignments())
    if (!done.count(k)) out += "BETA " + letter_name(k) + " = " + to_string(w) + "\n";
  for (const auto& r : pi.delta)
    out += "DELTA " + letter_name(r.var) + " = " + to_string(r.value) + "\n";
  return out;
}

CutEquation parse_cut_equation(const std::string& text) {
  CutEquation pi;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto sp = t.find(' ');
    std::string key = t.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : t.substr(sp + 1);
    auto where = " (line " + std::to_string(lineno) + ")";
    try {
      if (key == "PARAMS") {
        pi.params = parse_names(rest);
      } else if (key == "VARS") {
        pi.vars = parse_names(rest);
      } else if (key == "INTERVAL") {
        auto xp = rest.find(" X: ");
        auto mp = rest.find(" M: ");
        if (xp == std::string::npos || mp == std::string::npos || mp < xp)
          throw ParseError("INTERVAL needs 'X:' and 'M:' parts");
        Interval iv;
        iv.id = trim(rest.substr(0, xp));
        if (iv.id.empty() || iv.id.find(' ') != std::string::npos)
          throw ParseError("bad interval id");
        if (!ids.insert(iv.id).second) throw ParseError("duplicate interval " + iv.id);
        iv.fx = parse_word(rest.substr(xp + 4, mp - xp - 4));
        iv.fm = parse_word(rest.substr(mp + 4));
        pi.intervals.push_back(std::move(iv));
      } else if (key == "ALPHA" || key == "BETA" || key == "DELTA") {
        auto eq = rest.find('=');
        if (eq == std::string::npos) throw ParseError(key + " needs 'name = word'");
        LetterId v = parse_word(trim(rest.substr(0, eq))).syllables().at(0).letter;
        Word w = parse_word(rest.substr(eq + 1));
        if (key == "ALPHA")
          pi.alpha.set(v, w);
        else if (key == "BETA")
          pi.beta.set(v, w);
        else
          pi.delta.push_back({v, w});
      } else {
        throw ParseError("unknown keyword '" + key + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError(e.what() + where);
    } catch (const std::out_of_range&) {
      throw ParseError("empty name" + where);
    }
  }
  return pi;
}

VerifyReport verify_solution(const CutEquation& pi, const Homomorphism& alpha,
                             const Homomorphism& beta, SolutionMode mode) {
  VerifyReport rep;
  for (auto v : pi.vars) {
    if (!alpha.assigns(v)) throw UnassignedVariable("cut variable " + letter_name(v) + " has no image");
    if (mode == SolutionMode::Graphic && alpha.image(v).empty()) {
      rep.ok = false;
      rep.problems.push_back("empty image for " + letter_name(v));
    }
  }
  for (auto x : pi.params) {
    auto k = letter_kind(x);
    if ((k == LetterKind::Variable || k == LetterKind::CutVariable) && !beta.assigns(x))
      throw UnassignedVariable("parameter " + letter_name(x) + " has no image");
  }
  for (const auto& iv : pi.intervals) {
    IntervalVerdict v{iv.id, true, ""};
    Word rhs = beta.apply(iv.fx);
    auto sp = spans(iv.fm, alpha);
    std::vector<Word> factors;
    for (const auto& s : sp) factors.push_back(s.img);
    if (mode == SolutionMode::Graphic) {
      for (const auto& s : sp)
        if (s.img.empty()) {
          v.ok = false;
          v.reason = "empty image for " + letter_name(letter_of(s.s));
        }
      if (v.ok && !reduced_as_written(factors)) {
        v.ok = false;
        v.reason = "cancellation between consecutive images";
      }
    }
    if (v.ok) {
      Word lhs;
      for (const auto& f : factors) lhs = lhs * f;
      if (!(lhs == rhs)) {
        v.ok = false;
        v.reason = "M side reads " + to_string(lhs) + " but X side reads " + to_string(rhs);
      }
    }
    if (!v.ok) rep.ok = false;
    rep.intervals.push_back(std::move(v));
  }
  for (const auto& r : pi.delta) {
    if (!(alpha.image(r.var) == alpha.apply(r.value))) {
      rep.ok = false;
      rep.problems.push_back("ledger relation " + letter_name(r.var) + " = " + to_string(r.value) +
                             " fails");
    }
  }
  return rep;
}

Complexity complexity(const CutEquation& pi) {
  Complexity c;
  for (const auto& iv : pi.intervals) c.length = std::max(c.length, iv.fm.length());
  c.k.assign(static_cast<std::size_t>(std::max<std::int64_t>(0, c.length - 1)), 0);
  for (const auto& iv : pi.intervals)
    if (iv.fm.length() >= 2) ++c.k[static_cast<std::size_t>(iv.fm.length() - 2)];
  return c;
}

int compare(const Complexity& a, const Complexity& b) {
  if (a.length != b.length) return a.length < b.length ? -1 : 1;
  for (std::size_t i = a.k.size(); i-- > 0;) {
    std::int64_t x = a.k[i];
    std::int64_t y = i < b.k.size() ? b.k[i] : 0;
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

std::string to_string(const Complexity& c) {
  if (c.is_zero()) return "0";
  std::string out = "length=" + std::to_string(c.length) + " k=(";
  for (std::size_t i = 0; i < c.k.size(); ++i) out += (i ? "," : "") + std::to_string(c.k[i]);
  return out + ")";
}

Metrics metrics(const CutEquation& pi) {
  auto c = complexity(pi);
  Metrics m;
  m.length = c.length;
  for (std::size_t i = 0; i < c.k.size(); ++i) {
    m.S += static_cast<std::int64_t>(i + 2) * c.k[i];
    m.width = std::max(m.width, c.k[i]);
  }
  return m;
}

std::int64_t kappa(const CutEquation& pi, std::int64_t bound) {
  auto len = complexity(pi).length;
  std::int64_t out = 1;
  for (std::int64_t i = 1; i < len; ++i) {
    if (out > INT64_MAX / (bound + 1)) return INT64_MAX;
    out *= bound + 1;
  }
  return out;
}

GeneralizedEquation to_generalized(const CutEquation& pi) {
  GeneralizedEquation ge;
  std::map<LetterId, std::vector<int>> occ;
  int lam = 0;
  auto add_letters = [&](const Word& w) {
    std::int64_t from = static_cast<std::int64_t>(ge.V.size()) + 1;
    for (auto s : w.letters()) {
      GeBase b;
      LetterId id = letter_of(s);
      b.label = letter_name(id);
      b.begin = static_cast<std::int64_t>(ge.V.size()) + 1;
      b.end = b.begin + 1;
      b.exp = s > 0 ? 1 : -1;
      auto k = letter_kind(id);
      b.kind = (k == LetterKind::Constant || k == LetterKind::Coefficient) ? GeBase::Kind::Constant
                                                                          : GeBase::Kind::Variable;
      if (b.kind == GeBase::Kind::Variable) occ[id].push_back(static_cast<int>(ge.bases.size()));
      ge.bases.push_back(b);
      ge.V.push_back(s);
    }
    return std::pair<std::int64_t, std::int64_t>{from, static_cast<std::int64_t>(ge.V.size()) + 1};
  };
  for (const auto& iv : pi.intervals) {
    auto x = add_letters(iv.fx);
    auto m = add_letters(iv.fm);
    ++lam;
    GeBase l;
    l.label = "lam" + std::to_string(lam);
    l.begin = x.first;
    l.end = x.second;
    l.kind = GeBase::Kind::Lambda;
    GeBase d = l;
    d.label = "Delta(lam" + std::to_string(lam) + ")";
    d.begin = m.first;
    d.end = m.second;
    d.kind = GeBase::Kind::LambdaDual;
    int li = static_cast<int>(ge.bases.size());
    l.dual = li + 1;
    d.dual = li;
    ge.bases.push_back(l);
    ge.bases.push_back(d);
  }
  // Repeated occurrences of a variable are chained to its first occurrence.
  for (const auto& [id, list] : occ) {
    if (list.size() < 2) continue;
    ge.bases[static_cast<std::size_t>(list[0])].dual = list[1];
    for (std::size_t i = 1; i < list.size(); ++i) ge.bases[static_cast<std::size_t>(list[i])].dual = list[0];
  }
  return ge;
}

std::string to_string(const GeneralizedEquation& ge) {
  std::string out = "V:";
  for (auto s : ge.V) out += " " + letter_name(letter_of(s)) + (s < 0 ? "^-1" : "");
  out += "\nboundaries: 1.." + std::to_string(ge.boundaries()) + "\n";
  for (std::size_t i = 0; i < ge.bases.size(); ++i) {
    const auto& b = ge.bases[i];
    const char* kind = "variable";
    if (b.kind == GeBase::Kind::Constant) kind = "constant";
    if (b.kind == GeBase::Kind::Lambda) kind = "lambda";
    if (b.kind == GeBase::Kind::LambdaDual) kind = "lambda-dual";
    out += "base " + std::to_string(i) + " " + kind + " " + b.label + " [" + std::to_string(b.begin) +
           "," + std::to_string(b.end) + "]";
    if (b.kind == GeBase::Kind::Variable || b.kind == GeBase::Kind::Constant)
      out += " exp=" + std::to_string(b.exp);
    if (b.dual >= 0) {
      const auto& o = ge.bases[static_cast<std::size_t>(b.dual)];
      out += " dual=" + std::to_string(b.dual);
      out += b.exp * o.exp > 0 ? " same" : " opposite";
    }
    out += "\n";
  }
  return out;
}

TStarResult t_star(const GammaCutEquation& g, const TStarOptions& opt) {
  const CutEquation& pi = g.pi;
  auto rep = verify_solution(pi);
  if (!rep.ok) throw NotAGammaCutEquation("attached solution fails: " + first_problem(rep));
  const Word& A = g.period;
  if (!is_period(A, true))
    throw BadPeriod("'" + to_string(A) + "' is not cyclically reduced and primitive");
  const std::int64_t l = g.size;
  if (l < 1) throw InvalidForm("size must be positive");

  TStarResult out;
  auto cr = cyclic_reduce(pi.beta.apply(A));
  if (cr.core.empty() || power_root(cr.core).exponent != 1)
    throw BadPeriod("A^beta has no primitive cyclic core");
  out.a_prime = cr.core;
  out.c = cr.conjugator;
  out.c_star = cr.conjugator * pi.beta.apply(g.R);
  const Word& Ap = out.a_prime;
  const Word& cs = out.c_star;
  const std::int64_t L = Ap.length();
  out.N = opt.N ? *opt.N : (l + 2) * std::max<std::int64_t>(1, complexity(pi).length);

  std::vector<bool> is11;
  bool any11 = false;
  for (const auto& iv : pi.intervals) {
    bool b = !stable_occurrences(iv.fx, A, out.N).empty();
    is11.push_back(b);
    any11 = any11 || b;
    out.cases.push_back(iv.id + (b ? ":1.1" : ":<j"));
  }
  if (!any11) {
    out.result = pi;
    out.identity = true;
    return out;
  }

  Word big = power(Ap, l + 2);
  std::set<LetterId> longv;
  for (auto v : pi.vars) {
    Word img = pi.alpha.image(v);
    if (contains(img, big) || contains(img, big.inverse())) {
      longv.insert(v);
      out.long_vars.push_back(letter_name(v));
    }
  }
  std::int64_t vs = opt.very_short ? *opt.very_short : l;
  Word vbig = power(Ap, vs);
  for (auto v : pi.vars) {
    if (longv.count(v)) continue;
    Word img = pi.alpha.image(v);
    if (vs <= 0 || !(contains(img, vbig) || contains(img, vbig.inverse())))
      out.very_short.push_back(letter_name(v));
  }
  bool long_in_11 = false;
  for (std::size_t i = 0; i < pi.intervals.size(); ++i)
    for (const auto& s : pi.intervals[i].fm.syllables())
      if (longv.count(s.letter)) {
        if (!is11[i])
          throw NotAGammaCutEquation("long variable " + letter_name(s.letter) +
                                     " occurs in non-1.1 interval " + pi.intervals[i].id);
        long_in_11 = true;
      }
  if (!long_in_11) throw NoLongVariable("no long variable in a 1.1 interval");

  struct Occ {
    std::int64_t bs, be, q;
    int sign;
    std::size_t letter;
  };
  std::vector<std::vector<Occ>> occs(pi.intervals.size());
  std::vector<std::vector<Span>> sps(pi.intervals.size());
  std::vector<Word> wbs(pi.intervals.size());
  std::map<LetterId, std::vector<std::pair<std::int64_t, std::int64_t>>> cuts;
  for (std::size_t i = 0; i < pi.intervals.size(); ++i) {
    if (!is11[i]) continue;
    const auto& iv = pi.intervals[i];
    wbs[i] = pi.beta.apply(iv.fx);
    sps[i] = spans(iv.fm, pi.alpha);
    const auto& sp = sps[i];
    auto& oc = occs[i];
    for (int sign : {1, -1}) {
      Word P = sign > 0 ? Ap : Ap.inverse();
      for (auto [s, k] : period_chains(wbs[i], P)) {
        if (k < 3) continue;
        for (std::size_t t = 0; t < sp.size(); ++t) {
          if (!longv.count(letter_of(sp[t].s))) continue;
          std::int64_t lo = std::max<std::int64_t>(1, ceil_div(sp[t].begin - s, L));
          std::int64_t hi = std::min<std::int64_t>(k - 2, floor_div(sp[t].end - s, L) - 1);
          if (hi - lo + 1 >= l) oc.push_back({s + lo * L, s + (hi + 1) * L, hi - lo + 1, sign, t});
        }
      }
    }
    std::sort(oc.begin(), oc.end(), [](const Occ& a, const Occ& b) { return a.bs < b.bs; });
    std::map<std::size_t, std::vector<std::pair<std::int64_t, std::int64_t>>> local;
    for (const auto& o : oc) {
      const auto& s = sp[o.letter];
      std::int64_t a = o.bs - s.begin, b = o.be - s.begin, m = s.img.length();
      if (s.s > 0)
        local[o.letter].emplace_back(a, b);
      else
        local[o.letter].emplace_back(m - b, m - a);
    }
    for (std::size_t t = 0; t < sp.size(); ++t) {
      LetterId v = letter_of(sp[t].s);
      if (!longv.count(v)) continue;
      auto cl = local[t];
      std::sort(cl.begin(), cl.end());
      auto it = cuts.find(v);
      if (it == cuts.end())
        cuts.emplace(v, cl);
      else if (it->second != cl)
        throw InconsistentBoundary("occurrences of " + letter_name(v) +
                                   " cut its image at different places");
    }
  }

  Fresh fresh(names_in(pi));
  Homomorphism alpha;
  std::vector<LetterId> vars;
  for (auto v : pi.vars)
    if (!longv.count(v)) {
      vars.push_back(v);
      alpha.set(v, pi.alpha.image(v));
    }
  std::map<LetterId, std::vector<std::optional<LetterId>>> newv;
  for (auto v : pi.vars) {
    auto it = cuts.find(v);
    if (it == cuts.end()) continue;
    Word img = pi.alpha.image(v);
    const auto& cl = it->second;
    std::int64_t prev = 0;
    auto& list = newv[v];
    for (std::size_t r = 0; r <= cl.size(); ++r) {
      std::int64_t stop = r < cl.size() ? cl[r].first : img.length();
      Word raw = img.slice(prev, stop - prev);
      if (r < cl.size()) prev = cl[r].second;
      Word piece = raw;
      if (r > 0) piece = cs.inverse() * piece;
      if (r < cl.size()) piece = piece * cs;
      if (piece.empty()) {
        out.omitted.push_back(letter_name(v) + "[" + std::to_string(r) + "]");
        list.push_back(std::nullopt);
        continue;
      }
      LetterId nv = fresh.next("nu");
      vars.push_back(nv);
      alpha.set(nv, piece);
      list.push_back(nv);
      out.pieces[letter_name(v)].push_back(letter_name(nv));
    }
  }

  CutEquation res;
  res.params = pi.params;
  res.beta = pi.beta;
  for (std::size_t i = 0; i < pi.intervals.size(); ++i) {
    const auto& iv = pi.intervals[i];
    if (!is11[i]) {
      res.intervals.push_back(iv);
      continue;
    }
    const auto& sp = sps[i];
    const auto& oc = occs[i];
    // Token stream with a marker (0) at every occurrence.
    std::vector<SignedLetter> tokens;
    for (const auto& s : sp) {
      LetterId v = letter_of(s.s);
      auto it = newv.find(v);
      if (it == newv.end()) {
        tokens.push_back(s.s);
        continue;
      }
      std::vector<SignedLetter> seq;
      for (std::size_t r = 0; r < it->second.size(); ++r) {
        if (r > 0) seq.push_back(0);
        if (it->second[r]) seq.push_back(signed_letter(*it->second[r], 1));
      }
      if (s.s < 0) {
        std::reverse(seq.begin(), seq.end());
        for (auto& x : seq) x = -x;
      }
      tokens.insert(tokens.end(), seq.begin(), seq.end());
    }
    std::vector<std::vector<SignedLetter>> segs(1);
    for (auto x : tokens) {
      if (x == 0)
        segs.emplace_back();
      else
        segs.back().push_back(x);
    }
    if (segs.size() != oc.size() + 1)
      throw InconsistentBoundary("interval " + iv.id + ": occurrence count mismatch");

    // Lift every occurrence to the X side.
    const Word& W = iv.fx;
    const Word& Wb = wbs[i];
    const std::int64_t LA = A.length();
    Word cinv = out.c.inverse();
    std::vector<std::pair<std::int64_t, std::int64_t>> xcuts;
    std::int64_t floor_pos = 0;
    for (const auto& o : oc) {
      Word P = o.sign > 0 ? A : A.inverse();
      Word target = Wb.prefix(o.bs);
      std::optional<std::int64_t> found;
      std::vector<std::int64_t> cand;
      for (auto [s, k] : period_chains(W, P))
        for (std::int64_t j = 0; j + o.q <= k; ++j) cand.push_back(s + j * LA);
      std::sort(cand.begin(), cand.end());
      for (auto p1 : cand) {
        if (p1 < floor_pos) continue;
        if (pi.beta.apply(W.prefix(p1)) * cinv == target) {
          found = p1;
          break;
        }
      }
      if (!found)
        throw InconsistentBoundary("interval " + iv.id + ": occurrence at " + std::to_string(o.bs) +
                                   " does not lift to the X side");
      std::int64_t p2 = *found + o.q * LA;
      xcuts.emplace_back(*found, p2);
      floor_pos = p2;
    }
    int kept = 0;
    for (std::size_t r = 0; r < segs.size(); ++r) {
      std::int64_t bfrom = r == 0 ? 0 : oc[r - 1].be;
      std::int64_t bto = r < oc.size() ? oc[r].bs : Wb.length();
      if (bfrom == bto) {
        // Two occurrences meet: whatever sits between them must cancel out.
        Word between;
        for (auto x : segs[r]) between = between * (x > 0 ? alpha.image(letter_of(x)) : alpha.image(letter_of(x)).inverse());
        if (!between.empty())
          throw InconsistentBoundary("interval " + iv.id + ": adjacent occurrences do not close up");
        continue;
      }
      std::int64_t xfrom = r == 0 ? 0 : xcuts[r - 1].second;
      std::int64_t xto = r < oc.size() ? xcuts[r].first : W.length();
      Word fx = W.slice(xfrom, xto - xfrom);
      if (r > 0) fx = g.R.inverse() * fx;
      if (r < oc.size()) fx = fx * g.R;
      Interval ni;
      ni.id = iv.id + "." + std::to_string(++kept);
      ni.fx = fx;
      ni.fm = reduce(segs[r]);
      res.intervals.push_back(std::move(ni));
    }
  }
  std::set<LetterId> used;
  for (const auto& iv : res.intervals)
    for (const auto& sy : iv.fm.syllables()) used.insert(sy.letter);
  for (auto v : vars) {
    bool fresh_piece = !std::count(pi.vars.begin(), pi.vars.end(), v);
    if (fresh_piece && !used.count(v)) {
      for (auto& [name, list] : out.pieces) list.erase(std::remove(list.begin(), list.end(), letter_name(v)), list.end());
      continue;
    }
    res.vars.push_back(v);
    res.alpha.set(v, alpha.image(v));
  }
  for (const auto& r : pi.delta)
    if (!longv.count(r.var) && !mentions(r.value, longv)) res.delta.push_back(r);

  auto check = verify_solution(res);
  if (!check.ok) {
    std::string why = first_problem(check);
    if (!out.omitted.empty()) throw EmptySidePiece("after omitting empty pieces: " + why);
    throw InconsistentBoundary("transported solution fails: " + why);
  }
  out.result = std::move(res);
  return out;
}

SplitCase parse_split_case(const std::string& s) {
  if (s == "inside-last-var") return SplitCase::InsideLastVar;
  if (s == "at-var-junction") return SplitCase::AtVarJunction;
  if (s == "inside-inner-var") return SplitCase::InsideInnerVar;
  if (s == "inside-first-var") return SplitCase::InsideFirstVar;
  throw ParseError("unknown split case '" + s + "'");
}

CutEquation split_interval(const CutEquation& pi, const std::string& id, std::int64_t pos,
                           SplitCase sc) {
  std::size_t idx = pi.intervals.size();
  for (std::size_t i = 0; i < pi.intervals.size(); ++i)
    if (pi.intervals[i].id == id) idx = i;
  if (idx == pi.intervals.size()) throw InvalidForm("no interval " + id);
  const Interval& iv = pi.intervals[idx];
  const Word& W = iv.fx;
  if (pos <= 0 || pos >= W.length())
    throw InconsistentBoundary("split position must be strictly inside f_X");
  Word bl = pi.beta.apply(W.prefix(pos));
  Word br = pi.beta.apply(W.suffix(W.length() - pos));
  std::int64_t c = cancellation(bl, br);
  Word Wb = bl * br;
  std::int64_t theta = bl.length() - c;
  if (theta <= 0 || theta >= Wb.length())
    throw InconsistentBoundary("boundary falls on an end of W^beta");
  Word nu = bl.suffix(c);
  auto sp = spans(iv.fm, pi.alpha);
  const std::size_t n = sp.size();

  std::size_t t = n;
  bool at_junction = false;
  for (std::size_t j = 0; j < n; ++j) {
    if (sp[j].end == theta && j + 1 < n) {
      t = j;
      at_junction = true;
    } else if (sp[j].begin < theta && theta < sp[j].end) {
      t = j;
    }
  }
  if (t == n) throw InconsistentBoundary("boundary outside the partition");
  auto want = [&](bool ok, const char* what) {
    if (!ok) throw InconsistentBoundary(std::string("boundary is not ") + what);
  };

  CutEquation out = pi;
  Fresh fresh(names_in(pi));
  std::vector<SignedLetter> letters = iv.fm.letters();
  std::vector<SignedLetter> left(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(t));
  std::vector<SignedLetter> right(letters.begin() + static_cast<std::ptrdiff_t>(t + 1), letters.end());
  const SignedLetter cur = letters[t];
  const LetterId mu = letter_of(cur);
  const bool is_var = letter_kind(mu) == LetterKind::CutVariable;
  const std::int64_t off = theta - sp[t].begin;
  Word first = sp[t].img.prefix(off);
  Word rest = sp[t].img.suffix(sp[t].img.length() - off);
  std::vector<SignedLetter> f1, f2;

  auto add_var = [&](LetterId v, const Word& img) {
    out.vars.push_back(v);
    out.alpha.set(v, img);
  };
  auto cancel_var = [&](const std::string& prefix) -> std::optional<LetterId> {
    if (c == 0) return std::nullopt;
    LetterId v = fresh.next(prefix);
    add_var(v, nu);
    return v;
  };

  switch (sc) {
    case SplitCase::AtVarJunction: {
      want(at_junction, "at a junction");
      f1.assign(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(t + 1));
      f2.assign(letters.begin() + static_cast<std::ptrdiff_t>(t + 1), letters.end());
      if (auto lam = cancel_var("lam")) {
        f1.push_back(signed_letter(*lam, 1));
        f2.insert(f2.begin(), signed_letter(*lam, -1));
      }
      break;
    }
    case SplitCase::InsideLastVar: {
      want(!at_junction && t + 1 == n && is_var, "inside the last variable");
      // mu^e reads first.rest; mu is replaced everywhere.
      LetterId lam = fresh.next("lam");
      LetterId mp = fresh.named(letter_name(mu) + "'");
      Word repl;
      if (cur > 0) {
        add_var(lam, first);
        add_var(mp, rest);
        repl = Word::gen(lam) * Word::gen(mp);
      } else {
        add_var(lam, first.inverse());
        add_var(mp, rest.inverse());
        repl = Word::gen(mp) * Word::gen(lam);
      }
      int e = cur > 0 ? 1 : -1;
      f1 = left;
      f1.push_back(signed_letter(lam, e));
      f2.clear();
      if (auto v = cancel_var("nu")) {
        f1.push_back(signed_letter(*v, 1));
        f2.push_back(signed_letter(*v, -1));
      }
      f2.push_back(signed_letter(mp, e));
      out.vars.erase(std::remove(out.vars.begin(), out.vars.end(), mu), out.vars.end());
      Homomorphism a2;
      for (const auto& [k, w] : out.alpha.assignments())
        if (k != mu) a2.set(k, w);
      out.alpha = a2;
      for (auto& other : out.intervals) other.fm = substitute(other.fm, mu, repl);
      std::vector<Relation> d2;
      for (const auto& r : out.delta) {
        if (r.var == mu) continue;
        d2.push_back({r.var, substitute(r.value, mu, repl)});
      }
      out.delta = d2;
      break;
    }
    case SplitCase::InsideInnerVar:
    case SplitCase::InsideFirstVar: {
      bool first_case = sc == SplitCase::InsideFirstVar;
      want(!at_junction && is_var && (first_case ? t == 0 : t + 1 < n),
           first_case ? "inside the first variable" : "inside an inner variable");
      Word r1 = first_case ? first * nu : first;
      Word r2 = first_case ? nu.inverse() * rest : rest;
      LetterId ma = fresh.named(letter_name(mu) + "'");
      LetterId mb = fresh.named(letter_name(mu) + "''");
      // mu = ma mb; reading mu^-1 gives mb^-1 then ma^-1.
      if (cur > 0) {
        add_var(ma, r1);
        add_var(mb, r2);
      } else {
        add_var(ma, r2.inverse());
        add_var(mb, r1.inverse());
      }
      SignedLetter s1 = cur > 0 ? signed_letter(ma, 1) : signed_letter(mb, -1);
      SignedLetter s2 = cur > 0 ? signed_letter(mb, 1) : signed_letter(ma, -1);
      f1 = left;
      f1.push_back(s1);
      f2.assign(1, s2);
      f2.insert(f2.end(), right.begin(), right.end());
      if (!first_case)
        if (auto lam = cancel_var("lam")) {
          f1.push_back(signed_letter(*lam, 1));
          f2.insert(f2.begin(), signed_letter(*lam, -1));
        }
      out.delta.push_back({mu, Word::gen(ma) * Word::gen(mb)});
      break;
    }
  }

  Interval s1{id + ".1", W.prefix(pos), reduce(f1)};
  Interval s2{id + ".2", W.suffix(W.length() - pos), reduce(f2)};
  out.intervals.erase(out.intervals.begin() + static_cast<std::ptrdiff_t>(idx));
  out.intervals.insert(out.intervals.begin() + static_cast<std::ptrdiff_t>(idx), {s1, s2});
  auto check = verify_solution(out);
  if (!check.ok) throw InconsistentBoundary("split does not verify: " + first_problem(check));
  return out;
}

std::vector<ScheduleStep> parse_schedule(const std::string& text) {
  std::vector<ScheduleStep> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    ScheduleStep st;
    auto at = item.find('@');
    if (at == std::string::npos) throw ParseError("schedule step '" + item + "' needs @size");
    std::string head = item.substr(0, at);
    std::string tail = item.substr(at + 1);
    auto hash = tail.find('#');
    try {
      st.size = std::stoll(tail.substr(0, hash));
      if (hash != std::string::npos) st.N = std::stoll(tail.substr(hash + 1));
    } catch (const std::exception&) {
      throw ParseError("bad number in schedule step '" + item + "'");
    }
    auto slash = head.find('/');
    st.period = parse_word(head.substr(0, slash));
    if (slash != std::string::npos) st.R = parse_word(head.substr(slash + 1));
    out.push_back(std::move(st));
  }
  return out;
}

Trace iterate(const CutEquation& start, const std::vector<ScheduleStep>& steps, int grid) {
  if (grid < 1) grid = 1;
  Trace tr;
  CutEquation cur = start;
  const std::int64_t bound = 2 * metrics(start).S;
  auto record = [&](int step, bool identity) {
    TraceEntry e;
    e.step = step;
    e.comp = complexity(cur);
    e.m = metrics(cur);
    e.identity = identity;
    e.verified = verify_solution(cur).ok;
    if (!e.verified) tr.violations.push_back("step " + std::to_string(step) + ": solution fails");
    if (!tr.entries.empty()) {
      const auto& p = tr.entries.back();
      if (compare(e.comp, p.comp) > 0)
        tr.violations.push_back("step " + std::to_string(step) + ": complexity increased");
      if (e.m.length > p.m.length)
        tr.violations.push_back("step " + std::to_string(step) + ": length increased");
      if (e.m.S > bound) tr.violations.push_back("step " + std::to_string(step) + ": S exceeds 2S");
      if (e.m.width > bound)
        tr.violations.push_back("step " + std::to_string(step) + ": width exceeds 2S");
    }
    tr.entries.push_back(e);
  };
  record(0, false);
  const std::size_t run = static_cast<std::size_t>(3 * grid + 1);
  for (std::size_t i = 0; i < steps.size() && !tr.entries.back().comp.is_zero(); ++i) {
    GammaCutEquation g{cur, steps[i].period, steps[i].R, steps[i].size, 0, {}};
    auto res = t_star(g, TStarOptions{steps[i].N, std::nullopt});
    cur = res.result;
    record(static_cast<int>(i + 1), res.identity);
    if (tr.stabilized_at < 0 && tr.entries.size() >= run) {
      std::size_t from = tr.entries.size() - run;
      bool same = from % static_cast<std::size_t>(grid) == 0;
      for (std::size_t k = from + 1; same && k < tr.entries.size(); ++k)
        same = tr.entries[k].comp == tr.entries[from].comp;
      if (same) tr.stabilized_at = static_cast<int>(from);
    }
  }
  tr.reached_zero = tr.entries.back().comp.is_zero();
  tr.last = cur;
  return tr;
}

namespace {

struct Builder {
  CutEquation pi;
  Fresh fresh{{"x", "y", "a", "b"}};
  int next_id = 0;

  // Cuts W^beta into `parts` pieces at the given interior positions.
  void add(const Word& W, std::vector<std::int64_t> cuts) {
    Word wb = pi.beta.apply(W);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<SignedLetter> fm;
    std::int64_t prev = 0;
    cuts.push_back(wb.length());
    for (auto c : cuts) {
      if (c <= prev || c > wb.length()) continue;
      LetterId v = fresh.next("mu");
      pi.vars.push_back(v);
      pi.alpha.set(v, wb.slice(prev, c - prev));
      fm.push_back(signed_letter(v, 1));
      prev = c;
    }
    pi.intervals.push_back({"s" + std::to_string(++next_id), W, reduce(fm)});
  }
  void mirror(std::size_t i) {
    Interval m = pi.intervals.at(i);
    m.fx = m.fx.inverse();
    m.fm = m.fm.inverse();
    m.id = "s" + std::to_string(++next_id);
    pi.intervals.push_back(m);
  }
};

}  // namespace

CutEquation synthetic_cut_equation(std::uint64_t seed, const SyntheticOptions& opt) {
  std::mt19937_64 rng(seed);
  auto uni = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  auto sign = [&]() { return uni(0, 1) ? 1 : -1; };
  LetterId x = intern("x"), y = intern("y");
  Word a = Word::gen("a"), b = Word::gen("b");
  Builder B;
  B.pi.params = {x, y};
  B.pi.beta.set(x, opt.twisted ? b.inverse() * a * b : a);
  B.pi.beta.set(y, b);
  const std::int64_t l = std::max<std::int64_t>(1, opt.size);
  const int parts = std::max(2, opt.max_parts);
  const std::int64_t N = (l + 2) * parts;
  auto big = [&]() { return uni(N + 2, N + 8); };

  auto random_cuts = [&](const Word& W, int k) {
    std::int64_t len = B.pi.beta.apply(W).length();
    std::vector<std::int64_t> cuts;
    for (int i = 1; i < k && len > 1; ++i) cuts.push_back(uni(1, len - 1));
    return cuts;
  };

  switch (opt.shape) {
    case SyntheticOptions::Shape::Random: {
      for (int i = 0; i < std::max(1, opt.intervals); ++i) {
        int syl = static_cast<int>(uni(3, 6));
        bool start_x = uni(0, 1) == 1;
        std::vector<int> xs, ys;
        for (int s = 0; s < syl; ++s) ((s % 2 == 0) == start_x ? xs : ys).push_back(s);
        int bx = xs[static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(xs.size()) - 1))];
        int by = (!ys.empty() && uni(0, 1))
                     ? ys[static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(ys.size()) - 1))]
                     : -1;
        std::vector<Syllable> w;
        for (int s = 0; s < syl; ++s) {
          bool isx = (s % 2 == 0) == start_x;
          std::int64_t e = (s == bx || s == by) ? big() : uni(1, 2);
          w.push_back({isx ? x : y, sign() * e});
        }
        Word W = Word::from_syllables(w);
        B.add(W, random_cuts(W, static_cast<int>(uni(2, parts))));
      }
      break;
    }
    case SyntheticOptions::Shape::Collapse: {
      for (int i = 0; i < std::max(1, opt.intervals); ++i) {
        std::int64_t e0 = sign() * uni(1, 2), e1 = sign() * uni(1, 2), q = big();
        Word W = Word::gen(y, e0) * Word::gen(x, q) * Word::gen(y, e1);
        // the first variable ends where the last flanking copy of a begins
        Word wb = B.pi.beta.apply(W);
        std::int64_t cut = 1;
        for (auto [s, k] : period_chains(wb, a))
          if (k >= 3) cut = s + k - 1;
        B.add(W, {cut});
      }
      break;
    }
    case SyntheticOptions::Shape::Peel: {
      std::int64_t np = 2;
      std::int64_t M = (l + 2) * np;
      auto q = [&]() { return uni(M + 2, M + 6); };
      Word xy = Word::gen(x) * Word::gen(y);
      Word xyi = Word::gen(x) * Word::gen(y, -1);
      Word W = Word::gen(y, uni(1, 2)) * Word::gen(x, q()) * Word::gen(y, q()) * power(xy, q()) *
               power(xyi, q()) * Word::gen(x, -uni(1, 2));
      std::int64_t len = B.pi.beta.apply(W).length();
      B.add(W, {len - uni(1, 2)});
      break;
    }
  }
  if (opt.mirrored) B.mirror(0);
  for (int i = 0; i < opt.short_intervals && opt.shape == SyntheticOptions::Shape::Random; ++i) {
    std::vector<Syllable> w;
    int syl = static_cast<int>(uni(2, 4));
    for (int s = 0; s < syl; ++s) w.push_back({s % 2 ? y : x, sign() * uni(1, std::min<std::int64_t>(2, l + 1))});
    Word W = Word::from_syllables(w);
    B.add(W, random_cuts(W, static_cast<int>(uni(1, 2))));
  }
  return B.pi;
}

}  // namespace fg
