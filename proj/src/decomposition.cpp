#include "fg/decomposition.hpp"

#include <algorithm>
#include <set>

namespace fg {

std::vector<Word> Decomposition::factors() const {
  std::vector<Word> out;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    out.push_back(sides[i]);
    if (i < exps.size()) out.push_back(fg::power(period, exps[i]));
  }
  return out;
}

Word Decomposition::reassemble() const {
  Word acc;
  for (const auto& f : factors()) acc = concat_bounded(acc, f, d).first;
  return acc;
}

bool is_period(const Word& w, bool allow_constant) {
  if (w.empty() || !is_cyclically_reduced(w)) return false;
  if (power_root(w).exponent != 1) return false;
  if (allow_constant) return true;
  return w.has_kind(LetterKind::Variable) || w.has_kind(LetterKind::CutVariable);
}

namespace {

void require_period(const Word& A) {
  if (A.empty() || !is_cyclically_reduced(A) || power_root(A).exponent != 1)
    throw BadPeriod("'" + to_string(A) + "' is not cyclically reduced and primitive");
}

}  // namespace

std::vector<std::pair<std::int64_t, std::int64_t>> period_chains(const Word& W, const Word& P) {
  auto pos = find_all(W, P);
  std::set<std::int64_t> at(pos.begin(), pos.end());
  std::int64_t L = P.length();
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (auto s : pos) {
    if (at.count(s - L)) continue;
    std::int64_t k = 1;
    while (at.count(s + k * L)) ++k;
    out.emplace_back(s, k);
  }
  return out;
}

std::vector<Occurrence> stable_occurrences(const Word& W, const Word& A, std::int64_t min_q) {
  require_period(A);
  std::vector<Occurrence> out;
  std::int64_t L = A.length();
  for (int sign : {1, -1}) {
    Word P = sign > 0 ? A : A.inverse();
    for (auto [s, k] : period_chains(W, P)) {
      std::int64_t q = k - 2;
      if (q < 1 || q < min_q) continue;
      out.push_back({A, s + L, sign * q, true});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Occurrence& a, const Occurrence& b) { return a.start < b.start; });
  return out;
}

Decomposition canonical_decomposition(const Word& W, const Word& A, std::int64_t min_q) {
  auto occ = stable_occurrences(W, A, min_q);
  Decomposition dec;
  dec.host = W;
  dec.period = A;
  std::int64_t cur = 0;
  for (const auto& o : occ) {
    if (o.start < cur) throw std::logic_error("overlapping stable occurrences");
    dec.sides.push_back(W.slice(cur, o.start - cur));
    dec.exps.push_back(o.q);
    cur = o.end();
  }
  dec.sides.push_back(W.slice(cur, W.length() - cur));
  return dec;
}

Decomposition n_large_decomposition(const Word& W, const Word& A, std::int64_t N) {
  auto dec = canonical_decomposition(W, A, N);
  if (dec.k() == 0)
    throw NoLargeOccurrence("no stable occurrence of " + to_string(A) + "^q with |q| >= " +
                            std::to_string(N));
  return dec;
}

Decomposition a_to_u(const Decomposition& dec, const Word& D) {
  Decomposition out = dec;
  out.period = D.inverse() * dec.period * D;
  std::size_t n = dec.sides.size();
  for (std::size_t i = 0; i < n; ++i) {
    Word s = dec.sides[i];
    if (i > 0) s = D.inverse() * s;
    if (i + 1 < n) s = s * D;
    out.sides[i] = s;
  }
  out.d = dec.d + D.length();
  return out;
}

Decomposition u_to_a(const Decomposition& dec, const Word& D) {
  Decomposition out = dec;
  out.period = D * dec.period * D.inverse();
  std::size_t n = dec.sides.size();
  for (std::size_t i = 0; i < n; ++i) {
    Word s = dec.sides[i];
    if (i > 0) s = D * s;
    if (i + 1 < n) s = s * D.inverse();
    out.sides[i] = s;
  }
  out.d = std::max<std::int64_t>(0, dec.d - D.length());
  return out;
}

RankLT rank_and_lt(const Word& W, const std::vector<Word>& periods, std::int64_t N) {
  for (int s = static_cast<int>(periods.size()); s >= 1; --s)
    if (!stable_occurrences(W, periods[static_cast<std::size_t>(s - 1)], N).empty())
      return {s, periods[static_cast<std::size_t>(s - 1)]};
  return {};
}

Decomposition star_decomposition(const Word& W, const Word& A, const Word& R, std::int64_t N) {
  return a_to_u(n_large_decomposition(W, A, N), R);
}

std::int64_t upper_bound(const Word& W, const Word& A) {
  std::int64_t best = 0;
  for (const auto& o : stable_occurrences(W, A, 1)) best = std::max(best, o.q < 0 ? -o.q : o.q);
  return best;
}

bool has_size(const Decomposition& dec, std::int64_t l, std::int64_t r) {
  for (auto q : dec.exps)
    if ((q < 0 ? -q : q) < l) return false;
  for (const auto& b : dec.sides)
    if (upper_bound(b, dec.period) > r) return false;
  return true;
}

std::string to_string(const Decomposition& dec) {
  std::string out;
  for (std::size_t i = 0; i < dec.sides.size(); ++i) {
    out += "[" + to_string(dec.sides[i]) + "]";
    if (i < dec.exps.size()) out += "[A^" + std::to_string(dec.exps[i]) + "]";
  }
  return out;
}

std::string serialize(const Decomposition& dec) {
  return "A=" + to_string(dec.period) + " d=" + std::to_string(dec.d) + " " + to_string(dec);
}

Decomposition parse_decomposition(const std::string& text) {
  auto lb = text.find('[');
  if (text.rfind("A=", 0) != 0 || lb == std::string::npos)
    throw ParseError("decomposition must read 'A=<word> d=<n> [..]..'");
  std::string head = text.substr(2, lb - 2);
  auto dp = head.rfind(" d=");
  if (dp == std::string::npos) throw ParseError("missing d=");
  Decomposition dec;
  dec.period = parse_word(head.substr(0, dp));
  try {
    dec.d = std::stoll(head.substr(dp + 3));
  } catch (const std::exception&) {
    throw ParseError("bad d= value");
  }
  std::size_t i = lb;
  bool want_side = true;
  while (i < text.size()) {
    if (text[i] != '[') throw ParseError("expected '[' in factor list");
    auto close = text.find(']', i);
    if (close == std::string::npos) throw ParseError("unterminated factor");
    std::string body = text.substr(i + 1, close - i - 1);
    if (want_side) {
      dec.sides.push_back(parse_word(body));
    } else {
      if (body.rfind("A^", 0) != 0) throw ParseError("expected [A^q]");
      try {
        dec.exps.push_back(std::stoll(body.substr(2)));
      } catch (const std::exception&) {
        throw ParseError("bad exponent in '" + body + "'");
      }
    }
    want_side = !want_side;
    i = close + 1;
  }
  if (want_side || dec.sides.empty()) throw ParseError("factor list must end with a side factor");
  dec.host = dec.reassemble();
  return dec;
}

}  // namespace fg
