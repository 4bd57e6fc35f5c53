#include "fg/word.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace fg {

namespace {

struct LetterTable {
  std::mutex mu;
  std::vector<std::pair<std::string, LetterKind>> entries;
  std::unordered_map<std::string, LetterId> index;
};

LetterTable& table() {
  static LetterTable t;
  return t;
}

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool valid_name(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '\'';
  });
}

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

}  // namespace

LetterKind infer_kind(std::string_view name) {
  if (name == "d") return LetterKind::Coefficient;
  if (name.size() > 1 && name[0] == 'c' && all_digits(name.substr(1))) return LetterKind::Coefficient;
  if (!name.empty() && (name[0] == 'x' || name[0] == 'y' || name[0] == 'z') &&
      all_digits(name.substr(1)))
    return LetterKind::Variable;
  if (name.rfind("mu", 0) == 0 || name.rfind("nu", 0) == 0 || name.rfind("lam", 0) == 0)
    return LetterKind::CutVariable;
  return LetterKind::Constant;
}

LetterId intern(std::string_view name) { return intern(name, infer_kind(name)); }

LetterId intern(std::string_view name, LetterKind kind) {
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  std::string key(name);
  auto it = t.index.find(key);
  if (it != t.index.end()) return it->second;
  auto id = static_cast<LetterId>(t.entries.size());
  t.entries.emplace_back(key, kind);
  t.index.emplace(key, id);
  return id;
}

const std::string& letter_name(LetterId id) {
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.entries.at(id).first;
}

LetterKind letter_kind(LetterId id) {
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.entries.at(id).second;
}

// ---------------------------------------------------------------- WordBuilder

void WordBuilder::push(LetterId g, std::int64_t e) {
  if (e == 0) return;
  if (!syl_.empty() && syl_.back().letter == g) {
    auto& b = syl_.back();
    std::int64_t before = iabs(b.exp);
    b.exp += e;
    len_ += iabs(b.exp) - before;
    if (b.exp == 0) syl_.pop_back();
    return;
  }
  syl_.push_back({g, e});
  len_ += iabs(e);
}

void WordBuilder::append(const Word& w) {
  for (const auto& s : w.syllables()) push(s.letter, s.exp);
}

void WordBuilder::append_inverse(const Word& w) {
  const auto& s = w.syllables();
  for (auto it = s.rbegin(); it != s.rend(); ++it) push(it->letter, -it->exp);
}

Word WordBuilder::build() && {
  Word w;
  w.syl_ = std::move(syl_);
  w.len_ = len_;
  return w;
}

Word WordBuilder::snapshot() const {
  Word w;
  w.syl_ = syl_;
  w.len_ = len_;
  return w;
}

// ----------------------------------------------------------------------- Word

Word Word::gen(LetterId id, std::int64_t exp) {
  WordBuilder b;
  b.push(id, exp);
  return std::move(b).build();
}

Word Word::gen(std::string_view name, std::int64_t exp) { return gen(intern(name), exp); }

Word Word::from_syllables(const std::vector<Syllable>& syl) {
  WordBuilder b;
  for (const auto& s : syl) b.push(s.letter, s.exp);
  return std::move(b).build();
}

Word Word::inverse() const {
  WordBuilder b;
  b.append_inverse(*this);
  return std::move(b).build();
}

SignedLetter Word::at(std::int64_t i) const {
  if (i < 0 || i >= len_) throw std::out_of_range("Word::at");
  for (const auto& s : syl_) {
    std::int64_t a = iabs(s.exp);
    if (i < a) return signed_letter(s.letter, s.exp > 0 ? 1 : -1);
    i -= a;
  }
  throw std::out_of_range("Word::at");
}

SignedLetter Word::first() const {
  if (syl_.empty()) throw EmptyWord("first letter of the identity");
  return signed_letter(syl_.front().letter, syl_.front().exp > 0 ? 1 : -1);
}

SignedLetter Word::last() const {
  if (syl_.empty()) throw EmptyWord("last letter of the identity");
  return signed_letter(syl_.back().letter, syl_.back().exp > 0 ? 1 : -1);
}

Word Word::slice(std::int64_t pos, std::int64_t n) const {
  if (pos < 0 || n < 0 || pos + n > len_) throw std::out_of_range("Word::slice");
  WordBuilder b;
  std::int64_t off = 0;
  for (const auto& s : syl_) {
    if (n == 0) break;
    std::int64_t a = iabs(s.exp);
    if (off + a <= pos) {
      off += a;
      continue;
    }
    std::int64_t start = std::max<std::int64_t>(pos - off, 0);
    std::int64_t take = std::min(a - start, n);
    b.push(s.letter, s.exp > 0 ? take : -take);
    n -= take;
    off += a;
  }
  return std::move(b).build();
}

std::vector<SignedLetter> Word::letters() const {
  std::vector<SignedLetter> out;
  out.reserve(static_cast<std::size_t>(len_));
  for (const auto& s : syl_) {
    SignedLetter c = signed_letter(s.letter, s.exp > 0 ? 1 : -1);
    for (std::int64_t k = 0; k < iabs(s.exp); ++k) out.push_back(c);
  }
  return out;
}

bool Word::has_kind(LetterKind k) const {
  return std::any_of(syl_.begin(), syl_.end(),
                     [k](const Syllable& s) { return letter_kind(s.letter) == k; });
}

std::strong_ordering Word::operator<=>(const Word& o) const {
  std::size_t n = std::min(syl_.size(), o.syl_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = syl_[i].letter <=> o.syl_[i].letter; c != 0) return c;
    if (auto c = syl_[i].exp <=> o.syl_[i].exp; c != 0) return c;
  }
  return syl_.size() <=> o.syl_.size();
}

// ------------------------------------------------------------------ algebra

Word reduce(const std::vector<SignedLetter>& raw) {
  WordBuilder b;
  for (auto s : raw) b.push(s);
  return std::move(b).build();
}

Word operator*(const Word& u, const Word& v) {
  WordBuilder b;
  b.append(u);
  b.append(v);
  return std::move(b).build();
}

Word power(const Word& w, std::int64_t k) {
  if (k == 0 || w.empty()) return Word();
  if (k < 0) return power(w.inverse(), -k);
  if (w.syllables().size() == 1) {
    const auto& s = w.syllables().front();
    return Word::gen(s.letter, s.exp * k);
  }
  auto cr = cyclic_reduce(w);
  WordBuilder b;
  b.append_inverse(cr.conjugator);
  for (std::int64_t i = 0; i < k; ++i) b.append(cr.core);
  b.append(cr.conjugator);
  return std::move(b).build();
}

Word conjugate(const Word& w, const Word& c) {
  WordBuilder b;
  b.append_inverse(c);
  b.append(w);
  b.append(c);
  return std::move(b).build();
}

Word commutator(const Word& u, const Word& v) {
  WordBuilder b;
  b.append_inverse(u);
  b.append_inverse(v);
  b.append(u);
  b.append(v);
  return std::move(b).build();
}

std::int64_t cancellation(const Word& u, const Word& v) {
  const auto& a = u.syllables();
  const auto& b = v.syllables();
  std::int64_t c = 0;
  std::size_t i = a.size(), j = 0;
  std::int64_t ra = 0, rb = 0;  // exponents remaining in the current syllables
  while (i > 0 && j < b.size()) {
    const auto& sa = a[i - 1];
    const auto& sb = b[j];
    if (ra == 0) ra = sa.exp;
    if (rb == 0) rb = sb.exp;
    if (sa.letter != sb.letter || (ra > 0) == (rb > 0)) break;
    std::int64_t take = std::min(iabs(ra), iabs(rb));
    c += take;
    ra += ra > 0 ? -take : take;
    rb += rb > 0 ? -take : take;
    if (ra != 0 && rb != 0) break;
    if (ra == 0 && rb == 0) {
      --i;
      ++j;
    } else {
      break;
    }
  }
  return c;
}

ConcatWitness concat(const Word& u, const Word& v) {
  std::int64_t c = cancellation(u, v);
  ConcatWitness w{u, v, u.suffix(c), u * v};
  return w;
}

Word concat_nc(const Word& u, const Word& v) {
  auto w = concat(u, v);
  if (!w.cancelled.empty())
    throw CancellationViolation(w, "cancellation of length " +
                                       std::to_string(w.cancelled.length()) + " at junction");
  return w.result;
}

std::pair<Word, std::int64_t> concat_bounded(const Word& u, const Word& v, std::int64_t d) {
  auto w = concat(u, v);
  std::int64_t c = w.cancelled.length();
  if (c > d)
    throw CancellationViolation(w, "cancellation " + std::to_string(c) + " exceeds bound " +
                                       std::to_string(d));
  return {w.result, c};
}

bool reduced_as_written(const std::vector<Word>& factors) {
  WordBuilder b;
  std::int64_t expected = 0;
  for (const auto& f : factors) {
    b.append(f);
    expected += f.length();
    if (b.length() != expected) return false;
  }
  return true;
}

CyclicReduction cyclic_reduce(const Word& w) {
  auto syl = w.syllables();
  std::size_t lo = 0, hi = syl.size();  // active range [lo, hi)
  WordBuilder conj_rev;                  // stripped tail letters, outermost last
  std::vector<Syllable> stripped;        // tail pieces in order of removal
  while (hi - lo >= 2) {
    auto& f = syl[lo];
    auto& l = syl[hi - 1];
    if (f.letter != l.letter || (f.exp > 0) == (l.exp > 0)) break;
    std::int64_t take = std::min(iabs(f.exp), iabs(l.exp));
    stripped.push_back({l.letter, l.exp > 0 ? take : -take});
    f.exp += f.exp > 0 ? -take : take;
    l.exp += l.exp > 0 ? -take : take;
    if (l.exp == 0) --hi;
    if (f.exp == 0) ++lo;
  }
  std::vector<Syllable> core(syl.begin() + static_cast<std::ptrdiff_t>(lo),
                             syl.begin() + static_cast<std::ptrdiff_t>(hi));
  // The conjugator is the removed tail read left to right.
  std::reverse(stripped.begin(), stripped.end());
  return {Word::from_syllables(core), Word::from_syllables(stripped)};
}

bool is_cyclically_reduced(const Word& w) {
  if (w.syllables().size() < 2) return true;
  const auto& f = w.syllables().front();
  const auto& l = w.syllables().back();
  return !(f.letter == l.letter && (f.exp > 0) != (l.exp > 0));
}

std::set<Word> subwords(const Word& w, std::int64_t n, bool cyclic) {
  std::set<Word> out;
  if (n <= 0) return out;
  std::int64_t L = w.length();
  if (L == 0) return out;
  Word host = w;
  std::int64_t starts = L - n + 1;
  if (cyclic) {
    WordBuilder b;
    std::int64_t reps = n / L + 2;
    for (std::int64_t i = 0; i < reps; ++i) b.append(w);
    host = std::move(b).build().prefix(L + n - 1);
    starts = L;
  }
  if (starts <= 0) return out;
  // Walk syllables; inside a long syllable every window is the same pure power,
  // so only one start per run of identical windows is materialized.
  const auto& syl = host.syllables();
  std::vector<std::int64_t> offs(syl.size() + 1, 0);
  for (std::size_t i = 0; i < syl.size(); ++i) offs[i + 1] = offs[i] + iabs(syl[i].exp);
  std::size_t si = 0;
  for (std::int64_t s = 0; s < starts;) {
    while (offs[si + 1] <= s) ++si;
    std::int64_t in_syl_end = offs[si + 1];
    if (in_syl_end - s >= n) {
      out.insert(Word::gen(syl[si].letter, syl[si].exp > 0 ? n : -n));
      std::int64_t jump = in_syl_end - n + 1;  // first start whose window leaves the syllable
      s = std::max(s + 1, jump);
      continue;
    }
    WordBuilder win;
    std::int64_t need = n;
    std::int64_t skip = s - offs[si];
    for (std::size_t k = si; need > 0; ++k) {
      std::int64_t avail = iabs(syl[k].exp) - skip;
      std::int64_t take = std::min(avail, need);
      win.push(syl[k].letter, syl[k].exp > 0 ? take : -take);
      need -= take;
      skip = 0;
    }
    out.insert(std::move(win).build());
    ++s;
  }
  return out;
}

PowerRoot power_root(const Word& w) {
  if (w.empty()) throw EmptyWord("power_root of the identity");
  std::int64_t L = w.length();
  for (std::int64_t d = 1; d <= L / 2; ++d) {
    if (L % d != 0) continue;
    Word r = w.prefix(d);
    if (power(r, L / d) == w) return {r, L / d};
  }
  return {w, 1};
}

std::vector<std::int64_t> find_all(const Word& host, const Word& pat) {
  std::vector<std::int64_t> out;
  if (pat.empty() || pat.length() > host.length()) return out;
  auto h = host.letters();
  auto p = pat.letters();
  std::vector<std::size_t> fail(p.size(), 0);
  for (std::size_t i = 1, k = 0; i < p.size(); ++i) {
    while (k > 0 && p[i] != p[k]) k = fail[k - 1];
    if (p[i] == p[k]) ++k;
    fail[i] = k;
  }
  for (std::size_t i = 0, k = 0; i < h.size(); ++i) {
    while (k > 0 && h[i] != p[k]) k = fail[k - 1];
    if (h[i] == p[k]) ++k;
    if (k == p.size()) {
      out.push_back(static_cast<std::int64_t>(i + 1 - p.size()));
      k = fail[k - 1];
    }
  }
  return out;
}

bool contains(const Word& host, const Word& pat) {
  if (pat.empty()) return true;
  return !find_all(host, pat).empty();
}

bool starts_with(const Word& w, const Word& p) {
  return p.length() <= w.length() && w.prefix(p.length()) == p;
}

bool ends_with(const Word& w, const Word& s) {
  return s.length() <= w.length() && w.suffix(s.length()) == s;
}

// -------------------------------------------------------------- homomorphism

const Word* Homomorphism::image_of(LetterId g) const {
  auto it = map_.find(g);
  return it == map_.end() ? nullptr : &it->second;
}

Word Homomorphism::image(LetterId g) const {
  if (auto* w = image_of(g)) return *w;
  return Word::gen(g);
}

Word Homomorphism::apply(const Word& w) const {
  WordBuilder b;
  for (const auto& s : w.syllables()) {
    auto it = map_.find(s.letter);
    if (it == map_.end()) {
      b.push(s.letter, s.exp);
      continue;
    }
    const Word& img = it->second;
    std::int64_t k = iabs(s.exp);
    if (k > 1 && img.syllables().size() > 1) {
      Word p = power(img, s.exp);
      b.append(p);
      continue;
    }
    for (std::int64_t i = 0; i < k; ++i) {
      if (s.exp > 0)
        b.append(img);
      else
        b.append_inverse(img);
    }
  }
  return std::move(b).build();
}

Homomorphism Homomorphism::then(const Homomorphism& g) const {
  Homomorphism out = g;
  for (const auto& [k, v] : map_) out.map_[k] = g.apply(v);
  return out;
}

Word apply_hom(const Homomorphism& h, const Word& w) { return h.apply(w); }

// ---------------------------------------------------------------------- text

Word parse_word(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  WordBuilder b;
  bool any = false;
  while (in >> tok) {
    any = true;
    if (tok == "1") continue;
    std::string name = tok;
    std::int64_t exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string e = tok.substr(caret + 1);
      std::size_t used = 0;
      try {
        exp = std::stoll(e, &used);
      } catch (const std::exception&) {
        throw ParseError("bad exponent in '" + tok + "'");
      }
      if (used != e.size()) throw ParseError("bad exponent in '" + tok + "'");
    }
    if (!valid_name(name)) throw ParseError("bad letter name in '" + tok + "'");
    b.push(intern(name), exp);
  }
  if (!any) throw ParseError("empty word text (write 1 for the identity)");
  return std::move(b).build();
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += letter_name(s.letter);
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

Homomorphism parse_assignment(std::string_view text) {
  Homomorphism h;
  std::string s(text);
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto semi = s.find(';', pos);
    std::string item = s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    pos = semi == std::string::npos ? s.size() + 1 : semi + 1;
    auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("assignment without '=': " + item);
    std::string lhs = item.substr(0, eq);
    lhs.erase(0, lhs.find_first_not_of(" \t"));
    lhs.erase(lhs.find_last_not_of(" \t") + 1);
    if (!valid_name(lhs)) throw ParseError("bad assigned name: " + lhs);
    h.set(intern(lhs), parse_word(item.substr(eq + 1)));
  }
  return h;
}

std::string to_string(const Homomorphism& h) {
  std::vector<std::pair<std::string, std::string>> items;
  for (const auto& [k, v] : h.assignments()) items.emplace_back(letter_name(k), to_string(v));
  std::sort(items.begin(), items.end());
  std::string out;
  for (const auto& [k, v] : items) {
    if (!out.empty()) out += ";";
    out += k + "=" + v;
  }
  return out;
}

std::vector<std::string> sorted_strings(const std::set<Word>& s) {
  std::vector<std::pair<std::int64_t, std::string>> tmp;
  for (const auto& w : s) tmp.emplace_back(w.length(), to_string(w));
  std::sort(tmp.begin(), tmp.end());
  std::vector<std::string> out;
  for (auto& [l, t] : tmp) out.push_back(std::move(t));
  return out;
}

}  // namespace fg
