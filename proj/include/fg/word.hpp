#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fg/errors.hpp"

namespace fg {

enum class LetterKind { Constant, Coefficient, Variable, CutVariable };

using LetterId = std::uint32_t;

// Letters are interned process-wide; the kind is inferred from the name on
// first use unless given explicitly.
LetterId intern(std::string_view name);
LetterId intern(std::string_view name, LetterKind kind);
const std::string& letter_name(LetterId id);
LetterKind letter_kind(LetterId id);
LetterKind infer_kind(std::string_view name);

struct Syllable {
  LetterId letter;
  std::int64_t exp;
  bool operator==(const Syllable&) const = default;
};

// Signed letter: +(id+1) for the letter, -(id+1) for its inverse.
using SignedLetter = std::int64_t;
inline SignedLetter signed_letter(LetterId id, int sign) {
  return sign > 0 ? static_cast<SignedLetter>(id) + 1 : -(static_cast<SignedLetter>(id) + 1);
}
inline LetterId letter_of(SignedLetter s) { return static_cast<LetterId>((s > 0 ? s : -s) - 1); }

class Word {
 public:
  Word() = default;

  static Word gen(LetterId id, std::int64_t exp = 1);
  static Word gen(std::string_view name, std::int64_t exp = 1);
  // Merges adjacent syllables and cancels; any input is accepted.
  static Word from_syllables(const std::vector<Syllable>& syl);

  const std::vector<Syllable>& syllables() const { return syl_; }
  std::int64_t length() const { return len_; }
  bool empty() const { return syl_.empty(); }

  Word inverse() const;
  SignedLetter at(std::int64_t i) const;
  SignedLetter first() const;
  SignedLetter last() const;
  Word slice(std::int64_t pos, std::int64_t n) const;
  Word prefix(std::int64_t n) const { return slice(0, n); }
  Word suffix(std::int64_t n) const { return slice(len_ - n, n); }
  std::vector<SignedLetter> letters() const;
  bool has_kind(LetterKind k) const;

  bool operator==(const Word& o) const { return syl_ == o.syl_; }
  std::strong_ordering operator<=>(const Word& o) const;

 private:
  std::vector<Syllable> syl_;
  std::int64_t len_ = 0;
  friend class WordBuilder;
};

// Stack-style accumulator that keeps its content freely reduced.
class WordBuilder {
 public:
  void push(LetterId g, std::int64_t e);
  void push(SignedLetter s) { push(letter_of(s), s > 0 ? 1 : -1); }
  void append(const Word& w);
  void append_inverse(const Word& w);
  std::int64_t length() const { return len_; }
  Word build() &&;
  Word snapshot() const;

 private:
  std::vector<Syllable> syl_;
  std::int64_t len_ = 0;
};

Word reduce(const std::vector<SignedLetter>& raw);
Word operator*(const Word& u, const Word& v);
Word power(const Word& w, std::int64_t k);
Word conjugate(const Word& w, const Word& c);  // c^-1 w c
Word commutator(const Word& u, const Word& v);  // u^-1 v^-1 u v

// Letter-level length of the maximal segment cancelled in u*v.
std::int64_t cancellation(const Word& u, const Word& v);

struct ConcatWitness {
  Word left;
  Word right;
  Word cancelled;
  Word result;
};

class CancellationViolation : public Error {
 public:
  CancellationViolation(ConcatWitness w, const std::string& what)
      : Error("CancellationViolation", what), witness(std::move(w)) {}
  ConcatWitness witness;
};

ConcatWitness concat(const Word& u, const Word& v);
Word concat_nc(const Word& u, const Word& v);
std::pair<Word, std::int64_t> concat_bounded(const Word& u, const Word& v, std::int64_t d);
// True iff the listed factors multiply without any cancellation.
bool reduced_as_written(const std::vector<Word>& factors);

struct CyclicReduction {
  Word core;
  Word conjugator;  // w = conjugator^-1 core conjugator
};
CyclicReduction cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

std::set<Word> subwords(const Word& w, std::int64_t n, bool cyclic);

struct PowerRoot {
  Word root;
  std::int64_t exponent;
};
PowerRoot power_root(const Word& w);

// Letter offsets of every occurrence of `pat` in `host`.
std::vector<std::int64_t> find_all(const Word& host, const Word& pat);
bool contains(const Word& host, const Word& pat);
bool starts_with(const Word& w, const Word& p);
bool ends_with(const Word& w, const Word& s);

class Homomorphism {
 public:
  Homomorphism() = default;
  explicit Homomorphism(std::map<LetterId, Word> m) : map_(std::move(m)) {}

  void set(LetterId g, Word image) { map_[g] = std::move(image); }
  void set(std::string_view name, Word image) { set(intern(name), std::move(image)); }
  bool assigns(LetterId g) const { return map_.count(g) != 0; }
  const Word* image_of(LetterId g) const;
  Word image(LetterId g) const;
  const std::map<LetterId, Word>& assignments() const { return map_; }

  Word apply(const Word& w) const;

  // (then_g after this)(x) = g(this(x)); letters fixed by this map keep g's image.
  Homomorphism then(const Homomorphism& g) const;

  bool operator==(const Homomorphism& o) const { return map_ == o.map_; }

 private:
  std::map<LetterId, Word> map_;
};

Word apply_hom(const Homomorphism& h, const Word& w);

// Text format: `a^2 b^-1 x1`, identity `1`.
Word parse_word(std::string_view text);
std::string to_string(const Word& w);
// `x=a b;y=b` assignment lists.
Homomorphism parse_assignment(std::string_view text);
std::string to_string(const Homomorphism& h);

// Deterministic ordering for printed sets: by length, then by text.
std::vector<std::string> sorted_strings(const std::set<Word>& s);

}  // namespace fg
