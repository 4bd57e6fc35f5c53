#pragma once

// Compressed words: immutable straight-line programs with concatenation,
// power and inverse nodes. Equality of factors is decided by a pair of
// polynomial hashes modulo 2^61-1, so comparisons are probabilistic (the
// collision probability per comparison is below 2^-100 for random bases).

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "fg/word.hpp"

namespace fg {

struct CNode;
using CPtr = std::shared_ptr<const CNode>;

struct Hash2 {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool operator==(const Hash2&) const = default;
};

// Hash summary of a factor.
struct Segment {
  std::int64_t len = 0;
  Hash2 h;   // forward hash
  Hash2 hi;  // hash of the inverse word
  Hash2 pw;  // base^len
};

struct CNode {
  enum class Kind { Letter, Concat, Power, Inverse };
  Kind kind = Kind::Letter;
  SignedLetter letter = 0;
  CPtr left;
  CPtr right;
  std::int64_t count = 0;
  Segment seg;
  int depth = 0;
};

class CWord {
 public:
  CWord() = default;
  explicit CWord(const Word& w);

  std::int64_t length() const { return node_ ? node_->seg.len : 0; }
  bool empty() const { return length() == 0; }
  int depth() const { return node_ ? node_->depth : 0; }
  const CPtr& node() const { return node_; }

  SignedLetter at(std::int64_t i) const;
  Segment segment(std::int64_t pos, std::int64_t n) const;
  CWord slice(std::int64_t pos, std::int64_t n) const;
  CWord prefix(std::int64_t n) const { return slice(0, n); }
  CWord suffix(std::int64_t n) const { return slice(length() - n, n); }
  CWord inverse() const;
  // Expands to an explicit word; throws std::length_error beyond `limit`.
  Word expand(std::int64_t limit = std::int64_t{1} << 24) const;

  bool operator==(const CWord& o) const;

  // Concatenation without reduction; the caller guarantees no cancellation.
  static CWord join(const CWord& u, const CWord& v);
  static CWord repeat(const CWord& base, std::int64_t k);

 private:
  explicit CWord(CPtr p) : node_(std::move(p)) {}
  CPtr node_;
};

CWord operator*(const CWord& u, const CWord& v);  // freely reduced product
std::int64_t cancellation(const CWord& u, const CWord& v);
CWord power(const CWord& w, std::int64_t k);

struct CCyclicReduction {
  CWord core;
  CWord conjugator;  // w = conjugator^-1 core conjugator
};
CCyclicReduction cyclic_reduce(const CWord& w);
bool is_cyclically_reduced(const CWord& w);

// Largest e with w = r^e.
std::int64_t power_root_exponent(const CWord& w);

bool range_equal(const CWord& a, std::int64_t pa, const CWord& b, std::int64_t pb,
                 std::int64_t n);
// Whether `pattern` occurs in `text`. Each distinct node of the text is
// scanned once near its internal boundaries, so the cost is roughly
// |pattern| times the number of long nodes.
bool contains(const CWord& text, const CWord& pattern);

class CHomomorphism {
 public:
  void set(LetterId g, CWord w) { images_[g] = std::move(w); }
  CWord image(LetterId g) const;
  CWord apply(const Word& w) const;

 private:
  std::map<LetterId, CWord> images_;
};

}  // namespace fg
