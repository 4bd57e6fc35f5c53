#pragma once

#include <string>
#include <vector>

#include "fg/word.hpp"

namespace fg {

// A maximal stable occurrence of A^q: the host reads W1 A A^q A W2 around it
// (A^-1 flanking for q < 0). `start` is the first letter of A^q.
struct Occurrence {
  Word period;
  std::int64_t start = 0;
  std::int64_t q = 0;
  bool stable = true;

  std::int64_t length() const { return (q < 0 ? -q : q) * period.length(); }
  std::int64_t end() const { return start + length(); }
  bool operator==(const Occurrence&) const = default;
};

// host = B1 A^q1 B2 ... A^qk B(k+1); consecutive factors cancel by at most d.
struct Decomposition {
  Word host;
  Word period;
  std::vector<Word> sides;
  std::vector<std::int64_t> exps;
  std::int64_t d = 0;
  // Induced forms only: whether A'^{sgn q_i} survives at the left/right junction.
  std::vector<int> eps;
  std::vector<int> delta;

  std::size_t k() const { return exps.size(); }
  std::vector<Word> factors() const;
  Word reassemble() const;
  bool operator==(const Decomposition&) const = default;
};

// With allow_constant the non-constant letter requirement is waived (periods
// inside the plain free group).
bool is_period(const Word& w, bool allow_constant = false);

// Maximal runs of consecutive copies of P in W as (offset of the first copy, copies).
std::vector<std::pair<std::int64_t, std::int64_t>> period_chains(const Word& W, const Word& P);

std::vector<Occurrence> stable_occurrences(const Word& W, const Word& A, std::int64_t min_q);

// All maximal stable occurrences with |q| >= min_q as a decomposition; k may be 0.
Decomposition canonical_decomposition(const Word& W, const Word& A, std::int64_t min_q = 1);
Decomposition n_large_decomposition(const Word& W, const Word& A, std::int64_t N);

// U = D^-1 A D: D1 = B1 D, Di = D^-1 Bi D, D(k+1) = D^-1 B(k+1), with d = |D|.
Decomposition a_to_u(const Decomposition& dec, const Word& D);
Decomposition u_to_a(const Decomposition& dec, const Word& D);

struct RankLT {
  int rank = 0;
  Word lt;
};
RankLT rank_and_lt(const Word& W, const std::vector<Word>& periods, std::int64_t N);

// N-large A*-decomposition with A* = R^-1 A R.
Decomposition star_decomposition(const Word& W, const Word& A, const Word& R, std::int64_t N);

// Largest |q| over the canonical stable decomposition, 0 without occurrences.
std::int64_t upper_bound(const Word& W, const Word& A);
bool has_size(const Decomposition& dec, std::int64_t l, std::int64_t r);

// `[b a][A^4][a b]`
std::string to_string(const Decomposition& dec);
// `A=<word> d=<n> [..][A^q]..`; parse_decomposition inverts it exactly.
std::string serialize(const Decomposition& dec);
Decomposition parse_decomposition(const std::string& text);

}  // namespace fg
