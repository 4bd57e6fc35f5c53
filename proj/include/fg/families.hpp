#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fg/gamma.hpp"
#include "fg/quadratic.hpp"
#include "fg/word.hpp"

namespace fg {

// b a^{m1} b a^{m2} b ... b
Word merzljakov_word(const std::vector<std::int64_t>& exps);
std::vector<Word> merzljakov_words(const std::vector<std::vector<std::int64_t>>& specs);

struct SolutionFamily {
  BasicSequence G;
  Homomorphism base;
  int L = 0;
  std::vector<Tuple> P;

  // psi_{L,p} = phi_{L,p} followed by the base solution.
  Homomorphism member(const Tuple& p) const;
  bool verify(const Tuple& p) const;
  // Whether psi_p tells the words of each pair apart.
  std::vector<bool> separates(const Tuple& p, const std::vector<std::pair<Word, Word>>& pairs) const;
};

SolutionFamily family(const BasicSequence& G, int L, std::vector<Tuple> P, const Homomorphism& base);

// Per-index parameters; missing entries take the defaults n=20, k=2, m=1, q=3.
struct BigPowerParams {
  std::vector<std::int64_t> n, k, m, q;
  std::int64_t s = 1;  // power of d in the n = 0 variant
  Tuple p;             // tuple for phi; defaults to (3, 4, 5, ...)

  std::int64_t n_at(int i) const;
  std::int64_t k_at(int i) const;
  std::int64_t m_at(int i) const;
  std::int64_t q_at(int j) const;
};

Homomorphism big_power_beta(const QuadraticEquation& S, const Homomorphism& beta1,
                            const BigPowerParams& params = {});

struct GeneralPosition {
  bool ok = true;
  std::string detail;
};
// Consecutive items of c_1^{e_1}, ..., c_m^{e_m}, [a_1,b_1], ..., [a_n,b_n] must not commute.
GeneralPosition general_position(const QuadraticEquation& S, const Homomorphism& beta);

struct PairCheck {
  Word u;
  Word v;
  std::int64_t cancel = 0;
  std::int64_t min_len = 0;
  bool ok = true;
};

struct CancellationReport {
  std::int64_t lambda = 1;
  std::vector<PairCheck> pairs;
  std::set<Word> cancelled;  // C_beta
  bool general_position = true;
  bool ok = true;
};

// The required pairs: consecutive Y-letters of the images X^{+-phi_K}, then
// (z_i, c_{i-1}^{-z_{i-1}}), (c_i, z_i) and (c_i, c_i).
std::vector<std::pair<Word, Word>> required_pairs(int m, int n, const Tuple& pK);

CancellationReport check_pairs(const Homomorphism& beta, std::int64_t lambda,
                               const std::vector<std::pair<Word, Word>>& pairs);
CancellationReport check_small_cancellation(const Homomorphism& beta, std::int64_t lambda, int m,
                                            int n, const Tuple& pK = {});

std::string to_string(const CancellationReport& r);

}  // namespace fg
