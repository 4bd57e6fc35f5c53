#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fg/compressed.hpp"
#include "fg/quadratic.hpp"
#include "fg/word.hpp"

namespace fg {

// A basic automorphism of twist shape: each moved generator g goes to
// T^a g T^b, and T itself is fixed, so powers have the closed form
// g -> T^{ap} g T^{bp}.
struct Twist {
  struct Move {
    LetterId gen;
    int a;
    int b;
  };
  std::string label;
  Word T;  // the leading term A(gamma)
  std::vector<Move> moves;

  Word image(LetterId g, std::int64_t p) const;
  Homomorphism hom(std::int64_t p = 1) const;
};

Homomorphism power(const Twist& g, std::int64_t p);
// Applies the single automorphism |p| times by substitution.
Homomorphism iterate_power(const Twist& g, std::int64_t p);

struct BasicSequence {
  int m = 0;
  int n = 0;
  bool demo2 = false;
  QuadraticEquation eq;
  std::vector<Twist> gammas;
  std::vector<LetterId> generators;

  int K() const { return static_cast<int>(gammas.size()); }
  int wrap(int j) const { return (j - 1) % K() + 1; }
  const Twist& gamma(int j) const { return gammas.at(static_cast<std::size_t>(wrap(j) - 1)); }
  // j = m + 4i - 1 + sK for some 1 <= i <= n (never for demo2).
  std::optional<int> special_index(int j) const;
};

BasicSequence basic_sequence(const QuadraticEquation& s);
BasicSequence demo2_sequence();

using Tuple = std::vector<std::int64_t>;
bool is_large(const Tuple& p, std::int64_t s);
Tuple parse_tuple(const std::string& text);
std::string to_string(const Tuple& p);

struct Automorphism {
  Homomorphism fwd;
  Homomorphism inv;
};

// phi_{j,p} with j = |p|; gamma_j^{p_j} acts first (right action).
Automorphism phi(const BasicSequence& G, const Tuple& p);
// Forward maps phi_0 .. phi_j for j = |p|.
std::vector<Homomorphism> phi_prefixes(const BasicSequence& G, const Tuple& p);
// Forward map, read from or written to $GAMMA_CACHE_DIR when set.
Homomorphism phi_cached(const BasicSequence& G, const Tuple& p);

struct LeadingTerm {
  int j = 0;
  Word A;          // cyclically reduced
  Word conj;       // the pre-reduction word is conj^-1 A conj
  bool has_star = false;
  Word star;       // A_r^{phi_L} for j = L + r
  Word R;          // star = R^-1 core R
  Word star_core;  // cyclic core of star
  bool star_core_equals_A = false;
  bool star_core_rotation_of_A = false;
};

LeadingTerm leading_term(const BasicSequence& G, int j, const Tuple& p);
// A_1 .. A_j from one pass over the prefixes (no star data).
std::vector<Word> leading_terms(const BasicSequence& G, const Tuple& p);

// The same data over compressed words, for ranks where explicit images are
// out of reach.
std::vector<CHomomorphism> compressed_phi_prefixes(const BasicSequence& G, const Tuple& p);
std::vector<CWord> compressed_leading_terms(const BasicSequence& G, const Tuple& p);

// Exception sets for m >= 1, n >= 1.
std::set<Word> exception_T(int m, int n);
std::set<Word> exception_E(int m, int n, const Tuple& p);

// Sub_k of the set X^{+-phi_K}.
std::set<Word> image_subwords(const BasicSequence& G, const Tuple& pK, int k);

struct MembershipReport {
  bool member = true;
  int condition = 0;  // first violated condition, 0 when member
  std::string detail;
};
// Conditions 1-5 for the set W; with `as_subword` occurrences touching an
// end of w are allowed to extend beyond it.
MembershipReport w_gamma_membership(const Word& w, const BasicSequence& G, const Tuple& pK,
                                    bool as_subword = false);
// Whether w is a freely reduced product of the letters of Y.
bool is_y_word(const Word& w, int m, int n);

struct CancellationProfile {
  Word left_image;
  Word right_image;
  Word cancelled;
  Word left_residue;
  Word right_residue;
};
CancellationProfile cancellation_profile(const Homomorphism& phiK, const Word& u, const Word& v);

// Convenience words used by the reproduction reports.
Word cz(int j, int sign = 1);  // c_j^{z_j} or its inverse
Word prod_cz(int m);           // c_1^{z_1} ... c_m^{z_m}

}  // namespace fg
