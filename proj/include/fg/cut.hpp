#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fg/gamma.hpp"
#include "fg/word.hpp"

namespace fg {

struct Interval {
  std::string id;
  Word fx;  // label over the parameters X
  Word fm;  // partition over the cut variables M
  bool operator==(const Interval&) const = default;
};

// One relation mu = w of the very-short ledger.
struct Relation {
  LetterId var;
  Word value;
  bool operator==(const Relation&) const = default;
};

struct CutEquation {
  std::vector<LetterId> params;
  std::vector<LetterId> vars;
  std::vector<Interval> intervals;
  Homomorphism alpha;
  Homomorphism beta;
  std::vector<Relation> delta;

  const Interval& interval(const std::string& id) const;
  bool operator==(const CutEquation&) const = default;
};

std::string to_string(const CutEquation& pi);
CutEquation parse_cut_equation(const std::string& text);

enum class SolutionMode { Graphic, Group };

struct IntervalVerdict {
  std::string id;
  bool ok = true;
  std::string reason;
};
struct VerifyReport {
  bool ok = true;
  std::vector<IntervalVerdict> intervals;
  std::vector<std::string> problems;  // empty images, ledger violations
};
VerifyReport verify_solution(const CutEquation& pi, const Homomorphism& alpha,
                             const Homomorphism& beta, SolutionMode mode = SolutionMode::Graphic);
inline VerifyReport verify_solution(const CutEquation& pi,
                                    SolutionMode mode = SolutionMode::Graphic) {
  return verify_solution(pi, pi.alpha, pi.beta, mode);
}

// length and (k_2, ..., k_length); Comp = 0 when length <= 1.
struct Complexity {
  std::int64_t length = 0;
  std::vector<std::int64_t> k;  // k[i] counts partitions of size i + 2
  bool is_zero() const { return length <= 1; }
  bool operator==(const Complexity&) const = default;
};
Complexity complexity(const CutEquation& pi);
// Right shortlex: length first, then k_n from the highest n down. Returns -1, 0, 1.
int compare(const Complexity& a, const Complexity& b);
std::string to_string(const Complexity& c);

struct Metrics {
  std::int64_t length = 0;
  std::int64_t S = 0;
  std::int64_t width = 0;
};
Metrics metrics(const CutEquation& pi);
// Number of (length-1)-tuples of non-negative integers bounded by `bound`.
std::int64_t kappa(const CutEquation& pi, std::int64_t bound);

struct GeBase {
  std::string label;
  std::int64_t begin = 0;  // boundaries are numbered from 1
  std::int64_t end = 0;
  int exp = 1;
  enum class Kind { Variable, Constant, Lambda, LambdaDual } kind = Kind::Variable;
  int dual = -1;  // index of the dual base, -1 if none
};
struct GeneralizedEquation {
  std::vector<SignedLetter> V;
  std::vector<GeBase> bases;
  std::int64_t boundaries() const { return static_cast<std::int64_t>(V.size()) + 1; }
};
GeneralizedEquation to_generalized(const CutEquation& pi);
std::string to_string(const GeneralizedEquation& ge);

struct GammaCutEquation {
  CutEquation pi;
  Word period;  // A, cyclically reduced over X
  Word R;       // A* = R^-1 A R; empty when A* = A
  std::int64_t size = 1;
  int rank = 0;
  Tuple p;
};

struct TStarOptions {
  std::optional<std::int64_t> N;  // largeness threshold; default (l+2) * length(pi)
  // A short variable is very short when its image has no A'^{+-t}; default t = l.
  std::optional<std::int64_t> very_short;
};

struct TStarResult {
  CutEquation result;
  bool identity = false;  // no 1.1 interval, nothing to do
  std::int64_t N = 0;
  Word a_prime;  // cyclic core of A^beta
  Word c;        // A^beta = c^-1 A' c
  Word c_star;   // c beta(R)
  std::vector<std::string> long_vars;
  std::map<std::string, std::vector<std::string>> pieces;
  std::vector<std::string> omitted;
  std::vector<std::string> very_short;
  std::vector<std::string> cases;  // "id:1.1" etc. per input interval
};

TStarResult t_star(const GammaCutEquation& g, const TStarOptions& opt = {});

enum class SplitCase { InsideLastVar, AtVarJunction, InsideInnerVar, InsideFirstVar };
SplitCase parse_split_case(const std::string& s);
// Splits f_X(sigma) after `pos` letters; theta is the induced boundary in W^beta.
CutEquation split_interval(const CutEquation& pi, const std::string& id, std::int64_t pos,
                           SplitCase c);

struct ScheduleStep {
  Word period;
  Word R;
  std::int64_t size = 1;
  std::optional<std::int64_t> N;
};
// `A[/R]@l[#N];...`
std::vector<ScheduleStep> parse_schedule(const std::string& text);

struct TraceEntry {
  int step = 0;
  Complexity comp;
  Metrics m;
  bool identity = false;
  bool verified = true;
};
struct Trace {
  std::vector<TraceEntry> entries;
  bool reached_zero = false;
  int stabilized_at = -1;  // first index of the equal-complexity run, -1 if none
  std::vector<std::string> violations;
  CutEquation last;
};
// Stops at Comp = 0; the first run of 3*grid+1 equal complexities is recorded.
Trace iterate(const CutEquation& start, const std::vector<ScheduleStep>& steps, int grid = 1);

// Random Gamma-cut equation over X = {x, y} with period x; the planted
// solution is read off a random partition of W^beta.
//   Random:   alternating x/y syllables with one large x power (and maybe a large y power)
//   Collapse: y^e x^q y^f cut right after the stable part, so one step reaches Comp = 0
//   Peel:     large powers of x, y, xy, xy^-1 in a row; schedule them to keep Comp fixed
struct SyntheticOptions {
  enum class Shape { Random, Collapse, Peel } shape = Shape::Random;
  std::int64_t size = 1;
  int intervals = 2;
  int max_parts = 3;
  bool mirrored = true;   // add an interval labelled by an inverse word
  int short_intervals = 1;
  bool twisted = false;   // beta(x) = b^-1 a b instead of a
};
CutEquation synthetic_cut_equation(std::uint64_t seed, const SyntheticOptions& opt = {});

}  // namespace fg
