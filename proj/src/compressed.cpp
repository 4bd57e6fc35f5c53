#include "fg/compressed.hpp"

#include <stdexcept>

namespace fg {

namespace {

constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
constexpr Hash2 kBase{0x1f3a5c7e9b2d4f61ULL % kMod, 0x2b4d6f8a1c3e5a79ULL % kMod};
constexpr std::int64_t kMaxLength = std::int64_t{1} << 62;

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y) {
  unsigned __int128 p = static_cast<unsigned __int128>(x) * y;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kMod);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  return s >= kMod ? s - kMod : s;
}

std::uint64_t addmod(std::uint64_t x, std::uint64_t y) {
  std::uint64_t s = x + y;
  return s >= kMod ? s - kMod : s;
}

Hash2 mul(Hash2 x, Hash2 y) { return {mulmod(x.a, y.a), mulmod(x.b, y.b)}; }
Hash2 add(Hash2 x, Hash2 y) { return {addmod(x.a, y.a), addmod(x.b, y.b)}; }

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Hash2 letter_value(SignedLetter s) {
  auto u = static_cast<std::uint64_t>(s);
  return {splitmix(u) % (kMod - 1) + 1, splitmix(u ^ 0x5851f42d4c957f2dULL) % (kMod - 1) + 1};
}

Segment empty_segment() { return {0, {}, {}, {1, 1}}; }

Segment combine(const Segment& x, const Segment& y) {
  if (x.len == 0) return y;
  if (y.len == 0) return x;
  if (x.len > kMaxLength - y.len) throw std::overflow_error("compressed word too long");
  Segment s;
  s.len = x.len + y.len;
  s.h = add(mul(x.h, y.pw), y.h);
  s.hi = add(mul(y.hi, x.pw), x.hi);
  s.pw = mul(x.pw, y.pw);
  return s;
}

Segment repeat_segment(Segment base, std::int64_t k) {
  Segment acc = empty_segment();
  while (k > 0) {
    if (k & 1) acc = combine(acc, base);
    k >>= 1;
    if (k) base = combine(base, base);
  }
  return acc;
}

Segment inverted(Segment s) {
  std::swap(s.h, s.hi);
  return s;
}

CPtr make_letter(SignedLetter s) {
  auto n = std::make_shared<CNode>();
  n->kind = CNode::Kind::Letter;
  n->letter = s;
  n->seg.len = 1;
  n->seg.h = letter_value(s);
  n->seg.hi = letter_value(-s);
  n->seg.pw = kBase;
  n->depth = 1;
  return n;
}

CPtr make_concat(const CPtr& l, const CPtr& r) {
  if (!l) return r;
  if (!r) return l;
  auto n = std::make_shared<CNode>();
  n->kind = CNode::Kind::Concat;
  n->left = l;
  n->right = r;
  n->seg = combine(l->seg, r->seg);
  n->depth = std::max(l->depth, r->depth) + 1;
  return n;
}

CPtr make_power(const CPtr& base, std::int64_t k) {
  if (!base || k == 0) return nullptr;
  if (k == 1) return base;
  if (base->seg.len > kMaxLength / k) throw std::overflow_error("compressed word too long");
  auto n = std::make_shared<CNode>();
  n->kind = CNode::Kind::Power;
  n->left = base;
  n->count = k;
  n->seg = repeat_segment(base->seg, k);
  n->depth = base->depth + 1;
  return n;
}

CPtr make_inverse(const CPtr& c) {
  if (!c) return nullptr;
  if (c->kind == CNode::Kind::Inverse) return c->left;
  if (c->kind == CNode::Kind::Letter) return make_letter(-c->letter);
  auto n = std::make_shared<CNode>();
  n->kind = CNode::Kind::Inverse;
  n->left = c;
  n->seg = inverted(c->seg);
  n->depth = c->depth + 1;
  return n;
}

Segment range(const CPtr& node, std::int64_t s, std::int64_t n) {
  if (n == 0) return empty_segment();
  if (s == 0 && n == node->seg.len) return node->seg;
  switch (node->kind) {
    case CNode::Kind::Letter:
      return node->seg;
    case CNode::Kind::Concat: {
      std::int64_t L = node->left->seg.len;
      if (s + n <= L) return range(node->left, s, n);
      if (s >= L) return range(node->right, s - L, n);
      return combine(range(node->left, s, L - s), range(node->right, 0, n - (L - s)));
    }
    case CNode::Kind::Power: {
      std::int64_t B = node->left->seg.len;
      std::int64_t s0 = s % B;
      std::int64_t first = std::min(n, B - s0);
      Segment seg = range(node->left, s0, first);
      std::int64_t rest = n - first;
      seg = combine(seg, repeat_segment(node->left->seg, rest / B));
      return combine(seg, range(node->left, 0, rest % B));
    }
    case CNode::Kind::Inverse: {
      std::int64_t L = node->seg.len;
      return inverted(range(node->left, L - s - n, n));
    }
  }
  return empty_segment();
}

CPtr slice_node(const CPtr& node, std::int64_t s, std::int64_t n) {
  if (n == 0) return nullptr;
  if (s == 0 && n == node->seg.len) return node;
  switch (node->kind) {
    case CNode::Kind::Letter:
      return node;
    case CNode::Kind::Concat: {
      std::int64_t L = node->left->seg.len;
      if (s + n <= L) return slice_node(node->left, s, n);
      if (s >= L) return slice_node(node->right, s - L, n);
      return make_concat(slice_node(node->left, s, L - s),
                         slice_node(node->right, 0, n - (L - s)));
    }
    case CNode::Kind::Power: {
      std::int64_t B = node->left->seg.len;
      std::int64_t s0 = s % B;
      std::int64_t first = std::min(n, B - s0);
      CPtr out = slice_node(node->left, s0, first);
      std::int64_t rest = n - first;
      out = make_concat(out, make_power(node->left, rest / B));
      return make_concat(out, slice_node(node->left, 0, rest % B));
    }
    case CNode::Kind::Inverse: {
      std::int64_t L = node->seg.len;
      return make_inverse(slice_node(node->left, L - s - n, n));
    }
  }
  return nullptr;
}

SignedLetter letter_at(const CNode* node, std::int64_t i) {
  bool inv = false;
  while (true) {
    switch (node->kind) {
      case CNode::Kind::Letter:
        return inv ? -node->letter : node->letter;
      case CNode::Kind::Concat: {
        std::int64_t L = node->left->seg.len;
        if (i < L) {
          node = node->left.get();
        } else {
          i -= L;
          node = node->right.get();
        }
        break;
      }
      case CNode::Kind::Power:
        i %= node->left->seg.len;
        node = node->left.get();
        break;
      case CNode::Kind::Inverse:
        i = node->seg.len - 1 - i;
        inv = !inv;
        node = node->left.get();
        break;
    }
  }
}

CPtr balanced(const std::vector<CPtr>& parts, std::size_t lo, std::size_t hi) {
  if (lo >= hi) return nullptr;
  if (hi - lo == 1) return parts[lo];
  std::size_t mid = (lo + hi) / 2;
  return make_concat(balanced(parts, lo, mid), balanced(parts, mid, hi));
}

// Streams the letters of a compressed word left to right.
class LetterStream {
 public:
  // With `window` > 0 every power base^k is cut to the repetitions that any
  // factor of length `window` can see; the set of such factors is unchanged.
  explicit LetterStream(const CPtr& root, std::int64_t window = 0) : window_(window) {
    if (root) stack_.push_back({root.get(), false, 0});
  }

  bool next(SignedLetter& out) {
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      const CNode* n = f.node;
      switch (n->kind) {
        case CNode::Kind::Letter:
          out = f.inv ? -n->letter : n->letter;
          stack_.pop_back();
          return true;
        case CNode::Kind::Concat: {
          if (f.step == 2) {
            stack_.pop_back();
            break;
          }
          const CNode* first = f.inv ? n->right.get() : n->left.get();
          const CNode* second = f.inv ? n->left.get() : n->right.get();
          const CNode* child = f.step == 0 ? first : second;
          bool inv = f.inv;
          ++f.step;
          stack_.push_back({child, inv, 0});
          break;
        }
        case CNode::Kind::Power: {
          std::int64_t limit = n->count;
          if (window_ > 0) {
            std::int64_t B = n->left->seg.len;
            limit = std::min(limit, 2 * ((window_ + B - 1) / B + 1));
          }
          if (f.step == limit) {
            stack_.pop_back();
            break;
          }
          ++f.step;
          bool inv = f.inv;
          stack_.push_back({n->left.get(), inv, 0});
          break;
        }
        case CNode::Kind::Inverse: {
          bool inv = !f.inv;
          const CNode* child = n->left.get();
          stack_.pop_back();
          stack_.push_back({child, inv, 0});
          break;
        }
      }
    }
    return false;
  }

 private:
  struct Frame {
    const CNode* node;
    bool inv;
    std::int64_t step;
  };
  std::vector<Frame> stack_;
  std::int64_t window_ = 0;
};

}  // namespace

CWord::CWord(const Word& w) {
  std::vector<CPtr> parts;
  for (const auto& s : w.syllables()) {
    CPtr leaf = make_letter(signed_letter(s.letter, s.exp > 0 ? 1 : -1));
    parts.push_back(make_power(leaf, s.exp > 0 ? s.exp : -s.exp));
  }
  node_ = balanced(parts, 0, parts.size());
}

SignedLetter CWord::at(std::int64_t i) const {
  if (i < 0 || i >= length()) throw std::out_of_range("compressed word index");
  return letter_at(node_.get(), i);
}

Segment CWord::segment(std::int64_t pos, std::int64_t n) const {
  if (pos < 0 || n < 0 || pos + n > length()) throw std::out_of_range("compressed word range");
  if (n == 0) return empty_segment();
  return range(node_, pos, n);
}

CWord CWord::slice(std::int64_t pos, std::int64_t n) const {
  if (pos < 0 || n < 0 || pos + n > length()) throw std::out_of_range("compressed word range");
  return CWord(slice_node(node_, pos, n));
}

CWord CWord::inverse() const { return CWord(make_inverse(node_)); }

Word CWord::expand(std::int64_t limit) const {
  if (length() > limit) throw std::length_error("compressed word too long to expand");
  WordBuilder b;
  LetterStream st(node_);
  SignedLetter s;
  while (st.next(s)) b.push(s);
  return std::move(b).build();
}

bool CWord::operator==(const CWord& o) const {
  if (length() != o.length()) return false;
  if (empty()) return true;
  return node_->seg.h == o.node_->seg.h;
}

CWord CWord::join(const CWord& u, const CWord& v) { return CWord(make_concat(u.node_, v.node_)); }

CWord CWord::repeat(const CWord& base, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("negative repeat count");
  return CWord(make_power(base.node_, k));
}

std::int64_t cancellation(const CWord& u, const CWord& v) {
  std::int64_t U = u.length(), V = v.length();
  std::int64_t hi = std::min(U, V);
  if (hi == 0 || u.at(U - 1) != -v.at(0)) return 0;
  // suffix_k(u) == inverse(prefix_k(v)) is monotone in k
  auto ok = [&](std::int64_t k) { return u.segment(U - k, k).h == v.segment(0, k).hi; };
  std::int64_t lo = 1;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (ok(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

CWord operator*(const CWord& u, const CWord& v) {
  std::int64_t c = cancellation(u, v);
  return CWord::join(u.prefix(u.length() - c), v.suffix(v.length() - c));
}

CCyclicReduction cyclic_reduce(const CWord& w) {
  std::int64_t L = w.length();
  std::int64_t hi = L / 2;
  if (hi == 0 || w.at(0) != -w.at(L - 1)) return {w, CWord()};
  auto ok = [&](std::int64_t k) { return w.segment(0, k).h == w.segment(L - k, k).hi; };
  std::int64_t lo = 1;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (ok(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return {w.slice(lo, L - 2 * lo), w.suffix(lo)};
}

bool is_cyclically_reduced(const CWord& w) {
  return w.length() < 2 || w.at(0) != -w.at(w.length() - 1);
}

CWord power(const CWord& w, std::int64_t k) {
  if (k == 0 || w.empty()) return CWord();
  CWord base = k > 0 ? w : w.inverse();
  if (k < 0) k = -k;
  auto cr = cyclic_reduce(base);
  return CWord::join(CWord::join(cr.conjugator.inverse(), CWord::repeat(cr.core, k)),
                     cr.conjugator);
}

std::int64_t power_root_exponent(const CWord& w) {
  std::int64_t L = w.length();
  if (L == 0) return 1;
  std::vector<std::int64_t> primes;
  std::int64_t r = L;
  for (std::int64_t q = 2; q * q <= r; ++q) {
    if (r % q) continue;
    primes.push_back(q);
    while (r % q == 0) r /= q;
  }
  if (r > 1) primes.push_back(r);
  std::int64_t d = L;
  for (auto q : primes) {
    while (d % q == 0) {
      std::int64_t p = d / q;
      if (w.segment(0, L - p).h == w.segment(p, L - p).h)
        d = p;
      else
        break;
    }
  }
  return L / d;
}

bool range_equal(const CWord& a, std::int64_t pa, const CWord& b, std::int64_t pb,
                 std::int64_t n) {
  return a.segment(pa, n).h == b.segment(pb, n).h;
}

namespace {

// Rolling-hash scan over the letters of `node` for a factor with hash `target`.
bool scan(const CPtr& node, std::int64_t P, const Hash2& target, const Hash2& top) {
  if (!node || node->seg.len < P) return false;
  LetterStream st(node);
  std::vector<Hash2> ring(static_cast<std::size_t>(P));
  Hash2 h;
  SignedLetter s = 0;
  std::int64_t i = 0;
  while (st.next(s)) {
    Hash2 v = letter_value(s);
    auto slot = static_cast<std::size_t>(i % P);
    if (i >= P) {
      Hash2 drop = mul(ring[slot], top);
      h = add(h, {kMod - drop.a, kMod - drop.b});
    }
    ring[slot] = v;
    h = add(mul(h, kBase), v);
    ++i;
    if (i >= P && h == target) return true;
  }
  return false;
}

// Searches the DAG below a node once per (node, orientation): an occurrence
// lies inside a child or crosses one of the node's internal boundaries.
class DagSearch {
 public:
  DagSearch(const CWord& pattern) : P_(pattern.length()) {
    top_ = {1, 1};
    for (std::int64_t i = 1; i < P_; ++i) top_ = mul(top_, kBase);
    Segment seg = pattern.segment(0, P_);
    fwd_ = seg.h;
    inv_ = seg.hi;
  }

  bool run(const CPtr& node, bool inv) {
    if (!node || node->seg.len < P_) return false;
    auto key = std::make_pair(node.get(), inv);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool found = visit(node, inv);
    memo_[key] = found;
    return found;
  }

 private:
  std::int64_t P_;
  Hash2 top_, fwd_, inv_;
  std::map<std::pair<const CNode*, bool>, bool> memo_;

  // Searching for P inside node^-1 is searching for P^-1 inside node.
  bool scan_here(const CPtr& n, bool inv) { return scan(n, P_, inv ? inv_ : fwd_, top_); }

  bool visit(const CPtr& node, bool inv) {
    std::int64_t L = node->seg.len;
    if (L <= 4 * P_) return scan_here(node, inv);
    switch (node->kind) {
      case CNode::Kind::Letter:
        return false;
      case CNode::Kind::Concat: {
        if (run(node->left, inv) || run(node->right, inv)) return true;
        std::int64_t b = node->left->seg.len;
        std::int64_t lo = std::max<std::int64_t>(0, b - P_ + 1);
        std::int64_t hi = std::min(L, b + P_ - 1);
        return scan_here(slice_node(node, lo, hi - lo), inv);
      }
      case CNode::Kind::Power: {
        std::int64_t B = node->left->seg.len;
        if (B + P_ - 1 <= 4 * P_) return scan_here(slice_node(node, 0, std::min(L, B + P_ - 1)), inv);
        if (run(node->left, inv)) return true;
        return scan_here(slice_node(node, B - P_ + 1, 2 * P_ - 2), inv);
      }
      case CNode::Kind::Inverse:
        return run(node->left, !inv);
    }
    return false;
  }
};

}  // namespace

bool contains(const CWord& text, const CWord& pattern) {
  std::int64_t P = pattern.length();
  if (P == 0) return true;
  if (P > text.length()) return false;
  DagSearch search(pattern);
  return search.run(text.node(), false);
}

CWord CHomomorphism::image(LetterId g) const {
  auto it = images_.find(g);
  if (it != images_.end()) return it->second;
  return CWord(Word::gen(g));
}

CWord CHomomorphism::apply(const Word& w) const {
  CWord acc;
  for (const auto& s : w.syllables()) acc = acc * power(image(s.letter), s.exp);
  return acc;
}

}  // namespace fg
