#ifndef YBL_WEIGHTS_HPP
#define YBL_WEIGHTS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ybl/context.hpp"

namespace ybl {

/*
  Weight combinatorics: compositions of n into N nonnegative parts, the
  index set I_lambda of decompositions of {1..n} into blocks of those
  sizes, and the structure scalars Q, R, D attached to them.

  A decomposition is stored as its color word (c_1..c_n), c_a being the
  block containing a. The canonical basis order of every matrix in the
  library is lexicographic in the color word, so the first element is
  I^min and the last is I^max.
*/

struct Composition {
  int N = 0;
  std::vector<int> parts;

  Composition() = default;
  Composition(std::vector<int> p) : N(static_cast<int>(p.size())), parts(std::move(p)) {
    for (int x : parts)
      if (x < 0) throw std::invalid_argument("Composition: negative part");
  }

  int n() const { return std::accumulate(parts.begin(), parts.end(), 0); }

  long d_lambda() const {
    long d = 1;
    int placed = 0;
    for (int p : parts)
      for (int k = 1; k <= p; ++k) d = d * (++placed) / k;  // running binomial, exact
    return d;
  }

  bool valid() const {
    for (int x : parts)
      if (x < 0) return false;
    return true;
  }

  // Offset of block a (1-based) in flat per-slot listings (Chern roots,
  // elementary symmetric slots).
  int block_offset(int a) const {
    int off = 0;
    for (int b = 1; b < a; ++b) off += parts[static_cast<size_t>(b - 1)];
    return off;
  }

  Composition shifted(int i, int j) const {  // lambda + e_i - e_j
    Composition c = *this;
    c.parts[static_cast<size_t>(i - 1)] += 1;
    c.parts[static_cast<size_t>(j - 1)] -= 1;
    return c;
  }

  bool operator==(const Composition& o) const { return parts == o.parts; }
  bool operator<(const Composition& o) const { return parts < o.parts; }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i)
      s += (i ? "," : "") + std::to_string(parts[i]);
    return s + ")";
  }
};

using ColorWord = std::vector<int>;  // 1-based colors, length n

inline ColorWord word_min(const Composition& lam) {
  ColorWord w;
  for (int a = 1; a <= lam.N; ++a)
    w.insert(w.end(), static_cast<size_t>(lam.parts[static_cast<size_t>(a - 1)]), a);
  return w;
}

// Sorted positions (1-based) of color a.
inline std::vector<int> word_block(const ColorWord& w, int a) {
  std::vector<int> b;
  for (size_t k = 0; k < w.size(); ++k)
    if (w[k] == a) b.push_back(static_cast<int>(k) + 1);
  return b;
}

// Action of the elementary transposition s_i on decompositions: relabels
// the elements i and i+1, which in word form swaps the two letters.
inline ColorWord word_transpose(const ColorWord& w, int i) {
  ColorWord v = w;
  std::swap(v[static_cast<size_t>(i - 1)], v[static_cast<size_t>(i)]);
  return v;
}

// Full S_n action sigma(I): new word w'(sigma(a)) = w(a). perm is 1-based.
inline ColorWord word_apply(const ColorWord& w, const std::vector<int>& perm) {
  ColorWord v(w.size());
  for (size_t a = 0; a < w.size(); ++a) v[static_cast<size_t>(perm[a] - 1)] = w[a];
  return v;
}

// Partial order on same-size subsets: A <= B iff elementwise after sorting.
inline bool subset_leq(const std::vector<int>& A, const std::vector<int>& B) {
  for (size_t k = 0; k < A.size(); ++k)
    if (A[k] > B[k]) return false;
  return true;
}

// Partial order on decompositions: I <= J iff equal, or the first block
// where they differ compares by subset order.
inline bool decomp_leq(const Composition& lam, const ColorWord& I, const ColorWord& J) {
  if (I == J) return true;
  for (int a = 1; a <= lam.N; ++a) {
    auto Ia = word_block(I, a), Ja = word_block(J, a);
    if (Ia == Ja) continue;
    return subset_leq(Ia, Ja);
  }
  return true;
}

// Ordered basis of the weight subspace V_lambda.
class WeightBasis {
 public:
  explicit WeightBasis(const Composition& lam) : lam_(lam) {
    ColorWord w = word_min(lam);
    do {
      words_.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    if (static_cast<long>(words_.size()) != lam.d_lambda())
      throw std::logic_error("WeightBasis: enumeration does not match d_lambda");
  }

  const Composition& lam() const { return lam_; }
  int dim() const { return static_cast<int>(words_.size()); }
  const ColorWord& word(int k) const { return words_.at(static_cast<size_t>(k)); }
  const std::vector<ColorWord>& words() const { return words_; }

  int index_of(const ColorWord& w) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), w);
    if (it == words_.end() || *it != w)
      throw std::invalid_argument("WeightBasis: word not in basis");
    return static_cast<int>(it - words_.begin());
  }

  const ColorWord& imin() const { return words_.front(); }
  const ColorWord& imax() const { return words_.back(); }

 private:
  Composition lam_;
  std::vector<ColorWord> words_;
};

// --- structure scalars ------------------------------------------------------

// Q(z_I) = prod_{a<b} prod_{i in I_a} prod_{j in I_b} (z_i - z_j + h),
// R(z_I) the same without the +h. Always built with symbolic z, h.
inline RatFunc struct_Q(const Context& ctx, const Composition& lam, const ColorWord& w) {
  RatFunc p = ctx.one();
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = 0; j < w.size(); ++j)
      if (w[i] < w[j])
        p *= ctx.z_sym(static_cast<int>(i) + 1) - ctx.z_sym(static_cast<int>(j) + 1) + ctx.h_sym();
  (void)lam;
  return p;
}

inline RatFunc struct_R(const Context& ctx, const Composition& lam, const ColorWord& w) {
  RatFunc p = ctx.one();
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = 0; j < w.size(); ++j)
      if (w[i] < w[j])
        p *= ctx.z_sym(static_cast<int>(i) + 1) - ctx.z_sym(static_cast<int>(j) + 1);
  (void)lam;
  return p;
}

inline RatFunc struct_D(const Context& ctx) {
  RatFunc p = ctx.one();
  for (int i = 1; i <= ctx.n(); ++i)
    for (int j = i + 1; j <= ctx.n(); ++j) p *= ctx.z_sym(i) - ctx.z_sym(j) + ctx.h_sym();
  return p;
}

inline RatFunc struct_Dcheck(const Context& ctx) {
  RatFunc p = ctx.one();
  for (int i = 1; i <= ctx.n(); ++i)
    for (int j = i + 1; j <= ctx.n(); ++j) p *= ctx.z_sym(j) - ctx.z_sym(i) + ctx.h_sym();
  return p;
}

inline RatFunc struct_Z(const Context& ctx) { return struct_D(ctx) * struct_Dcheck(ctx); }

// All compositions of n into exactly N positive... parts >= minpart.
inline std::vector<Composition> compositions(int n, int N, int minpart = 0) {
  std::vector<Composition> out;
  std::vector<int> cur(static_cast<size_t>(N), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == N) {
      if (left == 0) out.emplace_back(cur);
      return;
    }
    for (int v = minpart; v <= left; ++v) {
      cur[static_cast<size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, n);
  return out;
}

}  // namespace ybl

#endif
