#ifndef YBL_WVECTOR_HPP
#define YBL_WVECTOR_HPP

#include <cassert>
#include <deque>
#include <map>
#include <memory>
#include <vector>

#include "ybl/weights.hpp"

namespace ybl {

/*
  Vectors of a weight subspace with rational-function coefficients, the
  symmetric-group actions on them, the xi bases and the distinguished
  vectors. Everything here is built with symbolic z, h; the scalar
  assignment of the Context is applied only when values are read out by
  the higher modules.

  Coefficients are kept dense in the canonical color-word order of the
  WeightBasis; zero pruning is a printing concern, not a storage one, at
  the scale this library targets.
*/

struct WVector {
  Composition lam;
  std::vector<RatFunc> c;

  WVector() = default;
  WVector(const Composition& l, int dim, const RegistryPtr& reg)
      : lam(l), c(static_cast<size_t>(dim), RatFunc(reg)) {}

  bool is_zero() const {
    for (auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }

  WVector operator-() const {
    WVector r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend WVector operator+(WVector a, const WVector& b) {
    if (a.lam.parts != b.lam.parts || a.c.size() != b.c.size())
      throw std::invalid_argument("WVector: weight mismatch");
    for (size_t i = 0; i < a.c.size(); ++i) a.c[i] += b.c[i];
    return a;
  }
  friend WVector operator-(WVector a, const WVector& b) { return a + (-b); }
  friend WVector operator*(const RatFunc& s, WVector a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
  bool operator==(const WVector& o) const { return lam.parts == o.lam.parts && c == o.c; }
};

enum class SnKind { Plus, Minus, TildePlus, TildeMinus, HatPlus, HatMinus };

namespace detail {

// z_i <-> z_{i+1} as a variable relabeling.
inline std::vector<int> z_swap_perm(const Context& ctx, int i) {
  std::vector<int> perm(static_cast<size_t>(ctx.registry()->size()));
  for (size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
  std::swap(perm[static_cast<size_t>(ctx.z_var(i))], perm[static_cast<size_t>(ctx.z_var(i + 1))]);
  return perm;
}

inline std::vector<int> z_reverse_perm(const Context& ctx) {
  std::vector<int> perm(static_cast<size_t>(ctx.registry()->size()));
  for (size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
  for (int a = 1; a <= ctx.n(); ++a) perm[static_cast<size_t>(ctx.z_var(a))] = ctx.z_var(ctx.n() + 1 - a);
  return perm;
}

}  // namespace detail

// Scalar action of hat s_i^{+-} on functions of z, h.
inline RatFunc sn_hat(const Context& ctx, bool plus, int i, const RatFunc& f) {
  RatFunc g = f.permute_vars(detail::z_swap_perm(ctx, i));
  RatFunc d = ctx.z_sym(i) - ctx.z_sym(i + 1);
  RatFunc H = ctx.h_sym();
  if (plus) return ((d + H) / d) * g - (H / d) * f;
  return ((d - H) / d) * g + (H / d) * f;
}

// Permutation operator on tensor slots: (P^{(i,i+1)} f)_J = f_{s_i(J)}.
inline WVector slot_permute(const WeightBasis& basis, const WVector& f, int i) {
  WVector r = f;
  for (int k = 0; k < basis.dim(); ++k)
    r.c[static_cast<size_t>(k)] = f.c[static_cast<size_t>(basis.index_of(word_transpose(basis.word(k), i)))];
  return r;
}

// The four vector-valued S_n actions.
inline WVector sn_act(const Context& ctx, const WeightBasis& basis, SnKind kind, int i,
                      const WVector& f) {
  if (i < 1 || i >= ctx.n()) throw std::invalid_argument("sn_act: transposition index");
  auto perm = detail::z_swap_perm(ctx, i);
  WVector g = f;
  for (auto& x : g.c) x = x.permute_vars(perm);  // f(z .. z_{i+1}, z_i .. z)
  WVector pg = slot_permute(basis, g, i);
  RatFunc d = ctx.z_sym(i) - ctx.z_sym(i + 1);
  RatFunc H = ctx.h_sym();
  switch (kind) {
    case SnKind::Plus:
      return ((ctx.one() / d) * (d * pg - H * g)) + (H / d) * f;
    case SnKind::Minus:
      return ((ctx.one() / d) * (d * pg + H * g)) - (H / d) * f;
    case SnKind::TildePlus:
      return (ctx.one() / (d - H)) * (d * pg - H * g);
    case SnKind::TildeMinus:
      return (ctx.one() / (d + H)) * (d * pg + H * g);
    default:
      throw std::invalid_argument("sn_act: hat kinds act on scalars");
  }
}

// Reduced-word factorization: returns i_1..i_k with
// sigma = s_{i_k} ... s_{i_1} and hat(sigma) = hat(s_{i_k}) o ... o hat(s_{i_1}),
// i.e. apply hats in the returned order.
inline std::vector<int> transposition_factorization(std::vector<int> oneline) {
  std::vector<int> rec;
  const int n = static_cast<int>(oneline.size());
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i + 1 < n; ++i) {
      if (oneline[static_cast<size_t>(i)] > oneline[static_cast<size_t>(i + 1)]) {
        std::swap(oneline[static_cast<size_t>(i)], oneline[static_cast<size_t>(i + 1)]);
        rec.push_back(i + 1);
        moved = true;
      }
    }
  }
  return rec;
}

inline RatFunc sn_hat_sigma(const Context& ctx, bool plus, const std::vector<int>& sigma,
                            const RatFunc& f) {
  RatFunc acc = f;
  for (int i : transposition_factorization(sigma)) acc = sn_hat(ctx, plus, i, acc);
  return acc;
}

/*
  The xi bases. xi^+ starts at v_{I^min} and propagates with tilde-s^+ along
  the orbit; xi^- starts at v_{I^max} with tilde-s^-. Revisited indices are
  recomputed and compared, turning the uniqueness statement behind the
  construction into a runtime self-check.
*/
struct XiTable {
  std::vector<WVector> plus;
  std::vector<WVector> minus;
};

namespace detail {

inline std::vector<WVector> build_xi_side(const Context& ctx, const WeightBasis& basis, bool plus) {
  const int d = basis.dim();
  std::vector<WVector> xi(static_cast<size_t>(d));
  std::vector<char> have(static_cast<size_t>(d), 0);
  const int start = plus ? 0 : d - 1;
  WVector seed(basis.lam(), d, ctx.registry());
  seed.c[static_cast<size_t>(start)] = ctx.one();
  xi[static_cast<size_t>(start)] = seed;
  have[static_cast<size_t>(start)] = 1;
  std::deque<int> queue{start};
  SnKind kind = plus ? SnKind::TildePlus : SnKind::TildeMinus;
  while (!queue.empty()) {
    int k = queue.front();
    queue.pop_front();
    for (int i = 1; i < ctx.n(); ++i) {
      ColorWord w = word_transpose(basis.word(k), i);
      int j = basis.index_of(w);
      WVector img = sn_act(ctx, basis, kind, i, xi[static_cast<size_t>(k)]);
      if (!have[static_cast<size_t>(j)]) {
        xi[static_cast<size_t>(j)] = std::move(img);
        have[static_cast<size_t>(j)] = 1;
        queue.push_back(j);
      } else if (!(img == xi[static_cast<size_t>(j)])) {
        throw std::logic_error("xi recursion inconsistent at lambda=" + basis.lam().str() +
                               "; arithmetic fault");
      }
    }
  }
  for (char hbit : have)
    if (!hbit) throw std::logic_error("xi orbit did not reach the whole basis");
  return xi;
}

}  // namespace detail

namespace detail {

/*
  Fast construction of the specialized xi tables. With z and h pinned to
  rationals, a coefficient function is carried as its value vector over the
  whole S_n-orbit of the z-point; the z-swap in the recursion is then just
  an index permutation and every other operation is pointwise rational
  arithmetic. The genericity guard covers all permuted points, so no
  denominator can vanish along the way.
*/
class OrbitEvaluator {
 public:
  OrbitEvaluator(const Context& ctx, const WeightBasis& basis) : ctx_(ctx), basis_(basis) {
    const int n = ctx.n();
    std::vector<int> sigma(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) sigma[static_cast<size_t>(a)] = a + 1;
    do {
      perms_.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    // right-composition with each adjacent transposition, by index
    const auto& vals = ctx.assignment();
    for (int a = 1; a <= n; ++a) zv_.push_back(*vals[static_cast<size_t>(ctx.z_var(a))]);
    hv_ = *vals[static_cast<size_t>(ctx.h_var())];
    rcomp_.assign(static_cast<size_t>(n - 1), std::vector<int>(perms_.size()));
    for (int i = 1; i < n; ++i)
      for (size_t p = 0; p < perms_.size(); ++p) {
        std::vector<int> s = perms_[p];
        std::swap(s[static_cast<size_t>(i - 1)], s[static_cast<size_t>(i)]);
        rcomp_[static_cast<size_t>(i - 1)][p] = index_of(s);
      }
  }

  int points() const { return static_cast<int>(perms_.size()); }

  // value of z_k at the point sigma: z-values permuted by sigma
  Rat z_at(size_t p, int k) const {
    return zv_[static_cast<size_t>(perms_[p][static_cast<size_t>(k - 1)] - 1)];
  }

  using Coeff = std::vector<Rat>;               // one value per orbit point
  using Vec = std::vector<Coeff>;               // one coefficient per basis word

  std::vector<std::vector<Rat>> build_xi(bool plus) const {
    const int d = basis_.dim();
    const int np = points();
    const int n = ctx_.n();
    std::vector<Vec> xi(static_cast<size_t>(d));
    std::vector<char> have(static_cast<size_t>(d), 0);
    const int start = plus ? 0 : d - 1;
    Vec seed(static_cast<size_t>(d), Coeff(static_cast<size_t>(np), Rat(0)));
    for (auto& x : seed[static_cast<size_t>(start)]) x = Rat(1);
    xi[static_cast<size_t>(start)] = std::move(seed);
    have[static_cast<size_t>(start)] = 1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int k = queue.front();
      queue.pop_front();
      for (int i = 1; i < n; ++i) {
        int j = basis_.index_of(word_transpose(basis_.word(k), i));
        Vec img = tilde_apply(plus, i, xi[static_cast<size_t>(k)]);
        if (!have[static_cast<size_t>(j)]) {
          xi[static_cast<size_t>(j)] = std::move(img);
          have[static_cast<size_t>(j)] = 1;
          queue.push_back(j);
        } else if (img != xi[static_cast<size_t>(j)]) {
          throw std::logic_error("xi recursion inconsistent (specialized) at lambda=" +
                                 basis_.lam().str());
        }
      }
    }
    // identity-point values; the identity permutation is first in lex order
    std::vector<std::vector<Rat>> out(static_cast<size_t>(d), std::vector<Rat>(static_cast<size_t>(d)));
    for (int k = 0; k < d; ++k)
      for (int c = 0; c < d; ++c) out[static_cast<size_t>(k)][static_cast<size_t>(c)] = xi[static_cast<size_t>(k)][static_cast<size_t>(c)][0];
    return out;
  }

 private:
  int index_of(const std::vector<int>& s) const {
    auto it = std::lower_bound(perms_.begin(), perms_.end(), s);
    return static_cast<int>(it - perms_.begin());
  }

  Vec tilde_apply(bool plus, int i, const Vec& f) const {
    const int d = basis_.dim();
    const int np = points();
    Vec out(static_cast<size_t>(d), Coeff(static_cast<size_t>(np)));
    const auto& rc = rcomp_[static_cast<size_t>(i - 1)];
    for (int c = 0; c < d; ++c) {
      int pc = basis_.index_of(word_transpose(basis_.word(c), i));
      for (int p = 0; p < np; ++p) {
        size_t sp = static_cast<size_t>(p);
        size_t swapped = static_cast<size_t>(rc[sp]);
        Rat g = f[static_cast<size_t>(c)][swapped];        // z-swapped coefficient
        Rat pg = f[static_cast<size_t>(pc)][swapped];      // with the slot permutation
        Rat dval = z_at(sp, i) - z_at(sp, i + 1);
        Rat den = plus ? Rat(dval - hv_) : Rat(dval + hv_);
        Rat num = plus ? Rat(dval * pg - hv_ * g) : Rat(dval * pg + hv_ * g);
        out[static_cast<size_t>(c)][sp] = num / den;
      }
    }
    return out;
  }

  const Context& ctx_;
  const WeightBasis& basis_;
  std::vector<std::vector<int>> perms_;
  std::vector<std::vector<int>> rcomp_;
  std::vector<Rat> zv_;
  Rat hv_;
};

}  // namespace detail

// Weight-space model: per-lambda caches of bases, xi tables and their
// specializations. Built once and then shared read-only.
class WeightModel {
 public:
  explicit WeightModel(Context& ctx) : ctx_(ctx) {}

  Context& ctx() const { return ctx_; }

  const WeightBasis& basis(const Composition& lam) {
    auto it = bases_.find(lam.parts);
    if (it == bases_.end())
      it = bases_.emplace(lam.parts, std::make_unique<WeightBasis>(lam)).first;
    return *it->second;
  }

  const XiTable& xi(const Composition& lam) {
    auto it = xi_.find(lam.parts);
    if (it == xi_.end()) {
      const WeightBasis& b = basis(lam);
      XiTable t;
      t.plus = detail::build_xi_side(ctx_, b, true);
      t.minus = detail::build_xi_side(ctx_, b, false);
      it = xi_.emplace(lam.parts, std::move(t)).first;
    }
    return it->second;
  }

  // Specialized xi tables. With pinned z, h these come from the orbit-value
  // recursion, which stays cheap well past the point where the symbolic
  // table becomes infeasible; otherwise it is the symbolic table itself.
  const XiTable& xi_low(const Composition& lam) {
    if (ctx_.z_symbolic()) return xi(lam);
    auto it = xilow_.find(lam.parts);
    if (it != xilow_.end()) return it->second;
    const WeightBasis& b = basis(lam);
    detail::OrbitEvaluator ev(ctx_, b);
    XiTable t;
    for (bool plus : {true, false}) {
      auto vals = ev.build_xi(plus);
      auto& side = plus ? t.plus : t.minus;
      for (int k = 0; k < b.dim(); ++k) {
        WVector v(lam, b.dim(), ctx_.registry());
        for (int c = 0; c < b.dim(); ++c)
          v.c[static_cast<size_t>(c)] =
              ctx_.constant(vals[static_cast<size_t>(k)][static_cast<size_t>(c)]);
        side.push_back(std::move(v));
      }
    }
    return xilow_.emplace(lam.parts, std::move(t)).first->second;
  }

  // --- structure scalars, cached per basis word -----------------------------
  RatFunc Q_of(const Composition& lam, const ColorWord& w) { return struct_Q(ctx_, lam, w); }
  RatFunc R_of(const Composition& lam, const ColorWord& w) { return struct_R(ctx_, lam, w); }

  // --- distinguished vectors -----------------------------------------------
  WVector v_plus(const Composition& lam) {
    const WeightBasis& b = basis(lam);
    WVector v(lam, b.dim(), ctx_.registry());
    for (auto& x : v.c) x = ctx_.one();
    return v;
  }

  WVector v_eq(const Composition& lam) { return xi_combination(lam, true, false); }
  WVector v_minus(const Composition& lam) { return xi_combination(lam, false, false); }

  // Specialized distinguished vectors through the xi_low tables; in the
  // symbolic mode these agree with v_eq / v_minus.
  WVector v_eq_low(const Composition& lam) { return distinguished_low(lam, true); }
  WVector v_minus_low(const Composition& lam) { return distinguished_low(lam, false); }

  // sum_I  f(z_I)/R(z_I) xi_I  (with Q included when with_Q).
  WVector xi_combination(const Composition& lam, bool plus_side, bool with_Q,
                         const std::function<RatFunc(const ColorWord&)>& coeff = nullptr) {
    const WeightBasis& b = basis(lam);
    const XiTable& t = xi(lam);
    WVector acc(lam, b.dim(), ctx_.registry());
    for (int k = 0; k < b.dim(); ++k) {
      RatFunc s = ctx_.one() / R_of(lam, b.word(k));
      if (with_Q) s *= Q_of(lam, b.word(k));
      if (coeff) s *= coeff(b.word(k));
      acc = acc + s * (plus_side ? t.plus[static_cast<size_t>(k)] : t.minus[static_cast<size_t>(k)]);
    }
    return acc;
  }

  // --- theta maps (closed xi-expansion form) ---------------------------------
  // f is a function of the block variables: block a lives on the z-slots of
  // I^min_a. theta kind: +1 -> theta^+, 0 -> theta^=, -1 -> theta^-.
  WVector theta(const Composition& lam, int kind, const RatFunc& f) {
    require_block_symmetric(lam, f);
    bool plus_side = (kind >= 0);
    bool with_Q = (kind > 0);
    return xi_combination(lam, plus_side, with_Q,
                          [&](const ColorWord& w) { return substitute_at(lam, f, w); });
  }

  // Summation-over-S_n definition; the independent route for consistency
  // tests at small n.
  WVector theta_by_definition(const Composition& lam, int kind, const RatFunc& f) {
    const WeightBasis& b = basis(lam);
    const int n = ctx_.n();
    RatFunc base;
    ColorWord anchor;
    bool plus_hat;
    if (kind > 0) {
      base = f.permute_vars(detail::z_reverse_perm(ctx_));
      anchor = b.imax();
      plus_hat = true;
    } else if (kind == 0) {
      RatFunc qlam_check = Q_of(lam, b.imax());
      base = f.permute_vars(detail::z_reverse_perm(ctx_)) / qlam_check;
      anchor = b.imax();
      plus_hat = true;
    } else {
      RatFunc qlam = Q_of(lam, b.imin());
      base = f / qlam;
      anchor = b.imin();
      plus_hat = false;
    }
    WVector acc(lam, b.dim(), ctx_.registry());
    std::vector<int> sigma(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) sigma[static_cast<size_t>(a)] = a + 1;
    Rat fact(1);
    for (int p : lam.parts)
      for (int k = 2; k <= p; ++k) fact *= Rat(k);
    do {
      RatFunc val = sn_hat_sigma(ctx_, plus_hat, sigma, base);
      int idx = b.index_of(word_apply(anchor, sigma));
      acc.c[static_cast<size_t>(idx)] += val;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    RatFunc scale = ctx_.constant(1 / fact);
    return scale * acc;
  }

  // Substitutes the block variables of f at the decomposition w: the k-th
  // variable of block a goes to z_{(I_a)_k}.
  RatFunc substitute_at(const Composition& lam, const RatFunc& f, const ColorWord& w) {
    std::vector<int> perm(static_cast<size_t>(ctx_.registry()->size()));
    for (size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
    ColorWord wmin = word_min(lam);
    for (int a = 1; a <= lam.N; ++a) {
      auto home = word_block(wmin, a);
      auto dest = word_block(w, a);
      for (size_t k = 0; k < home.size(); ++k)
        perm[static_cast<size_t>(ctx_.z_var(home[k]))] = ctx_.z_var(dest[k]);
    }
    return f.permute_vars(perm);
  }

  void require_block_symmetric(const Composition& lam, const RatFunc& f) {
    ColorWord wmin = word_min(lam);
    for (int a = 1; a <= lam.N; ++a) {
      auto home = word_block(wmin, a);
      for (size_t k = 0; k + 1 < home.size(); ++k) {
        auto perm = detail::z_swap_perm(ctx_, home[k]);
        if (!(f.permute_vars(perm) == f))
          throw std::invalid_argument("theta: input not symmetric in block " + std::to_string(a));
      }
    }
  }

  // --- Shapovalov form -------------------------------------------------------
  RatFunc shapovalov(const WVector& f, const WVector& g) {
    if (f.lam.parts != g.lam.parts)
      throw std::invalid_argument("shapovalov: weight mismatch");
    RatFunc acc = ctx_.zero();
    for (size_t k = 0; k < f.c.size(); ++k) acc += f.c[k] * g.c[k];
    return acc;
  }

  // --- pointwise gl_N action -------------------------------------------------
  // e_{i,j} relabels one slot of color j to color i; weight shifts by e_i - e_j.
  WVector gl_act(int i, int j, const WVector& f) {
    const WeightBasis& src = basis(f.lam);
    if (i == j) {
      WVector r = f;
      RatFunc mult = ctx_.constant(Rat(f.lam.parts[static_cast<size_t>(i - 1)]));
      for (auto& x : r.c) x *= mult;
      return r;
    }
    Composition tl = f.lam.shifted(i, j);
    if (!tl.valid()) return WVector(tl, 0, ctx_.registry());
    const WeightBasis& dst = basis(tl);
    WVector r(tl, dst.dim(), ctx_.registry());
    for (int k = 0; k < src.dim(); ++k) {
      if (f.c[static_cast<size_t>(k)].is_zero()) continue;
      const ColorWord& w = src.word(k);
      for (size_t a = 0; a < w.size(); ++a) {
        if (w[a] != j) continue;
        ColorWord v = w;
        v[a] = i;
        r.c[static_cast<size_t>(dst.index_of(v))] += f.c[static_cast<size_t>(k)];
      }
    }
    return r;
  }

  // --- slot reversal with z-reversal -----------------------------------------
  WVector pi_tilde(const WVector& f) {
    const WeightBasis& b = basis(f.lam);
    auto perm = detail::z_reverse_perm(ctx_);
    WVector r(f.lam, b.dim(), ctx_.registry());
    for (int k = 0; k < b.dim(); ++k) {
      ColorWord w = b.word(k);
      std::reverse(w.begin(), w.end());
      r.c[static_cast<size_t>(k)] = f.c[static_cast<size_t>(b.index_of(w))].permute_vars(perm);
    }
    return r;
  }

  // Applies the scalar assignment to every coefficient.
  WVector lowered(const WVector& f) {
    WVector r = f;
    for (auto& x : r.c) x = ctx_.lower(x);
    return r;
  }

 private:
  WVector distinguished_low(const Composition& lam, bool plus_side) {
    const WeightBasis& b = basis(lam);
    const XiTable& t = xi_low(lam);
    WVector acc(lam, b.dim(), ctx_.registry());
    for (int k = 0; k < b.dim(); ++k) {
      RatFunc s = ctx_.lower(ctx_.one() / R_of(lam, b.word(k)));
      acc = acc + s * (plus_side ? t.plus[static_cast<size_t>(k)] : t.minus[static_cast<size_t>(k)]);
    }
    return acc;
  }

 public:

 private:
  Context& ctx_;
  std::map<std::vector<int>, std::unique_ptr<WeightBasis>> bases_;
  std::map<std::vector<int>, XiTable> xi_, xilow_;
};

}  // namespace ybl

#endif
