#ifndef YBL_COHOMOLOGY_HPP
#define YBL_COHOMOLOGY_HPP

#include <optional>

#include "ybl/yangian.hpp"

namespace ybl {

/*
  Fixed-point model of the equivariant cohomology of a cotangent bundle of
  a partial flag variety: a class is the vector of its restrictions to the
  torus fixed points, one rational function per index decomposition.
  Products are pointwise, integrals are localization sums, and equality of
  classes is equality of restriction vectors.

  Polynomial representatives are carried in the block elementary symmetric
  slots s_{a,r} of the registry (one flat slot per Chern root), which keeps
  every representative inside the block-symmetric subring by construction.
  The raw Chern-root alphabet g_* is only an input format: see from_gamma.
*/

struct CohomClass {
  Composition lam;
  std::vector<RatFunc> restr;          // indexed by the canonical word order
  std::optional<RatFunc> rep;          // polynomial representative in s-slots

  bool is_zero() const {
    for (auto& x : restr)
      if (!x.is_zero()) return false;
    return true;
  }
};

class HBasis;

class CohomModel {
 public:
  CohomModel(WeightModel& wm, YangianModel& ym) : wm_(wm), ym_(ym), ctx_(wm.ctx()) {}

  Context& ctx() const { return ctx_; }
  WeightModel& weights() const { return wm_; }
  YangianModel& yangian() const { return ym_; }

  // --- polynomial representatives -------------------------------------------

  // Elementary symmetric polynomial of a value list.
  RatFunc elem_sym(const std::vector<RatFunc>& vals, int r) const {
    if (r == 0) return ctx_.one();
    if (r > static_cast<int>(vals.size())) return ctx_.zero();
    // dynamic programming over prefixes
    std::vector<RatFunc> e(static_cast<size_t>(r) + 1, ctx_.zero());
    e[0] = ctx_.one();
    for (auto& v : vals)
      for (int k = std::min<int>(r, static_cast<int>(&v - vals.data()) + 1); k >= 1; --k)
        e[static_cast<size_t>(k)] += v * e[static_cast<size_t>(k - 1)];
    return e[static_cast<size_t>(r)];
  }

  // s-slot variable of sigma_r over block a (flat indexing by lam).
  RatFunc sigma_slot(const Composition& lam, int a, int r) const {
    return RatFunc::variable(ctx_.registry(), ctx_.sigma_var(lam.block_offset(a) + r));
  }

  // Restriction of an s-slot polynomial at a fixed point.
  RatFunc restrict_sigma(const Composition& lam, const RatFunc& rep, const ColorWord& w) const {
    std::map<int, RatFunc> sub;
    for (int a = 1; a <= lam.N; ++a) {
      std::vector<RatFunc> zvals;
      for (int pos : word_block(w, a)) zvals.push_back(ctx_.z(pos));
      for (int r = 1; r <= lam.parts[static_cast<size_t>(a - 1)]; ++r)
        sub[ctx_.sigma_var(lam.block_offset(a) + r)] = elem_sym(zvals, r);
    }
    return rep.substitute(sub);
  }

  CohomClass from_sigma(const Composition& lam, const RatFunc& rep) {
    const WeightBasis& b = wm_.basis(lam);
    CohomClass c;
    c.lam = lam;
    c.rep = rep;
    for (int k = 0; k < b.dim(); ++k) c.restr.push_back(restrict_sigma(lam, rep, b.word(k)));
    return c;
  }

  // Input in the raw Chern-root alphabet; must be symmetric within each
  // block of g-slots (block a occupies flat slots offset+1..offset+lam_a).
  CohomClass from_gamma(const Composition& lam, const RatFunc& p) {
    for (int a = 1; a <= lam.N; ++a) {
      int off = lam.block_offset(a);
      for (int k = 1; k + 1 <= lam.parts[static_cast<size_t>(a - 1)]; ++k) {
        std::vector<int> perm(static_cast<size_t>(ctx_.registry()->size()));
        for (size_t t = 0; t < perm.size(); ++t) perm[t] = static_cast<int>(t);
        std::swap(perm[static_cast<size_t>(ctx_.gamma_var(off + k))],
                  perm[static_cast<size_t>(ctx_.gamma_var(off + k + 1))]);
        if (!(p.permute_vars(perm) == p))
          throw std::invalid_argument("from_gamma: input not symmetric in block " + std::to_string(a));
      }
    }
    const WeightBasis& b = wm_.basis(lam);
    CohomClass c;
    c.lam = lam;
    for (int k = 0; k < b.dim(); ++k) {
      std::map<int, RatFunc> sub;
      for (int a = 1; a <= lam.N; ++a) {
        auto dest = word_block(b.word(k), a);
        int off = lam.block_offset(a);
        for (size_t t = 0; t < dest.size(); ++t)
          sub[ctx_.gamma_var(off + static_cast<int>(t) + 1)] = ctx_.z(dest[t]);
      }
      c.restr.push_back(p.substitute(sub));
    }
    return c;
  }

  CohomClass unit(const Composition& lam) { return from_sigma(lam, ctx_.one()); }

  // gamma_{i,1} + ... + gamma_{i,lam_i}: the first Chern class of the i-th
  // tautological quotient.
  CohomClass chern_sum(const Composition& lam, int i) {
    return from_sigma(lam, sigma_slot(lam, i, 1));
  }

  CohomClass product(const CohomClass& a, const CohomClass& b) const {
    if (a.lam.parts != b.lam.parts) throw std::invalid_argument("CohomClass: weight mismatch");
    CohomClass c;
    c.lam = a.lam;
    for (size_t k = 0; k < a.restr.size(); ++k) c.restr.push_back(a.restr[k] * b.restr[k]);
    if (a.rep && b.rep) c.rep = *a.rep * *b.rep;
    return c;
  }

  CohomClass add(const CohomClass& a, const CohomClass& b) const {
    if (a.lam.parts != b.lam.parts) throw std::invalid_argument("CohomClass: weight mismatch");
    CohomClass c;
    c.lam = a.lam;
    for (size_t k = 0; k < a.restr.size(); ++k) c.restr.push_back(a.restr[k] + b.restr[k]);
    if (a.rep && b.rep) c.rep = *a.rep + *b.rep;
    return c;
  }

  CohomClass scale(const RatFunc& s, const CohomClass& a) const {
    CohomClass c;
    c.lam = a.lam;
    for (auto& x : a.restr) c.restr.push_back(s * x);
    if (a.rep) c.rep = s * *a.rep;
    return c;
  }

  // --- localization integrals ------------------------------------------------
  int sign_exponent(const Composition& lam) const {
    long e = 0;
    for (int i = 0; i < lam.N; ++i)
      for (int j = i + 1; j < lam.N; ++j)
        e += static_cast<long>(lam.parts[static_cast<size_t>(i)]) * lam.parts[static_cast<size_t>(j)];
    return static_cast<int>(e % 2);
  }

  // Base-space integral: sum of restrictions over the Euler class of the
  // base tangent directions only. The result must be polynomial; a pole
  // certifies an invalid restriction vector.
  RatFunc integrate_base(const CohomClass& c) {
    const WeightBasis& b = wm_.basis(c.lam);
    RatFunc acc = ctx_.zero();
    for (int k = 0; k < b.dim(); ++k)
      acc += c.restr[static_cast<size_t>(k)] / ctx_.lower(wm_.R_of(c.lam, b.word(k)));
    if (sign_exponent(c.lam)) acc = -acc;
    if (!acc.is_polynomial())
      throw std::domain_error("integrate_base: localization sum has a pole; invalid class");
    return acc;
  }

  // Total-space integral: full Euler class Q*R in the denominator.
  RatFunc integrate_total(const CohomClass& c) {
    const WeightBasis& b = wm_.basis(c.lam);
    RatFunc acc = ctx_.zero();
    for (int k = 0; k < b.dim(); ++k)
      acc += c.restr[static_cast<size_t>(k)] /
             ctx_.lower(wm_.R_of(c.lam, b.word(k)) * wm_.Q_of(c.lam, b.word(k)));
    if (sign_exponent(c.lam)) acc = -acc;
    return acc;
  }

  // --- identification with the weight subspaces ------------------------------
  // Frames: columns are the images of the delta classes at the fixed points.
  enum class NuKind { Plus, Eq, Minus };

  const FieldMatrix& nu_matrix(NuKind kind, const Composition& lam) {
    auto key = std::make_pair(static_cast<int>(kind), lam.parts);
    auto it = nu_.find(key);
    if (it != nu_.end()) return it->second;
    const WeightBasis& b = wm_.basis(lam);
    const XiTable& t = wm_.xi_low(lam);
    FieldMatrix m(ctx_.registry(), b.dim(), b.dim());
    for (int col = 0; col < b.dim(); ++col) {
      RatFunc w = ctx_.one() / ctx_.lower(wm_.R_of(lam, b.word(col)));
      if (kind == NuKind::Plus) w *= ctx_.lower(wm_.Q_of(lam, b.word(col)));
      const WVector& xi = (kind == NuKind::Minus) ? t.minus[static_cast<size_t>(col)]
                                                  : t.plus[static_cast<size_t>(col)];
      for (int r = 0; r < b.dim(); ++r) m.at(r, col) = w * xi.c[static_cast<size_t>(r)];
    }
    return nu_.emplace(std::move(key), std::move(m)).first->second;
  }

  const FieldMatrix& nu_matrix_inv(NuKind kind, const Composition& lam) {
    auto key = std::make_pair(static_cast<int>(kind), lam.parts);
    auto it = nuinv_.find(key);
    if (it != nuinv_.end()) return it->second;
    FieldMatrix inv = nu_matrix(kind, lam).inverse();
    return nuinv_.emplace(std::move(key), std::move(inv)).first->second;
  }

  WVector nu(NuKind kind, const CohomClass& c) {
    const FieldMatrix& m = nu_matrix(kind, c.lam);
    WVector r(c.lam, m.rows(), ctx_.registry());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) r.c[static_cast<size_t>(i)] += m.at(i, j) * c.restr[static_cast<size_t>(j)];
    return r;
  }

  CohomClass nu_inverse(NuKind kind, const Composition& lam, const WVector& v) {
    const FieldMatrix& inv = nu_matrix_inv(kind, lam);
    CohomClass c;
    c.lam = lam;
    for (int i = 0; i < inv.rows(); ++i) {
      RatFunc acc = ctx_.zero();
      for (int j = 0; j < inv.cols(); ++j) acc += inv.at(i, j) * v.c[static_cast<size_t>(j)];
      c.restr.push_back(acc);
    }
    return c;
  }

  // Multiplication operator by c transported to the weight subspace:
  // nu o diag(restrictions) o nu^{-1}.
  FieldMatrix mu_matrix(NuKind kind, const CohomClass& c) {
    const int d = static_cast<int>(c.restr.size());
    FieldMatrix diag(ctx_.registry(), d, d);
    for (int k = 0; k < d; ++k) diag.at(k, k) = c.restr[static_cast<size_t>(k)];
    return nu_matrix(kind, c.lam) * diag * nu_matrix_inv(kind, c.lam);
  }

  // Transport of a weight-space operator to the fixed-point frames:
  // nu_dst^{-1} o op o nu_src.
  FieldMatrix transport_to_H(NuKind kind, const WOperator& op) {
    return nu_matrix_inv(kind, op.dst) * op.m * nu_matrix(kind, op.src);
  }
  FieldMatrix transport_to_H(NuKind kind, const Composition& lam, const FieldMatrix& m) {
    return nu_matrix_inv(kind, lam) * m * nu_matrix(kind, lam);
  }

  // --- generator families -----------------------------------------------------
  // f_{p,s}: coefficient polynomials of the blockwise Chern series.
  CohomClass f_ps(const Composition& lam, int p, int s) {
    // prod_i (1 + h/(u - gamma_{p,i})) = P(u+h)/P(u) with
    // P(t) = sum_r (-1)^r sigma_r t^{lam_p - r}
    const int m = lam.parts[static_cast<size_t>(p - 1)];
    auto blockpoly = [&](const RatFunc& t) {
      RatFunc acc = ctx_.zero();
      for (int r = 0; r <= m; ++r) {
        RatFunc term = t.pow(m - r) * (r ? sigma_slot(lam, p, r) : ctx_.one());
        if (r % 2) term = -term;
        acc += term;
      }
      return acc;
    };
    RatFunc ratio = blockpoly(ctx_.u() + ctx_.h()) / blockpoly(ctx_.u());
    auto coeffs = expand_at_infinity(ratio, ctx_.u_var(), s);
    RatFunc f = coeffs[static_cast<size_t>(s)] / ctx_.h();
    if (!f.is_polynomial())
      throw std::logic_error("f_ps: expansion coefficient is not polynomial");
    return from_sigma(lam, f);
  }

  // C_{p,s}: series coefficients of (A_{p-1})^{-1} A_p on the weight space.
  FieldMatrix c_ps(int sign, const Composition& lam, int p, int s) {
    FieldMatrix ratio = ym_.a_series(sign, p, lam).m;
    if (p > 1) ratio = ym_.a_series(sign, p - 1, lam).m.inverse() * ratio;
    auto coeffs = expand_at_infinity(ratio, ctx_.u_var(), s);
    return ctx_.h().inverse() * coeffs[static_cast<size_t>(s)];
  }

  // --- module structures on cohomology ---------------------------------------
  // rho(A_p(u)) on restriction vectors: multiplication by the blockwise
  // Chern series, hence diagonal at the fixed points.
  FieldMatrix rho_A_diagonal(const Composition& lam, int p) {
    const WeightBasis& b = wm_.basis(lam);
    FieldMatrix m(ctx_.registry(), b.dim(), b.dim());
    for (int k = 0; k < b.dim(); ++k) {
      RatFunc ev = ctx_.one();
      for (int a = 1; a <= p; ++a)
        for (int pos : word_block(b.word(k), a)) ev *= ctx_.one() + ctx_.h() / (ctx_.u() - ctx_.z(pos));
      m.at(k, k) = ev;
    }
    return m;
  }

  const HBasis& hbasis(const Composition& lam);

 private:
  WeightModel& wm_;
  YangianModel& ym_;
  Context& ctx_;
  std::map<std::pair<int, std::vector<int>>, FieldMatrix> nu_, nuinv_;
  std::map<std::vector<int>, std::shared_ptr<HBasis>> hb_;
};

/*
  Frame of monomial classes spanning the cohomology of one weight: products
  of block elementary symmetric slots, enumerated by total Chern-root degree
  and then lexicographically, greedily kept while the restriction matrix
  rank grows. The first element is always the unit class.
*/
class HBasis {
 public:
  HBasis(CohomModel& cm, const Composition& lam) : lam_(lam) {
    Context& ctx = cm.ctx();
    const WeightBasis& b = cm.weights().basis(lam);
    const int d = b.dim();
    long maxdeg = 0;
    for (int i = 0; i < lam.N; ++i)
      for (int j = i + 1; j < lam.N; ++j)
        maxdeg += static_cast<long>(lam.parts[static_cast<size_t>(i)]) * lam.parts[static_cast<size_t>(j)];

    // row-reduced copies for the greedy rank test
    std::vector<std::vector<RatFunc>> reduced;
    std::vector<int> pivots;
    auto try_add = [&](const CohomClass& c) {
      std::vector<RatFunc> v = c.restr;
      for (size_t r = 0; r < reduced.size(); ++r) {
        const RatFunc& lead = v[static_cast<size_t>(pivots[r])];
        if (lead.is_zero()) continue;
        RatFunc f = lead;
        for (int k = 0; k < d; ++k) v[static_cast<size_t>(k)] -= f * reduced[r][static_cast<size_t>(k)];
      }
      int piv = -1;
      for (int k = 0; k < d; ++k)
        if (!v[static_cast<size_t>(k)].is_zero()) {
          piv = k;
          break;
        }
      if (piv < 0) return false;
      RatFunc inv = v[static_cast<size_t>(piv)].inverse();
      for (int k = 0; k < d; ++k) v[static_cast<size_t>(k)] *= inv;
      reduced.push_back(std::move(v));
      pivots.push_back(piv);
      return true;
    };

    for (long deg = 0; deg <= std::max<long>(maxdeg, 0) && static_cast<int>(classes_.size()) < d; ++deg) {
      // all exponent patterns c_{a,r} with sum r*c_{a,r} = deg
      std::vector<std::pair<int, int>> slots;  // (block, r)
      for (int a = 1; a <= lam.N; ++a)
        for (int r = 1; r <= lam.parts[static_cast<size_t>(a - 1)]; ++r) slots.push_back({a, r});
      std::vector<int> expo(slots.size(), 0);
      std::function<void(size_t, long)> rec = [&](size_t pos, long left) {
        if (static_cast<int>(classes_.size()) >= d) return;
        if (pos == slots.size()) {
          if (left != 0) return;
          RatFunc mono = ctx.one();
          for (size_t t = 0; t < slots.size(); ++t)
            for (int rep = 0; rep < expo[t]; ++rep)
              mono *= cm.sigma_slot(lam, slots[t].first, slots[t].second);
          CohomClass c = cm.from_sigma(lam, mono);
          if (try_add(c)) classes_.push_back(std::move(c));
          return;
        }
        long r = slots[pos].second;
        for (long e = 0; e * r <= left; ++e) {
          expo[pos] = static_cast<int>(e);
          rec(pos + 1, left - e * r);
        }
        expo[pos] = 0;
      };
      rec(0, deg);
    }
    if (static_cast<int>(classes_.size()) != d)
      throw std::logic_error("HBasis: monomial stream did not reach full rank at lambda=" + lam.str());

    frame_ = FieldMatrix(ctx.registry(), d, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) frame_.at(r, c) = classes_[static_cast<size_t>(c)].restr[static_cast<size_t>(r)];
    frame_inv_ = frame_.inverse();
  }

  const Composition& lam() const { return lam_; }
  int size() const { return static_cast<int>(classes_.size()); }
  const CohomClass& cls(int k) const { return classes_.at(static_cast<size_t>(k)); }
  const FieldMatrix& frame() const { return frame_; }          // restrictions, column-major classes
  const FieldMatrix& frame_inv() const { return frame_inv_; }  // delta -> monomial coordinates

 private:
  Composition lam_;
  std::vector<CohomClass> classes_;
  FieldMatrix frame_, frame_inv_;
};

inline const HBasis& CohomModel::hbasis(const Composition& lam) {
  auto it = hb_.find(lam.parts);
  if (it == hb_.end()) it = hb_.emplace(lam.parts, std::make_shared<HBasis>(*this, lam)).first;
  return *it->second;
}

}  // namespace ybl

#endif
