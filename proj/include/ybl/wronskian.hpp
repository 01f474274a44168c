#ifndef YBL_WRONSKIAN_HPP
#define YBL_WRONSKIAN_HPP

#include "ybl/cohomology.hpp"

namespace ybl {

/*
  The h-difference Wronskian determinant, the algebra it presents realized
  as the commuting operator family on a weight subspace, the transport maps
  between the two pictures, the deformed products and bilinear pairings on
  cohomology, and the Calogero-Moser matrix identities.

  Elements of the presented algebra are carried as polynomials in the block
  elementary symmetric slots s_{a,r}; their operator images are obtained by
  substituting the commuting generator matrices, which are recovered
  triangularly from the resolvent family of the q-weighted minors.
*/
class WronskianModel {
 public:
  explicit WronskianModel(CohomModel& cm)
      : cm_(cm), ym_(cm.yangian()), wm_(cm.weights()), ctx_(cm.ctx()) {}

  Context& ctx() const { return ctx_; }
  CohomModel& cohomology() const { return cm_; }

  // --- determinants -----------------------------------------------------------

  // Row polynomial prod_k (t - g_{i,k} + shift) written in the s-slots.
  RatFunc block_char_poly(const Composition& lam, int i, const RatFunc& t) const {
    const int m = lam.parts[static_cast<size_t>(i - 1)];
    RatFunc acc = ctx_.zero();
    for (int r = 0; r <= m; ++r) {
      RatFunc term = t.pow(m - r);
      if (r) term *= cm_.sigma_slot(lam, i, r);
      if (r % 2) term = -term;
      acc += term;
    }
    return acc;
  }

  RatFunc vandermonde_q(int upto = -1) const {
    int N = (upto < 0) ? ctx_.N() : upto;
    RatFunc p = ctx_.one();
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j) p *= ctx_.q(i) - ctx_.q(j);
    return p;
  }

  // W(u): N x N determinant with entries q_i^{N-j} prod_k (u - g_{i,k} + h(i-j)).
  RatFunc wronskian_det(const Composition& lam) {
    auto it = wdet_.find(lam.parts);
    if (it != wdet_.end()) return it->second;
    const int N = lam.N;
    FieldMatrix m(ctx_.registry(), N, N);
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j)
        m.at(i - 1, j - 1) = ctx_.q(i).pow(N - j) *
                             block_char_poly(lam, i, ctx_.u() + ctx_.constant(Rat(i - j)) * ctx_.h());
    RatFunc w = m.det();
    wdet_.emplace(lam.parts, w);
    return w;
  }

  // What(u, x): the bordered (N+1) x (N+1) determinant with q_0 = x and an
  // empty zeroth block.
  RatFunc wronskian_det_hat(const Composition& lam) {
    auto it = whdet_.find(lam.parts);
    if (it != whdet_.end()) return it->second;
    const int N = lam.N;
    FieldMatrix m(ctx_.registry(), N + 1, N + 1);
    for (int j = 0; j <= N; ++j) m.at(0, j) = ctx_.x().pow(N - j);
    for (int i = 1; i <= N; ++i)
      for (int j = 0; j <= N; ++j)
        m.at(i, j) = ctx_.q(i).pow(N - j) *
                     block_char_poly(lam, i, ctx_.u() + ctx_.constant(Rat(i - j)) * ctx_.h());
    RatFunc w = m.det();
    whdet_.emplace(lam.parts, w);
    return w;
  }

  // Monic relations: W(u)/prod(q_i - q_j) - prod_a (u - z_a), coefficient by
  // coefficient in u. All must be killed by the operator substitution.
  std::vector<RatFunc> relation_coefficients(const Composition& lam) {
    RatFunc w = wronskian_det(lam) / vandermonde_q();
    std::vector<MultiPoly> nc = w.num().coeffs_in(ctx_.u_var());
    std::vector<RatFunc> out;
    for (int k = 0; k < static_cast<int>(nc.size()); ++k)
      out.push_back(RatFunc(nc[static_cast<size_t>(k)], w.den()));
    return out;  // out[k] = coefficient of u^k
  }

  // --- series elements of the presented algebra -------------------------------
  struct WUTable {
    int smax = 0;
    std::vector<std::vector<RatFunc>> W;  // [p-1][s-1]
    std::vector<std::vector<RatFunc>> U;  // [i-1][s-1]
  };

  const WUTable& wu_table(const Composition& lam, int smax = -1) {
    if (smax < 0) {
      smax = 1;
      for (int p : lam.parts) smax = std::max(smax, p + 1);
    }
    auto key = std::make_pair(lam.parts, smax);
    auto it = wu_.find(key);
    if (it != wu_.end()) return it->second;

    const int N = lam.N;
    RatFunc ratio = wronskian_det_hat(lam) / wronskian_det(lam);
    // split off powers of x: ratio = sum_k x^k * (num_k / den)
    std::vector<MultiPoly> xc = ratio.num().coeffs_in(ctx_.x_var());
    if (static_cast<int>(xc.size()) != N + 1)
      throw std::logic_error("wu_table: unexpected x-degree");
    WUTable t;
    t.smax = smax;
    t.W.assign(static_cast<size_t>(N), {});
    for (int p = 1; p <= N; ++p) {
      RatFunc slice = RatFunc(xc[static_cast<size_t>(N - p)], ratio.den());
      // subtract the constant term sigma_p(q) (-1)^p of prod (x - q_i)
      RatFunc sig = ctx_.zero();
      std::vector<int> subset(static_cast<size_t>(p));
      std::function<void(int, int)> rec = [&](int pos, int from) {
        if (pos == p) {
          RatFunc w = ctx_.one();
          for (int v : subset) w *= ctx_.q(v);
          sig += w;
          return;
        }
        for (int v = from; v <= N; ++v) {
          subset[static_cast<size_t>(pos)] = v;
          rec(pos + 1, v + 1);
        }
      };
      rec(0, 1);
      if (p % 2) sig = -sig;
      slice -= sig;
      auto coeffs = expand_at_infinity(slice, ctx_.u_var(), smax);
      if (!coeffs[0].is_zero()) throw std::logic_error("wu_table: constant term mismatch");
      for (int s = 1; s <= smax; ++s) {
        RatFunc w = coeffs[static_cast<size_t>(s)] / ctx_.h();
        if (p % 2) w = -w;
        t.W[static_cast<size_t>(p - 1)].push_back(w);
      }
    }
    t.U.assign(static_cast<size_t>(N), {});
    for (int i = 1; i <= N; ++i) {
      RatFunc pref = ctx_.one();
      for (int j = 1; j <= N; ++j)
        if (j != i) pref /= ctx_.q(i) - ctx_.q(j);
      for (int s = 1; s <= smax; ++s) {
        RatFunc acc = ctx_.zero();
        for (int p = 1; p <= N; ++p) {
          RatFunc w = pref * ctx_.q(i).pow(N - p - 1) * t.W[static_cast<size_t>(p - 1)][static_cast<size_t>(s - 1)];
          if (p % 2 == 0) w = -w;
          acc += w;
        }
        t.U[static_cast<size_t>(i - 1)].push_back(acc);
      }
      // U_{i,1} is the block size
      if (!(t.U[static_cast<size_t>(i - 1)][0] ==
            ctx_.constant(Rat(lam.parts[static_cast<size_t>(i - 1)]))))
        throw std::logic_error("wu_table: U_{i,1} is not the block size");
    }
    return wu_.emplace(std::move(key), std::move(t)).first->second;
  }

  // --- operator realization ----------------------------------------------------
  struct MuKTable {
    Composition lam;
    int sign = +1;
    // sigma_op[i-1][r-1]: image of the r-th elementary symmetric function of
    // block i, r = 1..lam_i. All pairwise commuting.
    std::vector<std::vector<FieldMatrix>> sigma_op;
  };

  const MuKTable& mu_k(int sign, const Composition& lam) {
    auto key = std::make_pair(sign, lam.parts);
    auto it = muk_.find(key);
    if (it != muk_.end()) return it->second;

    const int N = lam.N;
    int smax = 1;
    for (int p : lam.parts) smax = std::max(smax, p + 1);
    const WUTable& wu = wu_table(lam, smax);
    auto gs = ym_.bethe_generators(sign, lam, smax, /*check_commute=*/false);

    MuKTable t;
    t.lam = lam;
    t.sign = sign;
    t.sigma_op.assign(static_cast<size_t>(N), {});
    // Triangular recovery. The series leading term is the power sum
    // p_{s-1}(block i) + h(...), so by Newton's identities the new
    // elementary symmetric function enters as (-1)^s (s-1) sigma_{s-1};
    // everything else involves sigma_r with r < s-1 only.
    for (int s = 2; s <= smax; ++s) {
      for (int i = 1; i <= N; ++i) {
        int li = lam.parts[static_cast<size_t>(i - 1)];
        if (s - 1 > li) continue;
        Rat lead = (s % 2 == 0) ? Rat(s - 1) : Rat(-(s - 1));
        RatFunc uprime = wu.U[static_cast<size_t>(i - 1)][static_cast<size_t>(s - 1)] -
                         ctx_.constant(lead) * cm_.sigma_slot(lam, i, s - 1);
        FieldMatrix rhs = gs.sops[static_cast<size_t>(i - 1)][static_cast<size_t>(s - 1)];
        rhs -= eval_sigma_poly(t, uprime);
        RatFunc inv = ctx_.constant(1 / lead);
        t.sigma_op[static_cast<size_t>(i - 1)].push_back(inv * rhs);
      }
    }
    for (int i = 1; i <= N; ++i)
      if (static_cast<int>(t.sigma_op[static_cast<size_t>(i - 1)].size()) !=
          lam.parts[static_cast<size_t>(i - 1)])
        throw std::logic_error("mu_k: generator recovery incomplete");
    return muk_.emplace(std::move(key), std::move(t)).first->second;
  }

  // Evaluates a representative at the commuting generator matrices: the
  // slots must enter polynomially, scalar coefficients may be rational.
  FieldMatrix eval_sigma_poly(const MuKTable& t, const RatFunc& spoly) {
    const int d = wm_.basis(t.lam).dim();
    for (int a = 1; a <= t.lam.N; ++a)
      for (int r = 1; r <= t.lam.parts[static_cast<size_t>(a - 1)]; ++r)
        if (spoly.den().depends_on(ctx_.sigma_var(t.lam.block_offset(a) + r)))
          throw std::invalid_argument("eval_sigma_poly: slots in the denominator");
    const MultiPoly& p = spoly.num();
    RatFunc scale = RatFunc(spoly.den()).inverse();
    FieldMatrix acc(ctx_.registry(), d, d);
    const int nv = ctx_.registry()->size();
    for (auto& [e, c] : p.terms()) {
      FieldMatrix term = FieldMatrix::identity(ctx_.registry(), d);
      Expo rest(static_cast<size_t>(nv), 0);
      bool scalar_only = true;
      for (int v = 0; v < nv; ++v) {
        if (e[static_cast<size_t>(v)] == 0) continue;
        int block = -1, r = -1;
        for (int a = 1; a <= t.lam.N && block < 0; ++a)
          for (int rr = 1; rr <= t.lam.parts[static_cast<size_t>(a - 1)] && block < 0; ++rr)
            if (ctx_.sigma_var(t.lam.block_offset(a) + rr) == v) {
              block = a;
              r = rr;
            }
        if (block < 0) {
          rest[static_cast<size_t>(v)] = e[static_cast<size_t>(v)];
          continue;
        }
        scalar_only = false;
        const FieldMatrix& g =
            t.sigma_op.at(static_cast<size_t>(block - 1)).at(static_cast<size_t>(r - 1));
        for (unsigned k = 0; k < e[static_cast<size_t>(v)]; ++k) term = term * g;
      }
      MultiPoly mono(ctx_.registry());
      mono.add_term(rest, c);
      RatFunc coef(mono);
      if (scalar_only)
        acc += coef * FieldMatrix::identity(ctx_.registry(), d);
      else
        acc += coef * term;
    }
    return scale * acc;
  }

  FieldMatrix mu_k_matrix(int sign, const Composition& lam, const RatFunc& spoly) {
    return eval_sigma_poly(mu_k(sign, lam), spoly);
  }

  // nu^k: spoly -> operator image applied to the cyclic vector. kind:
  // +1 uses the plus action and the all-ones vector; 0 the plus action and
  // the eq vector; -1 the minus action and the minus vector.
  WVector nu_k(int kind, const Composition& lam, const RatFunc& spoly) {
    int sign = (kind <= -1) ? -1 : +1;
    FieldMatrix m = mu_k_matrix(sign, lam, spoly);
    WVector v = cyclic_vector(kind, lam);
    WVector r(lam, m.rows(), ctx_.registry());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) r.c[static_cast<size_t>(i)] += m.at(i, j) * v.c[static_cast<size_t>(j)];
    return r;
  }

  WVector cyclic_vector(int kind, const Composition& lam) {
    WVector v = (kind > 0)   ? wm_.v_plus(lam)
                : (kind == 0) ? wm_.v_eq_low(lam)
                              : wm_.v_minus_low(lam);
    return wm_.lowered(v);
  }

  // Frame of nu^k over the monomial basis; invertibility certifies that the
  // cyclic vector generates.
  const FieldMatrix& nu_k_frame(int kind, const Composition& lam) {
    auto key = std::make_pair(kind, lam.parts);
    auto it = nukf_.find(key);
    if (it != nukf_.end()) return it->second;
    const HBasis& hb = cm_.hbasis(lam);
    const int d = hb.size();
    FieldMatrix m(ctx_.registry(), d, d);
    for (int col = 0; col < d; ++col) {
      WVector v = nu_k(kind, lam, *hb.cls(col).rep);
      for (int r = 0; r < d; ++r) m.at(r, col) = v.c[static_cast<size_t>(r)];
    }
    return nukf_.emplace(std::move(key), std::move(m)).first->second;
  }

  const FieldMatrix& nu_k_frame_inv(int kind, const Composition& lam) {
    auto key = std::make_pair(kind, lam.parts);
    auto it = nukfi_.find(key);
    if (it != nukfi_.end()) return it->second;
    FieldMatrix inv = nu_k_frame(kind, lam).inverse();  // throws if degenerate
    return nukfi_.emplace(std::move(key), std::move(inv)).first->second;
  }

  // --- transport and deformed products -----------------------------------------

  // beta: cohomology class -> element of the presented algebra, expressed as
  // an s-slot polynomial through the monomial frame.
  RatFunc beta(int sign, const CohomClass& c) {
    const Composition& lam = c.lam;
    const HBasis& hb = cm_.hbasis(lam);
    auto kindNu = (sign > 0) ? CohomModel::NuKind::Plus : CohomModel::NuKind::Minus;
    WVector target = cm_.nu(kindNu, c);
    const FieldMatrix& inv = nu_k_frame_inv(sign, lam);
    RatFunc out = ctx_.zero();
    for (int i = 0; i < inv.rows(); ++i) {
      RatFunc coord = ctx_.zero();
      for (int j = 0; j < inv.cols(); ++j) coord += inv.at(i, j) * target.c[static_cast<size_t>(j)];
      out += coord * *hb.cls(i).rep;
    }
    return out;
  }

  // Matrix of f (*) or f (bullet) acting on restriction vectors.
  FieldMatrix q_mult_matrix(bool star, const CohomClass& f) {
    int sign = star ? +1 : -1;
    auto kindNu = star ? CohomModel::NuKind::Plus : CohomModel::NuKind::Minus;
    FieldMatrix op = mu_k_matrix(sign, f.lam, beta(sign, f));
    return cm_.nu_matrix_inv(kindNu, f.lam) * op * cm_.nu_matrix(kindNu, f.lam);
  }

  CohomClass quantum_mul(bool star, const CohomClass& f, const CohomClass& g) {
    if (f.lam.parts != g.lam.parts) throw std::invalid_argument("quantum_mul: weight mismatch");
    const Composition& lam = f.lam;
    int sign = star ? +1 : -1;
    auto kindNu = star ? CohomModel::NuKind::Plus : CohomModel::NuKind::Minus;
    RatFunc prod = beta(sign, f) * beta(sign, g);
    WVector img = nu_k(sign, lam, prod);
    CohomClass out = cm_.nu_inverse(kindNu, lam, img);
    // polynomial representative through the monomial coordinates
    const HBasis& hb = cm_.hbasis(lam);
    RatFunc rep = ctx_.zero();
    for (int i = 0; i < hb.size(); ++i) {
      RatFunc coord = ctx_.zero();
      for (int j = 0; j < hb.size(); ++j)
        coord += hb.frame_inv().at(i, j) * out.restr[static_cast<size_t>(j)];
      rep += coord * *hb.cls(i).rep;
    }
    out.rep = rep;
    return out;
  }

  // --- bilinear pairings --------------------------------------------------------
  RatFunc pairing_round(const Composition& lam, const RatFunc& f, const RatFunc& g) {
    return wm_.shapovalov(nu_k(+1, lam, f), nu_k(-1, lam, g));
  }
  RatFunc pairing_angle(const Composition& lam, const RatFunc& f, const RatFunc& g) {
    return wm_.shapovalov(nu_k(0, lam, f), nu_k(-1, lam, g));
  }

  // --- verification reports -----------------------------------------------------

  // Substitutes the generator matrices into W(u) and compares with
  // prod(q_i - q_j) prod_a (u - z_a) Id, coefficient by coefficient in u.
  void hk_relation_check(int sign, const Composition& lam) {
    const MuKTable& t = mu_k(sign, lam);
    const int d = wm_.basis(lam).dim();
    RatFunc w = wronskian_det(lam);
    if (!w.is_polynomial()) throw std::logic_error("hk_relation_check: W not polynomial");
    MultiPoly wp = w.as_polynomial();
    auto ucoeffs = wp.coeffs_in(ctx_.u_var());
    RatFunc vq = vandermonde_q();
    // elementary symmetric functions of the z-values
    std::vector<RatFunc> zs;
    for (int a = 1; a <= ctx_.n(); ++a) zs.push_back(ctx_.z(a));
    const int n = ctx_.n();
    for (int k = 0; k < static_cast<int>(ucoeffs.size()); ++k) {
      FieldMatrix lhs = eval_sigma_poly(t, RatFunc(ucoeffs[static_cast<size_t>(k)]));
      RatFunc ek = cm_.elem_sym(zs, n - k);
      if ((n - k) % 2) ek = -ek;
      FieldMatrix rhs = (vq * ek) * FieldMatrix::identity(ctx_.registry(), d);
      if (!(lhs == rhs))
        throw std::logic_error("hk_relation_check: coefficient of u^" + std::to_string(k) +
                               " fails at lambda=" + lam.str());
    }
  }

  // --- Calogero-Moser matrices (full flag) ---------------------------------------
  FieldMatrix cm_matrix(const Composition& lam) {
    const int n = ctx_.n();
    if (lam.N != n) throw std::invalid_argument("cm_matrix: full flag only");
    FieldMatrix C(ctx_.registry(), n, n);
    for (int i = 1; i <= n; ++i) {
      RatFunc diag = cm_.sigma_slot(lam, i, 1);
      for (int j = 1; j < i; ++j) diag -= ctx_.h() * ctx_.q(i) / (ctx_.q(i) - ctx_.q(j));
      for (int j = i + 1; j <= n; ++j) diag -= ctx_.h() * ctx_.q(j) / (ctx_.q(i) - ctx_.q(j));
      C.at(i - 1, i - 1) = diag;
      for (int j = 1; j <= n; ++j)
        if (j != i) C.at(i - 1, j - 1) = ctx_.h() * ctx_.q(i) / (ctx_.q(i) - ctx_.q(j));
    }
    return C;
  }

  // W(u) = det(u - C) prod(q_i - q_j) and the bordered variant
  // What(u,x) = det((u - C)(x - Q) - hQ) prod(q_i - q_j).
  void cm_identities(const Composition& lam) {
    const int n = ctx_.n();
    FieldMatrix C = cm_matrix(lam);
    FieldMatrix uI = ctx_.u() * FieldMatrix::identity(ctx_.registry(), n);
    RatFunc vq = vandermonde_q();
    if (!(wronskian_det(lam) == (uI - C).det() * vq))
      throw std::logic_error("cm_identities: W(u) != det(u - C) Vandermonde");
    FieldMatrix Q(ctx_.registry(), n, n);
    for (int i = 1; i <= n; ++i) Q.at(i - 1, i - 1) = ctx_.q(i);
    FieldMatrix xQ = ctx_.x() * FieldMatrix::identity(ctx_.registry(), n) - Q;
    FieldMatrix M = (uI - C) * xQ - ctx_.h() * Q;
    if (!(wronskian_det_hat(lam) == M.det() * vq))
      throw std::logic_error("cm_identities: What(u,x) != det((u-C)(x-Q) - hQ) Vandermonde");
  }

  // rank(CQ - QC - hQ) at a full numeric specialization.
  int cm_rank_at(const Composition& lam, const std::vector<Rat>& xvals, const Rat& hval,
                 const std::vector<Rat>& qvals) {
    const int n = ctx_.n();
    FieldMatrix C = cm_matrix(lam);
    std::map<int, RatFunc> sub;
    for (int i = 1; i <= n; ++i) {
      sub[ctx_.sigma_var(lam.block_offset(i) + 1)] = ctx_.constant(xvals[static_cast<size_t>(i - 1)]);
      sub[ctx_.q_var(i)] = ctx_.constant(qvals[static_cast<size_t>(i - 1)]);
    }
    sub[ctx_.h_var()] = ctx_.constant(hval);
    FieldMatrix Cn(ctx_.registry(), n, n), Qn(ctx_.registry(), n, n);
    for (int i = 0; i < n; ++i) {
      Qn.at(i, i) = ctx_.constant(qvals[static_cast<size_t>(i)]);
      for (int j = 0; j < n; ++j) Cn.at(i, j) = C.at(i, j).substitute(sub);
    }
    FieldMatrix comm = Cn * Qn - Qn * Cn - ctx_.constant(hval) * Qn;
    return comm.rank();
  }

  // --- tridiagonal degeneration ----------------------------------------------
  FieldMatrix limit_matrix(const Composition& lam) {
    const int N = lam.N;
    FieldMatrix M(ctx_.registry(), N, N);
    for (int i = 1; i <= N; ++i) {
      M.at(i - 1, i - 1) = block_char_poly(lam, i, ctx_.u());
      if (i < N) {
        M.at(i - 1, i) = ctx_.constant(Rat(lam.parts[static_cast<size_t>(i - 1)] % 2 ? -1 : 1));
        M.at(i, i - 1) = ctx_.rvar(i);
      }
    }
    return M;
  }

  // Substitutes q_{i+1} = r_i q_i h^{-lam_i - lam_{i+1}} and verifies that
  // W/Vandermonde - det M vanishes as h -> infinity.
  void limit_h_check(const Composition& lam) {
    for (int p : lam.parts)
      if (p <= 0) throw std::invalid_argument("limit_h_check: requires positive parts");
    if (!ctx_.z_symbolic() || !ctx_.q_symbolic())
      throw std::invalid_argument("limit_h_check: needs symbolic h and q");
    std::map<int, RatFunc> sub;
    RatFunc cur = ctx_.one();
    sub[ctx_.q_var(1)] = cur;
    for (int i = 1; i < lam.N; ++i) {
      int drop = lam.parts[static_cast<size_t>(i - 1)] + lam.parts[static_cast<size_t>(i)];
      cur = ctx_.rvar(i) * cur / ctx_.h().pow(drop);
      sub[ctx_.q_var(i + 1)] = cur;
    }
    RatFunc lhs = (wronskian_det(lam) / vandermonde_q()).substitute(sub);
    RatFunc diff = lhs - limit_matrix(lam).det();
    if (!vanishes_at_infinity(diff, ctx_.h_var()))
      throw std::logic_error("limit_h_check: difference does not vanish at large h");
  }

 private:
  CohomModel& cm_;
  YangianModel& ym_;
  WeightModel& wm_;
  Context& ctx_;
  std::map<std::vector<int>, RatFunc> wdet_, whdet_;
  std::map<std::pair<std::vector<int>, int>, WUTable> wu_;
  std::map<std::pair<int, std::vector<int>>, MuKTable> muk_;
  std::map<std::pair<int, std::vector<int>>, FieldMatrix> nukf_, nukfi_;
};

}  // namespace ybl

#endif
