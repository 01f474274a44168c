#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ybl/yangian.hpp"

using namespace ybl;

namespace {

struct Fixture {
  Context ctx;
  WeightModel wm;
  YangianModel ym;
  Fixture(int N, int n) : ctx(N, n), wm(ctx), ym(wm) {}
};

// Independent route to L^{+-}(u): dense Kronecker-product matrices on the
// full space C^N (x) V, multiplied factor by factor, then the (i,j) block
// restricted to a weight subspace. Shares nothing with the state
// propagation in the model except the printed conventions.
struct BruteL {
  const Context& ctx;
  int N, n, dimV;

  explicit BruteL(const Context& c) : ctx(c), N(c.N()), n(c.n()), dimV(1) {
    for (int k = 0; k < n; ++k) dimV *= N;
  }

  int word_index(const ColorWord& w) const {
    int idx = 0;
    for (int k = 0; k < n; ++k) idx = idx * N + (w[static_cast<size_t>(k)] - 1);
    return idx;
  }
  ColorWord word_of(int idx) const {
    ColorWord w(static_cast<size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
      w[static_cast<size_t>(k)] = idx % N + 1;
      idx /= N;
    }
    return w;
  }

  FieldMatrix factor(int a) const {
    const int dim = N * dimV;
    FieldMatrix f(ctx.registry(), dim, dim);
    RatFunc za = ctx.z(a), h = ctx.h(), u = ctx.u();
    for (int k = 1; k <= N; ++k)
      for (int v = 0; v < dimV; ++v) {
        int col = (k - 1) * dimV + v;
        f.at(col, col) += u - za;
        ColorWord w = word_of(v);
        int wa = w[static_cast<size_t>(a - 1)];
        ColorWord w2 = w;
        w2[static_cast<size_t>(a - 1)] = k;
        int row = (wa - 1) * dimV + word_index(w2);
        f.at(row, col) += h;
      }
    return f;
  }

  // rho(T_{ij}(u/h)) restricted to V_lambda, in the canonical word order.
  FieldMatrix rho_T(int sign, int i, int j, const WeightBasis& src, const WeightBasis& dst) const {
    FieldMatrix L = factor(sign > 0 ? n : 1);
    for (int step = 1; step < n; ++step) {
      int a = (sign > 0) ? n - step : 1 + step;
      L = L * factor(a);  // rightmost factor acts first
    }
    RatFunc denom = ctx.one();
    for (int a = 1; a <= n; ++a) denom *= ctx.u() - ctx.z(a);
    FieldMatrix out(ctx.registry(), dst.dim(), src.dim());
    for (int r = 0; r < dst.dim(); ++r)
      for (int c = 0; c < src.dim(); ++c)
        out.at(r, c) =
            L.at((i - 1) * dimV + word_index(dst.word(r)), (j - 1) * dimV + word_index(src.word(c))) /
            denom;
    return out;
  }
};

WVector apply_mat(const Context& ctx, const Composition& lam, const FieldMatrix& m, const WVector& f) {
  WVector r(lam, m.rows(), ctx.registry());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.c[static_cast<size_t>(i)] += m.at(i, j) * f.c[static_cast<size_t>(j)];
  return r;
}

}  // namespace

TEST_CASE("rho_T matches the dense Kronecker oracle") {
  for (int sign : {+1, -1}) {
    SECTION(sign > 0 ? "plus" : "minus") {
      Fixture F(2, 2);
      BruteL oracle(F.ctx);
      for (auto parts : std::vector<std::vector<int>>{{1, 1}, {2, 0}, {0, 2}}) {
        Composition lam(parts);
        for (int i = 1; i <= 2; ++i)
          for (int j = 1; j <= 2; ++j) {
            const WOperator& t = F.ym.rho_T(sign, i, j, lam);
            if (!t.dst.valid()) continue;
            FieldMatrix expect =
                oracle.rho_T(sign, i, j, F.wm.basis(lam), F.wm.basis(t.dst));
            CHECK(t.m == expect);
          }
      }
    }
  }
}

TEST_CASE("rho_T derived values at lambda=(1,1)") {
  Fixture F(2, 2);
  auto& ctx = F.ctx;
  Composition lam({1, 1});
  RatFunc u = ctx.u(), h = ctx.h(), z1 = ctx.z(1), z2 = ctx.z(2), one = ctx.one();

  SECTION("diagonal entry of the plus action") {
    const WOperator& t = F.ym.rho_T(+1, 1, 1, lam);
    // column of v_{(1,2)}: plain (1 + h/(u - z1)) on itself
    CHECK(t.m.at(0, 0) == one + h / (u - z1));
    CHECK(t.m.at(1, 0).is_zero());
    // column of v_{(2,1)}: diagonal (1 + h/(u - z2)) plus transfer to v_{(1,2)}
    CHECK(t.m.at(1, 1) == one + h / (u - z2));
    CHECK(t.m.at(0, 1) == h * h / ((u - z1) * (u - z2)));
  }
  SECTION("n=1 single factor") {
    Fixture F1(2, 1);
    const WOperator& t = F1.ym.rho_T(+1, 1, 1, Composition({1, 0}));
    CHECK(t.m.at(0, 0) == F1.ctx.one() + F1.ctx.h() / (F1.ctx.u() - F1.ctx.z(1)));
  }
  SECTION("leading term at infinity is the identity") {
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        const WOperator& t = F.ym.rho_T(-1, i, j, lam);
        if (!t.dst.valid() || t.dst.parts != lam.parts) continue;
        auto c0 = expand_at_infinity(t.m, ctx.u_var(), 0)[0];
        if (i == j)
          CHECK(c0 == FieldMatrix::identity(ctx.registry(), 2));
        else
          CHECK(c0.is_zero());
      }
  }
}

TEST_CASE("RTT relation at two generic spectral points") {
  // (u-v)[T_ij(u/h), T_kl(v/h)] = h ( T_kj(v/h) T_il(u/h) - T_kj(u/h) T_il(v/h) )
  // checked after substituting rational spectral points.
  for (int n : {1, 2}) {
    Fixture F(2, n);
    auto& ctx = F.ctx;
    Composition lam = (n == 1) ? Composition({1, 0}) : Composition({1, 1});
    RatFunc u0 = ctx.constant(Rat(31)), v0 = ctx.constant(Rat(17, 2));
    for (int sign : {+1, -1}) {
      auto T = [&](int i, int j, const Composition& src, const RatFunc& point) {
        const WOperator& t = F.ym.rho_T(sign, i, j, src);
        return subst_var(t.m, ctx.u_var(), point);
      };
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
          for (int k = 1; k <= 2; ++k)
            for (int l = 1; l <= 2; ++l) {
              Composition m1 = lam.shifted(l, k);
              Composition m2 = lam.shifted(j, i);
              Composition mkj = lam.shifted(j, k);
              Composition top = m1.shifted(j, i);
              if (!m1.valid() || !m2.valid() || !top.valid()) continue;
              FieldMatrix lhs =
                  (u0 - v0) * (T(i, j, m1, u0) * T(k, l, lam, v0) - T(k, l, m2, v0) * T(i, j, lam, u0));
              FieldMatrix rhs(ctx.registry(), lhs.rows(), lhs.cols());
              if (mkj.valid()) {
                rhs += T(i, l, mkj, u0) * T(k, j, lam, v0);
                rhs -= T(i, l, mkj, v0) * T(k, j, lam, u0);
              }
              CHECK(lhs == ctx.h() * rhs);
            }
    }
  }
}

TEST_CASE("quantum determinant acts as an explicit scalar") {
  Fixture F(2, 2);
  auto& ctx = F.ctx;
  RatFunc expect = (ctx.one() + ctx.h() / (ctx.u() - ctx.z(1))) * (ctx.one() + ctx.h() / (ctx.u() - ctx.z(2)));
  for (int sign : {+1, -1}) {
    for (auto parts : std::vector<std::vector<int>>{{1, 1}, {2, 0}}) {
      Composition lam(parts);
      const WOperator& qd = F.ym.a_series(sign, 2, lam);
      FieldMatrix want = expect * FieldMatrix::identity(ctx.registry(), F.wm.basis(lam).dim());
      CHECK(qd.m == want);
    }
  }
  SECTION("p=1 minor is rho_T itself") {
    Composition lam({1, 1});
    CHECK(F.ym.quantum_minor(+1, {1}, {1}, lam).m == F.ym.rho_T(+1, 1, 1, lam).m);
  }
}

TEST_CASE("A_1 matrices from the direct expansion") {
  Fixture F(2, 2);
  auto& ctx = F.ctx;
  Composition lam({1, 1});
  RatFunc u = ctx.u(), h = ctx.h(), z1 = ctx.z(1), z2 = ctx.z(2), one = ctx.one();
  RatFunc offdiag = h * h / ((u - z1) * (u - z2));

  const WOperator& ap = F.ym.a_series(+1, 1, lam);
  CHECK(ap.m.at(0, 0) == one + h / (u - z1));
  CHECK(ap.m.at(1, 1) == one + h / (u - z2));
  CHECK(ap.m.at(0, 1) == offdiag);  // image of v_{(2,1)} leaks onto v_{(1,2)}
  CHECK(ap.m.at(1, 0).is_zero());

  const WOperator& am = F.ym.a_series(-1, 1, lam);
  CHECK(am.m.at(0, 0) == one + h / (u - z1));
  CHECK(am.m.at(1, 1) == one + h / (u - z2));
  CHECK(am.m.at(1, 0) == offdiag);  // transposed placement for the minus action
  CHECK(am.m.at(0, 1).is_zero());

  SECTION("(A_1^+)^{-1} A_2^+") {
    FieldMatrix g = ap.m.inverse() * F.ym.a_series(+1, 2, lam).m;
    CHECK(g.at(0, 0) == one + h / (u - z2));
    CHECK(g.at(1, 1) == one + h / (u - z1));
    CHECK(g.at(0, 1) == -offdiag);
    CHECK(g.at(1, 0).is_zero());
  }
}

TEST_CASE("A/E/F closed forms on the xi basis equal the minor route") {
  auto xi_matrix = [](Fixture& F, int sign, const Composition& lam) {
    const XiTable& t = F.wm.xi(lam);
    const WeightBasis& b = F.wm.basis(lam);
    FieldMatrix m(F.ctx.registry(), b.dim(), b.dim());
    for (int c = 0; c < b.dim(); ++c)
      for (int r = 0; r < b.dim(); ++r)
        m.at(r, c) = F.ctx.lower((sign > 0 ? t.plus : t.minus)[static_cast<size_t>(c)].c[static_cast<size_t>(r)]);
    return m;
  };

  for (auto parts : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 1, 1}}) {
    Composition lam(parts);
    Fixture F(lam.N, lam.n());
    auto& ctx = F.ctx;
    const WeightBasis& b = F.wm.basis(lam);
    for (int sign : {+1, -1}) {
      FieldMatrix Xi = xi_matrix(F, sign, lam);
      FieldMatrix XiInv = Xi.inverse();

      // A_p: diagonal with the blockwise eigenvalue
      for (int p = 1; p <= lam.N; ++p) {
        FieldMatrix diag(ctx.registry(), b.dim(), b.dim());
        for (int k = 0; k < b.dim(); ++k) {
          RatFunc ev = ctx.one();
          for (int a = 1; a <= p; ++a)
            for (int pos : word_block(b.word(k), a)) ev *= ctx.one() + ctx.h() / (ctx.u() - ctx.z(pos));
          diag.at(k, k) = ev;
        }
        CHECK(F.ym.a_series(sign, p, lam).m == Xi * diag * XiInv);
      }

      // E_p and F_p: single sums over moved indices
      for (int p = 1; p < lam.N; ++p) {
        Composition up = lam.shifted(p, p + 1);  // lambda + alpha_p
        if (up.valid()) {
          const WeightBasis& ub = F.wm.basis(up);
          FieldMatrix exi(ctx.registry(), ub.dim(), b.dim());
          for (int k = 0; k < b.dim(); ++k) {
            const ColorWord& w = b.word(k);
            for (int pos : word_block(w, p + 1)) {
              ColorWord v = w;
              v[static_cast<size_t>(pos - 1)] = p;
              RatFunc coef = ctx.one() / (ctx.u() - ctx.z(pos));
              for (int other : word_block(w, p + 1)) {
                if (other == pos) continue;
                coef *= (ctx.z(pos) - ctx.z(other) + ctx.h()) / (ctx.z(pos) - ctx.z(other));
              }
              exi.at(ub.index_of(v), k) += coef;
            }
          }
          FieldMatrix XiUp = xi_matrix(F, sign, up);
          CHECK(F.ym.e_series(sign, p, lam).m == XiUp * exi * XiInv);
        }
        Composition dn = lam.shifted(p + 1, p);  // lambda - alpha_p
        if (dn.valid()) {
          const WeightBasis& db = F.wm.basis(dn);
          FieldMatrix fxi(ctx.registry(), db.dim(), b.dim());
          for (int k = 0; k < b.dim(); ++k) {
            const ColorWord& w = b.word(k);
            for (int pos : word_block(w, p)) {
              ColorWord v = w;
              v[static_cast<size_t>(pos - 1)] = p + 1;
              RatFunc coef = ctx.one() / (ctx.u() - ctx.z(pos));
              for (int other : word_block(w, p)) {
                if (other == pos) continue;
                coef *= (ctx.z(pos) - ctx.z(other) - ctx.h()) / (ctx.z(pos) - ctx.z(other));
              }
              fxi.at(db.index_of(v), k) += coef;
            }
          }
          FieldMatrix XiDn = xi_matrix(F, sign, dn);
          CHECK(F.ym.f_series(sign, p, lam).m == XiDn * fxi * XiInv);
        }
      }
    }
  }
}

TEST_CASE("lowering chain from the distinguished vectors") {
  // [u^{-s}] E_p^-(u) with s = lambda_p - lambda_{p+1} + 2 sends v^-_lambda
  // to (-1)^{lambda_p} v^-_{lambda + alpha_p}.
  auto check_lowering = [](Fixture& F, const Composition& lam, int p) {
    int s = lam.parts[static_cast<size_t>(p - 1)] - lam.parts[static_cast<size_t>(p)] + 2;
    REQUIRE(s >= 1);
    WOperator e = F.ym.e_series(-1, p, lam);
    auto coeffs = expand_at_infinity(e.m, F.ctx.u_var(), s);
    WVector vm = F.wm.v_minus(lam);
    WVector img = apply_mat(F.ctx, e.dst, coeffs[static_cast<size_t>(s)], vm);
    WVector want = F.wm.v_minus(e.dst);
    if (lam.parts[static_cast<size_t>(p - 1)] % 2 == 1) want = -want;
    CHECK(img == want);
  };
  {
    Fixture F(2, 2);
    check_lowering(F, Composition({1, 1}), 1);
  }
  {
    Fixture F(2, 3);
    check_lowering(F, Composition({2, 1}), 1);
    check_lowering(F, Composition({1, 2}), 1);
  }
  {
    Fixture F(3, 3);
    check_lowering(F, Composition({1, 1, 1}), 1);
    check_lowering(F, Composition({1, 1, 1}), 2);
  }
}

TEST_CASE("Bethe generator families") {
  SECTION("symbolic q, N=n=2: construction checks commutativity") {
    Fixture F(2, 2);
    Composition lam({1, 1});
    auto gs = F.ym.bethe_generators(+1, lam);
    REQUIRE(gs.s_max == 2);

    // S_{i,1} acts as the weight e_{ii}
    FieldMatrix id = FieldMatrix::identity(F.ctx.registry(), 2);
    CHECK(gs.sops[0][0] == id);  // lambda_1 = 1
    CHECK(gs.sops[1][0] == id);
  }
  SECTION("rational q panels, n=3") {
    for (auto parts : std::vector<std::vector<int>>{{2, 1}, {1, 1, 1}}) {
      Composition lam(parts);
      Context ctx(lam.N, lam.n());
      ctx.specialize_z({Rat(0), Rat(1), Rat(5)}, Rat(3));
      ctx.specialize_q(default_q_values(lam.N));
      WeightModel wm(ctx);
      YangianModel ym(wm);
      CHECK_NOTHROW(ym.bethe_generators(+1, lam));
      CHECK_NOTHROW(ym.bethe_generators(-1, lam));
    }
  }
  SECTION("resolvent family degenerates to consecutive leading minors") {
    // q_i -> u^{N-i}, u -> infinity: S_{i,s} tends to B^inf_{i,s} - B^inf_{i-1,s}.
    Fixture F(2, 2);
    Composition lam({1, 1});
    auto gs = F.ym.bethe_generators(+1, lam);
    for (int i = 1; i <= 2; ++i)
      for (int s = 1; s <= gs.s_max; ++s) {
        FieldMatrix sub(F.ctx.registry(), 2, 2);
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) {
            RatFunc e = gs.sops[static_cast<size_t>(i - 1)][static_cast<size_t>(s - 1)].at(r, c);
            e = e.substitute({{F.ctx.q_var(1), F.ctx.u()}, {F.ctx.q_var(2), F.ctx.one()}});
            sub.at(r, c) = limit_at_infinity(e, F.ctx.u_var());
          }
        FieldMatrix want = gs.binf[static_cast<size_t>(i - 1)][static_cast<size_t>(s - 1)];
        if (i >= 2) want -= gs.binf[static_cast<size_t>(i - 2)][static_cast<size_t>(s - 1)];
        CHECK(sub == want);
      }
  }
  SECTION("contravariance: plus and minus families are mutual transposes") {
    Fixture F(2, 2);
    Composition lam({1, 1});
    auto gp = F.ym.bethe_generators(+1, lam);
    auto gm = F.ym.bethe_generators(-1, lam);
    for (size_t p = 0; p < gp.ops.size(); ++p)
      for (size_t s = 0; s < gp.ops[p].size(); ++s)
        CHECK(gp.ops[p][s].transpose() == gm.ops[p][s]);
  }
}

TEST_CASE("contravariance of the T coefficients") {
  Fixture F(2, 2);
  Composition lam({1, 1});
  for (int s : {1, 2}) {
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        WOperator tp = F.ym.t_coeff(+1, i, j, lam, s);
        if (!tp.dst.valid()) continue;
        WOperator tm = F.ym.t_coeff(-1, j, i, tp.dst, s);
        CHECK(tp.m.transpose() == tm.m);
      }
  }
}

TEST_CASE("pi-tilde intertwines the two actions") {
  Fixture F(2, 2);
  auto& ctx = F.ctx;
  Composition lam({1, 1});
  const WeightBasis& b = F.wm.basis(lam);
  // Pi-tilde as matrix plus z-reversal on entries
  auto pi_conj = [&](const FieldMatrix& m) {
    auto perm = std::vector<int>(static_cast<size_t>(ctx.registry()->size()));
    for (size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
    std::swap(perm[static_cast<size_t>(ctx.z_var(1))], perm[static_cast<size_t>(ctx.z_var(2))]);
    FieldMatrix pim(ctx.registry(), b.dim(), b.dim());
    for (int c = 0; c < b.dim(); ++c) {
      ColorWord w = b.word(c);
      std::reverse(w.begin(), w.end());
      pim.at(b.index_of(w), c) = ctx.one();
    }
    FieldMatrix msub(ctx.registry(), b.dim(), b.dim());
    for (int r = 0; r < b.dim(); ++r)
      for (int c = 0; c < b.dim(); ++c) msub.at(r, c) = m.at(r, c).permute_vars(perm);
    return pim * msub * pim.inverse();
  };
  for (int s : {1, 2}) {
    WOperator tp = F.ym.t_coeff(+1, 1, 1, lam, s);
    WOperator tm = F.ym.t_coeff(-1, 1, 1, lam, s);
    CHECK(pi_conj(tp.m) == tm.m);
  }
}

TEST_CASE("symmetric-group equivariance of the actions") {
  Fixture F(2, 3);
  auto& ctx = F.ctx;
  Composition lam({2, 1});
  const WeightBasis& b = F.wm.basis(lam);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  WVector f(lam, b.dim(), ctx.registry());
  for (auto& x : f.c) x = ctx.constant(Rat(coef(rng))) + ctx.constant(Rat(coef(rng))) * ctx.z_sym(2);

  for (int sign : {+1, -1}) {
    SnKind kind = sign > 0 ? SnKind::Plus : SnKind::Minus;
    WOperator t = F.ym.t_coeff(sign, 1, 1, lam, 2);
    for (int i = 1; i <= 2; ++i) {
      WVector lhs = sn_act(ctx, b, kind, i, apply_mat(ctx, lam, t.m, f));
      WVector rhs = apply_mat(ctx, lam, t.m, sn_act(ctx, b, kind, i, f));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("dynamical Hamiltonians") {
  SECTION("two routes to X^k agree; X^inf routes agree") {
    Fixture F(2, 2);
    Composition lam({1, 1});
    auto gs = F.ym.bethe_generators(+1, lam);
    for (int i = 1; i <= 2; ++i) {
      CHECK(F.ym.dynamical_hamiltonian(+1, YangianModel::HamKind::K, lam, i) == F.ym.xk_via_s(gs, i));
      CHECK(F.ym.x_inf(+1, lam, i) == F.ym.x_inf_direct(+1, lam, i));
      CHECK(F.ym.x_inf(-1, lam, i) == F.ym.x_inf_direct(-1, lam, i));
    }
  }
  SECTION("X^inf direct formula at lambda=(2,1)") {
    Fixture F(2, 3);
    Composition lam({2, 1});
    for (int i = 1; i <= 2; ++i) {
      CHECK(F.ym.x_inf(+1, lam, i) == F.ym.x_inf_direct(+1, lam, i));
      CHECK(F.ym.x_inf(-1, lam, i) == F.ym.x_inf_direct(-1, lam, i));
    }
  }
  SECTION("action on the distinguished vectors drops the corrections") {
    Fixture F(2, 3);
    Composition lam({2, 1});
    for (int i = 1; i <= 2; ++i) {
      WVector vp = F.wm.v_plus(lam);
      FieldMatrix xkp = F.ym.dynamical_hamiltonian(+1, YangianModel::HamKind::KPlus, lam, i);
      FieldMatrix xinf = F.ym.x_inf(+1, lam, i);
      CHECK(apply_mat(F.ctx, lam, xkp, vp) == apply_mat(F.ctx, lam, xinf, vp));

      WVector vm = F.wm.v_minus(lam);
      FieldMatrix xkm = F.ym.dynamical_hamiltonian(-1, YangianModel::HamKind::KMinusLam, lam, i);
      FieldMatrix xinfm = F.ym.x_inf(-1, lam, i);
      CHECK(apply_mat(F.ctx, lam, xkm, vm) == apply_mat(F.ctx, lam, xinfm, vm));
    }
  }
  SECTION("full-flag sum is multiplication by z_1 + ... + z_n") {
    for (int n : {2, 3}) {
      Fixture F(n, n);
      Composition lam(std::vector<int>(static_cast<size_t>(n), 1));
      const int d = F.wm.basis(lam).dim();
      FieldMatrix acc(F.ctx.registry(), d, d);
      for (int i = 1; i <= n; ++i)
        acc += F.ym.dynamical_hamiltonian(-1, YangianModel::HamKind::KMinusLam, lam, i);
      RatFunc zsum = F.ctx.zero();
      for (int a = 1; a <= n; ++a) zsum += F.ctx.z(a);
      CHECK(acc == zsum * FieldMatrix::identity(F.ctx.registry(), d));
    }
  }
}

TEST_CASE("flatness of the dynamical families") {
  // q_i d/dq_i X_j = q_j d/dq_j X_i and [X_i, X_j] = 0: the scale-free
  // criterion for flatness of the connections built on the log derivatives.
  auto flat = [](YangianModel& ym, Context& ctx, const Composition& lam,
                 YangianModel::HamKind kind, int sign) {
    std::vector<FieldMatrix> X;
    for (int i = 1; i <= ctx.N(); ++i) X.push_back(ym.dynamical_hamiltonian(sign, kind, lam, i));
    for (int i = 0; i < ctx.N(); ++i)
      for (int j = i + 1; j < ctx.N(); ++j) {
        CHECK(commutator(X[static_cast<size_t>(i)], X[static_cast<size_t>(j)]).is_zero());
        FieldMatrix di = X[static_cast<size_t>(j)].map(
            [&](const RatFunc& f) { return ctx.q(i + 1) * f.derivative(ctx.q_var(i + 1)); });
        FieldMatrix dj = X[static_cast<size_t>(i)].map(
            [&](const RatFunc& f) { return ctx.q(j + 1) * f.derivative(ctx.q_var(j + 1)); });
        CHECK((di - dj).is_zero());
      }
  };
  SECTION("fully symbolic, N=n=2") {
    Fixture F(2, 2);
    Composition lam({1, 1});
    flat(F.ym, F.ctx, lam, YangianModel::HamKind::K, +1);
    flat(F.ym, F.ctx, lam, YangianModel::HamKind::KPlus, +1);
    flat(F.ym, F.ctx, lam, YangianModel::HamKind::KMinusLam, -1);
  }
  SECTION("specialized z, symbolic q, lambda=(2,1)") {
    Context ctx(2, 3);
    ctx.specialize_z({Rat(0), Rat(1), Rat(5)}, Rat(3));
    WeightModel wm(ctx);
    YangianModel ym(wm);
    Composition lam({2, 1});
    flat(ym, ctx, lam, YangianModel::HamKind::KMinusLam, -1);
  }
}

TEST_CASE("difference operators at step zero") {
  SECTION("commute with every stored Bethe generator, N=n=2 symbolic") {
    Fixture F(2, 2);
    Composition lam({1, 1});
    for (int sign : {+1, -1}) {
      auto gs = F.ym.bethe_generators(sign, lam);
      auto K = F.ym.qkz_operators(sign, lam, F.ctx.zero());
      for (auto& k : K)
        for (auto& row : gs.ops)
          for (auto& bmat : row) CHECK(commutator(k, bmat).is_zero());
    }
  }
  SECTION("recovered from the p=1 family at u = z_i") {
    Fixture F(2, 2);
    auto& ctx = F.ctx;
    Composition lam({1, 1});
    for (int sign : {+1, -1}) {
      // sum_p q_p rho(T_pp(u/h)) * prod_j (u - z_j)/(u - z_j + h), then u = z_i
      FieldMatrix b1(ctx.registry(), 2, 2);
      for (int p = 1; p <= 2; ++p) b1 += ctx.q(p) * F.ym.rho_T(sign, p, p, lam).m;
      RatFunc fac = ctx.one();
      for (int j = 1; j <= 2; ++j) fac *= (ctx.u() - ctx.z(j)) / (ctx.u() - ctx.z(j) + ctx.h());
      b1 = fac * b1;
      auto K = F.ym.qkz_operators(sign, lam, ctx.zero());
      for (int i = 1; i <= 2; ++i) {
        FieldMatrix at_zi = subst_var(b1, ctx.u_var(), ctx.z(i));
        CHECK(at_zi == K[static_cast<size_t>(i - 1)]);
      }
    }
  }
  SECTION("n=1: bare diagonal q factor") {
    Fixture F(2, 1);
    Composition lam({1, 0});
    auto K = F.ym.qkz_operators(+1, lam, F.ctx.zero());
    REQUIRE(K.size() == 1);
    CHECK(K[0].at(0, 0) == F.ctx.q(1));
  }
}
