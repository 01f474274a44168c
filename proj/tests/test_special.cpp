#include <catch2/catch_amalgamated.hpp>

#include "ybl/hecke.hpp"
#include "ybl/qde.hpp"

using namespace ybl;

namespace {

struct Fixture {
  Context ctx;
  WeightModel wm;
  YangianModel ym;
  CohomModel cm;
  Fixture(int n) : ctx(n, n), wm(ctx), ym(wm), cm(wm, ym) {}
};

}  // namespace

TEST_CASE("Hecke actions on the full-flag model") {
  SECTION("relations are asserted on construction, n = 2..4 specialized") {
    for (int n : {2, 3, 4}) {
      Context ctx(n, n);
      std::vector<Rat> zv = {Rat(0), Rat(1), Rat(5), Rat(17)};
      zv.resize(static_cast<size_t>(n));
      ctx.specialize_z(zv, Rat(3));
      WeightModel wm(ctx);
      YangianModel ym(wm);
      CohomModel cm(wm, ym);
      CHECK_NOTHROW(HeckeModel(cm, +1));
      CHECK_NOTHROW(HeckeModel(cm, -1));
    }
  }
  SECTION("symbolic relations at n=3") {
    Fixture F(3);
    CHECK_NOTHROW(HeckeModel(F.cm, +1));
    CHECK_NOTHROW(HeckeModel(F.cm, -1));
  }
  SECTION("the swap operators fix the unit class") {
    Fixture F(3);
    HeckeModel hp(F.cm, +1), hm(F.cm, -1);
    const int d = F.wm.basis(hp.lam()).dim();
    FieldMatrix ones(F.ctx.registry(), d, 1);
    for (int k = 0; k < d; ++k) ones.at(k, 0) = F.ctx.one();
    for (int i = 1; i <= 2; ++i) {
      CHECK(hp.s(i) * ones == ones);
      CHECK(hm.s(i) * ones == ones);
    }
  }
  SECTION("reduced n=2 swap formula") {
    // On z = (z/2, -z/2), tau^-(s): f |-> ((x+h)/x) f(-x) - (h/x) f(x);
    // on the basis {1, x} of restriction vectors this is [[1, -2h], [0, -1]].
    Context ctx(2, 2);
    ctx.specialize_z({Rat(3, 2), Rat(-3, 2)}, Rat(1));
    WeightModel wm(ctx);
    YangianModel ym(wm);
    CohomModel cm(wm, ym);
    HeckeModel hm(cm, -1);
    FieldMatrix B(ctx.registry(), 2, 2);
    B.at(0, 0) = ctx.one();
    B.at(1, 0) = ctx.one();
    B.at(0, 1) = ctx.constant(Rat(3));    // x restricts to (z1-z2, z2-z1) = (3, -3)
    B.at(1, 1) = ctx.constant(Rat(-3));
    FieldMatrix s1 = B.inverse() * hm.s(1) * B;
    CHECK(s1.at(0, 0) == ctx.one());
    CHECK(s1.at(0, 1) == ctx.constant(Rat(-2)) * ctx.h());
    CHECK(s1.at(1, 0).is_zero());
    CHECK(s1.at(1, 1) == -ctx.one());
  }
}

TEST_CASE("transported dynamical family equals the Hecke family") {
  auto run = [](Context& ctx) {
    WeightModel wm(ctx);
    YangianModel ym(wm);
    CohomModel cm(wm, ym);
    Composition lam(std::vector<int>(static_cast<size_t>(ctx.n()), 1));
    for (int sign : {+1, -1}) {
      HeckeModel hk(cm, sign);
      auto kind = sign > 0 ? CohomModel::NuKind::Plus : CohomModel::NuKind::Minus;
      for (int i = 1; i <= ctx.n(); ++i) {
        FieldMatrix viaRho = cm.transport_to_H(
            kind, lam, ym.dynamical_hamiltonian(sign, YangianModel::HamKind::K, lam, i));
        CHECK(viaRho == hk.Y(i));
      }
    }
  };
  SECTION("n=2 fully symbolic") {
    Context ctx(2, 2);
    run(ctx);
  }
  SECTION("n=3, symbolic q over specialized z") {
    Context ctx(3, 3);
    ctx.specialize_z({Rat(0), Rat(1), Rat(5)}, Rat(3));
    run(ctx);
  }
}

TEST_CASE("Y operators sum to the plain multiplication operators") {
  Context ctx(3, 3);
  ctx.specialize_z({Rat(0), Rat(1), Rat(5)}, Rat(3));
  WeightModel wm(ctx);
  YangianModel ym(wm);
  CohomModel cm(wm, ym);
  for (int sign : {+1, -1}) {
    HeckeModel hk(cm, sign);
    const int d = wm.basis(hk.lam()).dim();
    FieldMatrix lhs(ctx.registry(), d, d), rhs(ctx.registry(), d, d);
    for (int i = 1; i <= 3; ++i) {
      lhs += hk.Y(i);
      rhs += hk.y(i);
    }
    CHECK(lhs == rhs);  // the swap terms cancel pairwise
  }
}

TEST_CASE("affine KZ flatness on the Hecke side") {
  Context ctx(3, 3);
  ctx.specialize_z({Rat(0), Rat(1), Rat(5)}, Rat(3));
  WeightModel wm(ctx);
  YangianModel ym(wm);
  CohomModel cm(wm, ym);
  for (int sign : {+1, -1}) {
    HeckeModel hk(cm, sign);
    std::vector<FieldMatrix> Y;
    for (int i = 1; i <= 3; ++i) Y.push_back(hk.Y(i));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        CHECK(commutator(Y[static_cast<size_t>(i)], Y[static_cast<size_t>(j)]).is_zero());
        FieldMatrix di = Y[static_cast<size_t>(j)].map(
            [&](const RatFunc& f) { return ctx.q(i + 1) * f.derivative(ctx.q_var(i + 1)); });
        FieldMatrix dj = Y[static_cast<size_t>(i)].map(
            [&](const RatFunc& f) { return ctx.q(j + 1) * f.derivative(ctx.q_var(j + 1)); });
        CHECK((di - dj).is_zero());
      }
  }
}

TEST_CASE("eigenbasis of the deformed product over a quadratic extension") {
  SECTION("undeformed limit: eigenvalues are +-z and the cup idempotents") {
    ReducedRankTwo alg(Rat(3), Rat(1));
    auto idem = alg.idempotents(Rat(0));
    CHECK(idem.disc == Rat(9));  // z^2: the roots degenerate to +-z
    CHECK(idem.u1 == QuadExt(Rat(0), Rat(1), idem.disc));
    CHECK(idem.u2 == QuadExt(Rat(0), Rat(-1), idem.disc));
    CHECK(idem.w1[0] + idem.w2[0] == QuadExt::rational(Rat(1), idem.disc));
    CHECK((idem.w1[1] + idem.w2[1]).is_zero());
    auto w11 = alg.bullet(Rat(0), idem.w1, idem.w1);
    CHECK(w11[0] == idem.w1[0]);
    CHECK(w11[1] == idem.w1[1]);
  }
  SECTION("three rational parameter panels") {
    struct Panel {
      Rat z, h, q;
    };
    std::vector<Panel> panels = {{Rat(3), Rat(1), Rat(1, 4)},
                                 {Rat(5), Rat(2), Rat(1, 3)},
                                 {Rat(7, 2), Rat(1, 2), Rat(2, 5)}};
    for (auto& p : panels) {
      ReducedRankTwo alg(p.z, p.h);
      auto idem = alg.idempotents(p.q);
      QuadExt one = QuadExt::rational(Rat(1), idem.disc);
      // partition of unity
      CHECK(idem.w1[0] + idem.w2[0] == one);
      CHECK((idem.w1[1] + idem.w2[1]).is_zero());
      // idempotency and orthogonality for the deformed product
      auto w11 = alg.bullet(p.q, idem.w1, idem.w1);
      CHECK(w11[0] == idem.w1[0]);
      CHECK(w11[1] == idem.w1[1]);
      auto w22 = alg.bullet(p.q, idem.w2, idem.w2);
      CHECK(w22[0] == idem.w2[0]);
      CHECK(w22[1] == idem.w2[1]);
      auto w12 = alg.bullet(p.q, idem.w1, idem.w2);
      CHECK(w12[0].is_zero());
      CHECK(w12[1].is_zero());
      // spectral consistency: x acts on w_i by u_i
      auto xw1 = alg.apply_x(p.q, idem.w1);
      CHECK(xw1[0] == idem.u1 * idem.w1[0]);
      CHECK(xw1[1] == idem.u1 * idem.w1[1]);
      auto xw2 = alg.apply_x(p.q, idem.w2);
      CHECK(xw2[0] == idem.u2 * idem.w2[0]);
      CHECK(xw2[1] == idem.u2 * idem.w2[1]);
    }
  }
  SECTION("reduced quadratic identity holds for the series matrix") {
    ReducedRankTwo alg(Rat(3), Rat(1));
    const int D = 8;
    auto X = alg.x_matrix_series(D);
    // X^2 - (4 h q/(1-q))(h + X) = z^2 on every entry
    QSeries geom(D, Rat(0));  // q/(1-q) = q + q^2 + ...
    for (int d = 1; d <= D; ++d) geom[d] = Rat(1);
    QSeries fac = Rat(4) * geom;  // times h = 1
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        QSeries acc(D);
        for (int k = 0; k < 2; ++k)
          acc += X[static_cast<size_t>(i)][static_cast<size_t>(k)] * X[static_cast<size_t>(k)][static_cast<size_t>(j)];
        acc -= fac * X[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (i == j) {
          QSeries hterm = fac;  // h * Id contribution, h = 1
          acc -= hterm;
          QSeries zz(D, Rat(9));
          CHECK((acc - zz).is_zero());
        } else {
          CHECK(acc.is_zero());
        }
      }
  }
}

TEST_CASE("quantum differential equation on the residue series") {
  SECTION("three parameter panels through order 20") {
    struct Panel {
      Rat z, h, k;
    };
    std::vector<Panel> panels = {{Rat(3), Rat(1), Rat(2)},
                                 {Rat(5), Rat(2), Rat(3)},
                                 {Rat(7, 3), Rat(1, 2), Rat(1)}};
    for (auto& p : panels) {
      ReducedRankTwo alg(p.z, p.h);
      QDEProblem pr{p.z, p.h, p.k, 20};
      CHECK(qde_first_failure(alg, pr, QDESeries::J1) == -1);
      CHECK(qde_first_failure(alg, pr, QDESeries::J2) == -1);
    }
  }
  SECTION("leading order alone balances") {
    ReducedRankTwo alg(Rat(3), Rat(1));
    QDEProblem pr{Rat(3), Rat(1), Rat(2), 0};
    CHECK(qde_first_failure(alg, pr, QDESeries::J1) == -1);
    CHECK(qde_first_failure(alg, pr, QDESeries::J2) == -1);
  }
  SECTION("perturbed series fails at the perturbed order") {
    // sanity: the checker is not vacuous; a wrong kappa must fail early
    ReducedRankTwo alg(Rat(3), Rat(1));
    QDEProblem pr{Rat(3), Rat(1), Rat(5, 7), 6};
    QDEProblem wrong{Rat(3), Rat(2), Rat(5, 7), 6};  // h mismatched with alg
    CHECK(qde_first_failure(alg, pr, QDESeries::J1) == -1);
    CHECK(qde_first_failure(alg, wrong, QDESeries::J1) >= 0);
  }
}
