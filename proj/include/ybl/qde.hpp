#ifndef YBL_QDE_HPP
#define YBL_QDE_HPP

#include "ybl/qseries.hpp"
#include "ybl/quadext.hpp"
#include "ybl/wronskian.hpp"

namespace ybl {

/*
  The rank-two reduced setting: two tensor slots, two colors, equivariant
  parameters pinned to (z/2, -z/2) so that the difference x = x_1 - x_2
  generates. Provides the deformed multiplication operator of x as exact
  data in the deformation parameter, the eigenbasis over a quadratic
  extension, and the order-by-order check of the associated differential
  equation on its two residue series.
*/
class ReducedRankTwo {
 public:
  // z, h rational; the deformation parameter q = q_2/q_1 stays formal.
  ReducedRankTwo(const Rat& z, const Rat& h) : z_(z), h_(h), ctx_(2, 2) {
    ctx_.specialize_z({z / 2, -(z / 2)}, h);
    wm_ = std::make_unique<WeightModel>(ctx_);
    ym_ = std::make_unique<YangianModel>(*wm_);
    cm_ = std::make_unique<CohomModel>(*wm_, *ym_);
    wk_ = std::make_unique<WronskianModel>(*cm_);
    Composition lam({1, 1});
    CohomClass x = cm_->from_sigma(lam, cm_->sigma_slot(lam, 1, 1) - cm_->sigma_slot(lam, 2, 1));
    FieldMatrix xd = wk_->q_mult_matrix(false, x);
    // base change from fixed-point coordinates to the basis {1, x}:
    // restrictions 1 -> (1,1), x -> (z, -z)
    FieldMatrix B(ctx_.registry(), 2, 2);
    B.at(0, 0) = ctx_.one();
    B.at(1, 0) = ctx_.one();
    B.at(0, 1) = ctx_.constant(z_);
    B.at(1, 1) = ctx_.constant(-z_);
    FieldMatrix x1 = B.inverse() * xd * B;
    // reduce the two q parameters to the single ratio: q_1 = 1, keep q_2
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        xmat_[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            x1.at(i, j).substitute({{ctx_.q_var(1), ctx_.one()}});
  }

  const Rat& z() const { return z_; }
  const Rat& h() const { return h_; }

  // x-bullet at a rational value of the deformation parameter, as a 2x2
  // rational matrix on the basis {1, x}.
  std::array<std::array<Rat, 2>, 2> x_matrix_at(const Rat& q) const {
    if (q == 1) throw std::domain_error("ReducedRankTwo: q = 1 is singular");
    std::array<std::array<Rat, 2>, 2> m;
    std::vector<Rat> point(static_cast<size_t>(ctx_.registry()->size()), Rat(0));
    point[static_cast<size_t>(ctx_.q_var(2))] = q;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            xmat_[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(point);
    return m;
  }

  // x-bullet as a truncated power series in the deformation parameter.
  std::array<std::array<QSeries, 2>, 2> x_matrix_series(int order) const {
    std::array<std::array<QSeries, 2>, 2> m{{{QSeries(order), QSeries(order)},
                                             {QSeries(order), QSeries(order)}}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            expand_at_zero(xmat_[static_cast<size_t>(i)][static_cast<size_t>(j)], order);
    return m;
  }

  // --- eigenbasis over a quadratic extension ---------------------------------

  struct Idempotents {
    Rat disc;
    QuadExt u1, u2;                 // deformed eigenvalues
    std::array<QuadExt, 2> w1, w2;  // coordinates in the basis {1, x}
  };

  // Roots of (u-z)(u+z) = q (u-z+2h)(u+z+2h) and the eigenprojectors
  // w_i = (x - u_{3-i})/(u_i - u_{3-i}) of the deformed product.
  Idempotents idempotents(const Rat& q) const {
    if (q == 1) throw std::domain_error("idempotents: q = 1");
    Rat a = Rat(2) * h_ * q / (1 - q);
    Rat disc = z_ * z_ + Rat(4) * h_ * h_ * q / ((1 - q) * (1 - q));
    disc.canonicalize();
    if (rat_is_zero(disc)) throw std::domain_error("idempotents: degenerate roots");
    QuadExt u1(a, Rat(1), disc), u2(a, Rat(-1), disc);
    QuadExt du = u1 - u2;
    Idempotents out{disc, u1, u2, {}, {}};
    out.w1 = {-u2 / du, QuadExt::rational(Rat(1), disc) / du};
    out.w2 = {u1 / du, QuadExt::rational(Rat(-1), disc) / du};
    return out;
  }

  // Deformed product of (a0 + a1 x) and (b0 + b1 x) over the extension,
  // using the exact 2x2 matrix of x at the given parameter value.
  std::array<QuadExt, 2> bullet(const Rat& q, const std::array<QuadExt, 2>& f,
                                const std::array<QuadExt, 2>& g) const {
    auto m = x_matrix_at(q);
    const Rat& disc = f[0].disc();
    // x bullet x in coordinates: second column of the matrix
    QuadExt xx0 = QuadExt::rational(m[0][1], disc), xx1 = QuadExt::rational(m[1][1], disc);
    std::array<QuadExt, 2> out{f[0] * g[0] + f[1] * g[1] * xx0,
                               f[0] * g[1] + f[1] * g[0] + f[1] * g[1] * xx1};
    return out;
  }

  std::array<QuadExt, 2> apply_x(const Rat& q, const std::array<QuadExt, 2>& f) const {
    auto m = x_matrix_at(q);
    const Rat& disc = f[0].disc();
    return {QuadExt::rational(m[0][0], disc) * f[0] + QuadExt::rational(m[0][1], disc) * f[1],
            QuadExt::rational(m[1][0], disc) * f[0] + QuadExt::rational(m[1][1], disc) * f[1]};
  }

 private:
  // Power series of a univariate-in-q2 rational function at 0.
  QSeries expand_at_zero(const RatFunc& f, int order) const {
    const int v = ctx_.q_var(2);
    auto collect = [&](const MultiPoly& p) {
      std::vector<Rat> out;
      for (auto& c : p.coeffs_in(v)) {
        if (!c.is_constant())
          throw std::logic_error("expand_at_zero: non-constant coefficient");
        out.push_back(c.constant_value());
      }
      return out;
    };
    std::vector<Rat> num = collect(f.num()), den = collect(f.den());
    if (rat_is_zero(den[0])) throw std::domain_error("expand_at_zero: pole at 0");
    QSeries s(order);
    for (int d = 0; d <= order; ++d) {
      Rat acc = (d < static_cast<int>(num.size())) ? num[static_cast<size_t>(d)] : Rat(0);
      for (int k = 1; k <= d && k < static_cast<int>(den.size()); ++k)
        acc -= den[static_cast<size_t>(k)] * s[d - k];
      s[d] = acc / den[0];
    }
    return s;
  }

  Rat z_, h_;
  mutable Context ctx_;
  std::unique_ptr<WeightModel> wm_;
  std::unique_ptr<YangianModel> ym_;
  std::unique_ptr<CohomModel> cm_;
  std::unique_ptr<WronskianModel> wk_;
  std::array<std::array<RatFunc, 2>, 2> xmat_;
};

/*
  Order-by-order verification of -2 kappa q dJ/dq = x bullet J on the two
  residue series. The constant prefactors are dropped (the equation is
  linear) and the fractional power q^{+-z/2 kappa} is absorbed by shifting
  the Euler operator.
*/
struct QDEProblem {
  Rat z, h, kappa;
  int order = 20;
};

enum class QDESeries { J1, J2 };

// Returns the first order with a nonzero residual, or -1 if the equation
// holds through the requested order.
inline int qde_first_failure(const ReducedRankTwo& alg, const QDEProblem& pr, QDESeries which) {
  const Rat &z = pr.z, &h = pr.h, &k = pr.kappa;
  const int D = pr.order;
  if (rat_is_zero(k)) throw std::invalid_argument("qde: kappa must be nonzero");
  // guard the small denominators of the coefficient products
  for (int i = 0; i < D; ++i) {
    Rat den = (which == QDESeries::J1) ? Rat(z + k * Rat(i + 1)) : Rat(k * Rat(i + 1) - z);
    if (rat_is_zero(den)) throw std::domain_error("qde: coefficient denominator vanishes");
  }

  // g_d in the basis {1, x}
  std::vector<std::array<Rat, 2>> g(static_cast<size_t>(D) + 1);
  Rat scale(1);  // prod_{i<d} (...) / (kappa^{d-1} d!)
  for (int d = 0; d <= D; ++d) {
    Rat c = scale / rat_pow(k, d - 1);
    Rat fact(1);
    for (int t = 2; t <= d; ++t) fact *= Rat(t);
    c = c / fact;
    Rat dd(d);
    if (which == QDESeries::J1) {
      // (x + h)(z - x + 2 kappa d), reduced by x^2 = z^2
      g[static_cast<size_t>(d)] = {c * (h * (z + Rat(2) * k * dd) - z * z),
                                   c * (z + Rat(2) * k * dd - h)};
    } else {
      // (x + h)(2 kappa d - z - x)
      g[static_cast<size_t>(d)] = {c * (h * (Rat(2) * k * dd - z) - z * z),
                                   c * (Rat(2) * k * dd - z - h)};
    }
    if (d < D) {
      Rat i(d);
      Rat num = (which == QDESeries::J1) ? Rat((h - k * i) * (h - z - k * i))
                                         : Rat((h - k * i) * (h + z - k * i));
      Rat den = (which == QDESeries::J1) ? Rat(z + k * (i + 1)) : Rat(k * (i + 1) - z);
      scale *= num / den;
    }
  }

  auto X = alg.x_matrix_series(D);
  // residual at order d: (-z_eff - 2 kappa d) g_d - sum_k X_k g_{d-k}
  Rat zshift = (which == QDESeries::J1) ? z : -z;
  for (int d = 0; d <= D; ++d) {
    for (int row = 0; row < 2; ++row) {
      Rat lhs = (-zshift - Rat(2) * k * Rat(d)) * g[static_cast<size_t>(d)][static_cast<size_t>(row)];
      Rat rhs(0);
      for (int t = 0; t <= d; ++t)
        for (int col = 0; col < 2; ++col)
          rhs += X[static_cast<size_t>(row)][static_cast<size_t>(col)][t] *
                 g[static_cast<size_t>(d - t)][static_cast<size_t>(col)];
      if (lhs != rhs) return d;
    }
  }
  return -1;
}

}  // namespace ybl

#endif
