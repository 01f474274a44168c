#ifndef YBL_HECKE_HPP
#define YBL_HECKE_HPP

#include "ybl/wronskian.hpp"

namespace ybl {

/*
  Full-flag specialization: the polynomial representation of the degenerate
  affine Hecke algebra on the fixed-point model, and its identification with
  the transported commuting family. Everything acts on restriction vectors
  over the n! fixed points.
*/
class HeckeModel {
 public:
  HeckeModel(CohomModel& cm, int sign)
      : cm_(cm), ctx_(cm.ctx()), sign_(sign), lam_(full_flag(cm.ctx().n())) {
    if (ctx_.N() != ctx_.n())
      throw std::invalid_argument("HeckeModel: requires N = n");
    const WeightBasis& b = cm_.weights().basis(lam_);
    const int d = b.dim();
    // y_i: multiplication by the i-th Chern root, diagonal at fixed points
    for (int i = 1; i <= ctx_.n(); ++i) {
      FieldMatrix m(ctx_.registry(), d, d);
      for (int k = 0; k < d; ++k) m.at(k, k) = ctx_.z(word_block(b.word(k), i)[0]);
      y_.push_back(std::move(m));
    }
    for (int i = 1; i < ctx_.n(); ++i) s_.push_back(make_s(i));
    check_relations();
  }

  int sign() const { return sign_; }
  const Composition& lam() const { return lam_; }
  RatFunc c_value() const { return sign_ > 0 ? ctx_.h() : -ctx_.h(); }

  const FieldMatrix& y(int i) const { return y_.at(static_cast<size_t>(i - 1)); }
  const FieldMatrix& s(int i) const { return s_.at(static_cast<size_t>(i - 1)); }

  // General transposition (i j), i < j, via conjugation by adjacents.
  FieldMatrix s_transposition(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == j) throw std::invalid_argument("s_transposition: i = j");
    FieldMatrix acc = s(j - 1);
    for (int k = j - 2; k >= i; --k) acc = s(k) * acc * s(k);
    return acc;
  }

  // Y_i = y_i + c sum_{j<i} q_i/(q_i-q_j) s_{ij} + c sum_{j>i} q_j/(q_i-q_j) s_{ij}.
  FieldMatrix Y(int i) const {
    FieldMatrix acc = y(i);
    for (int j = 1; j <= ctx_.n(); ++j) {
      if (j == i) continue;
      RatFunc w = (j < i) ? ctx_.q(i) / (ctx_.q(i) - ctx_.q(j)) : ctx_.q(j) / (ctx_.q(i) - ctx_.q(j));
      acc += (c_value() * w) * s_transposition(std::min(i, j), std::max(i, j));
    }
    return acc;
  }

 private:
  static Composition full_flag(int n) { return Composition(std::vector<int>(static_cast<size_t>(n), 1)); }

  // tau(s_i): the variable swap acts on fixed-point coordinates by the
  // block exchange i <-> i+1, mixed with the rational coefficients.
  FieldMatrix make_s(int i) const {
    const WeightBasis& b = cm_.weights().basis(lam_);
    const int d = b.dim();
    FieldMatrix m(ctx_.registry(), d, d);
    for (int k = 0; k < d; ++k) {
      const ColorWord& w = b.word(k);
      RatFunc xi = ctx_.z(word_block(w, i)[0]);
      RatFunc xi1 = ctx_.z(word_block(w, i + 1)[0]);
      RatFunc dd = xi - xi1;
      RatFunc swap_coef = sign_ > 0 ? (dd - ctx_.h()) / dd : (dd + ctx_.h()) / dd;
      RatFunc stay_coef = sign_ > 0 ? ctx_.h() / dd : -(ctx_.h() / dd);
      ColorWord v = w;
      for (auto& col : v) {
        if (col == i)
          col = i + 1;
        else if (col == i + 1)
          col = i;
      }
      // row k collects from the swapped word and from itself
      m.at(k, b.index_of(v)) += swap_coef;
      m.at(k, k) += stay_coef;
    }
    return m;
  }

  void check_relations() const {
    const int n = ctx_.n();
    const int d = cm_.weights().basis(lam_).dim();
    FieldMatrix id = FieldMatrix::identity(ctx_.registry(), d);
    for (int i = 1; i < n; ++i) {
      if (!(s(i) * s(i) == id)) throw std::logic_error("HeckeModel: s_i^2 != 1");
      if (!(s(i) * y(i) - y(i + 1) * s(i) == c_value() * id))
        throw std::logic_error("HeckeModel: s y_i - y_{i+1} s != c");
      for (int j = 1; j <= n; ++j) {
        if (j == i || j == i + 1) continue;
        if (!commutator(s(i), y(j)).is_zero())
          throw std::logic_error("HeckeModel: s_i does not commute with far y_j");
      }
    }
    for (int i = 1; i + 1 < n; ++i)
      if (!(s(i) * s(i + 1) * s(i) == s(i + 1) * s(i) * s(i + 1)))
        throw std::logic_error("HeckeModel: braid relation fails");
  }

  CohomModel& cm_;
  Context& ctx_;
  int sign_;
  Composition lam_;
  std::vector<FieldMatrix> y_, s_;
};

}  // namespace ybl

#endif
