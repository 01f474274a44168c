#ifndef YBL_QSERIES_HPP
#define YBL_QSERIES_HPP

#include <stdexcept>
#include <vector>

#include "ybl/rational.hpp"

namespace ybl {

/*
  Truncated power series in a formal parameter q with Rat coefficients,
  all arithmetic consistently cut at the shared order D.
*/
class QSeries {
 public:
  QSeries(int order, Rat c0 = Rat(0)) : c_(static_cast<size_t>(order) + 1, Rat(0)) {
    if (order < 0) throw std::invalid_argument("QSeries: negative order");
    c_[0] = c0;
  }

  static QSeries monomial(int order, int d, const Rat& c) {
    QSeries s(order);
    if (d <= order) s.c_[static_cast<size_t>(d)] = c;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& operator[](int d) const { return c_.at(static_cast<size_t>(d)); }
  Rat& operator[](int d) { return c_.at(static_cast<size_t>(d)); }

  bool is_zero() const {
    for (auto& c : c_)
      if (!rat_is_zero(c)) return false;
    return true;
  }

  QSeries operator-() const {
    QSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend QSeries operator+(QSeries a, const QSeries& b) {
    a.match(b);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend QSeries operator-(QSeries a, const QSeries& b) {
    a.match(b);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    a.match(b);
    QSeries r(a.order());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (rat_is_zero(a.c_[i])) continue;
      for (size_t j = 0; i + j < r.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend QSeries operator*(const Rat& c, QSeries a) {
    for (auto& x : a.c_) x *= c;
    return a;
  }

  QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
  QSeries& operator-=(const QSeries& o) { return *this = *this - o; }
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

  // Reciprocal; requires invertible constant term.
  QSeries inverse() const {
    if (rat_is_zero(c_[0])) throw std::domain_error("QSeries::inverse: zero constant term");
    QSeries r(order());
    r.c_[0] = 1 / c_[0];
    for (size_t n = 1; n < c_.size(); ++n) {
      Rat acc(0);
      for (size_t k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
      r.c_[n] = -acc / c_[0];
    }
    return r;
  }

  // q d/dq applied termwise.
  QSeries q_ddq() const {
    QSeries r(order());
    for (size_t d = 0; d < c_.size(); ++d) r.c_[d] = Rat(static_cast<long>(d)) * c_[d];
    return r;
  }

 private:
  void match(const QSeries& o) const {
    if (order() != o.order()) throw std::invalid_argument("QSeries: order mismatch");
  }
  std::vector<Rat> c_;
};

}  // namespace ybl

#endif
