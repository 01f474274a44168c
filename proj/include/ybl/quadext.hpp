#ifndef YBL_QUADEXT_HPP
#define YBL_QUADEXT_HPP

#include <stdexcept>
#include <string>

#include "ybl/rational.hpp"

namespace ybl {

/*
  Element a + b*sqrt(disc) of the quadratic extension Q(sqrt(disc)).
  The discriminant is fixed per computation and must agree between
  operands; it is assumed not to be a perfect square (b-part exactness
  does not rely on that, only distinctness of conjugates does).
*/
class QuadExt {
 public:
  QuadExt() : a_(0), b_(0), disc_(0) {}
  QuadExt(Rat a, Rat b, Rat disc) : a_(std::move(a)), b_(std::move(b)), disc_(std::move(disc)) {
    a_.canonicalize();
    b_.canonicalize();
    disc_.canonicalize();
  }

  static QuadExt rational(const Rat& a, const Rat& disc) { return QuadExt(a, Rat(0), disc); }
  static QuadExt sqrt_disc(const Rat& disc) { return QuadExt(Rat(0), Rat(1), disc); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Rat& disc() const { return disc_; }

  bool is_zero() const { return rat_is_zero(a_) && rat_is_zero(b_); }
  bool is_rational() const { return rat_is_zero(b_); }

  QuadExt conj() const { return QuadExt(a_, -b_, disc_); }

  // a^2 - b^2 disc, the field norm.
  Rat norm() const { return a_ * a_ - b_ * b_ * disc_; }

  QuadExt operator-() const { return QuadExt(-a_, -b_, disc_); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    x.match(y);
    return QuadExt(x.a_ + y.a_, x.b_ + y.b_, x.disc_);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    x.match(y);
    return QuadExt(x.a_ - y.a_, x.b_ - y.b_, x.disc_);
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    x.match(y);
    return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * x.disc_, x.a_ * y.b_ + x.b_ * y.a_, x.disc_);
  }

  QuadExt inverse() const {
    Rat n = norm();
    if (rat_is_zero(n)) throw std::domain_error("QuadExt: inversion of zero-norm element");
    return QuadExt(a_ / n, -b_ / n, disc_);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

  bool operator==(const QuadExt& o) const { return a_ == o.a_ && b_ == o.b_ && disc_ == o.disc_; }
  bool operator!=(const QuadExt& o) const { return !(*this == o); }

  std::string str() const {
    return rat_str(a_) + (sgn(b_) >= 0 ? "+" : "") + rat_str(b_) + "*sqrt(" + rat_str(disc_) + ")";
  }

 private:
  void match(const QuadExt& o) const {
    if (disc_ != o.disc_) throw std::invalid_argument("QuadExt: discriminant mismatch");
  }
  Rat a_, b_, disc_;
};

}  // namespace ybl

#endif
