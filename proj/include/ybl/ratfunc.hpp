#ifndef YBL_RATFUNC_HPP
#define YBL_RATFUNC_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "ybl/poly.hpp"

namespace ybl {

/*
  Rational function num/den in canonical form: gcd(num, den) = 1 and the
  denominator has leading coefficient 1 in graded-lex order. The universal
  scalar of the library; a polynomial is a RatFunc with denominator 1.
*/
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(RegistryPtr reg)
      : num_(MultiPoly(reg)), den_(MultiPoly::constant(reg, Rat(1))) {}

  RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    check_same_registry(num_.registry(), den_.registry());
    reduce();
  }

  explicit RatFunc(const MultiPoly& num)
      : num_(num), den_(MultiPoly::constant(num.registry(), Rat(1))) {
    normalize_unit();
  }

  static RatFunc constant(const RegistryPtr& reg, const Rat& c) {
    return RatFunc(MultiPoly::constant(reg, c));
  }
  static RatFunc variable(const RegistryPtr& reg, int var, unsigned power = 1) {
    return RatFunc(MultiPoly::variable(reg, var, power));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const RegistryPtr& registry() const { return num_.registry(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }

  Rat constant_value() const {
    if (!is_constant()) throw std::logic_error("RatFunc: not a constant");
    return num_.constant_value() / den_.constant_value();
  }

  MultiPoly as_polynomial() const {
    if (!is_polynomial()) throw std::logic_error("RatFunc: not a polynomial");
    MultiPoly p = num_;
    p *= 1 / den_.constant_value();
    return p;
  }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    check_same_registry(a.registry(), b.registry());
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    MultiPoly g = poly_gcd(a.den_, b.den_);
    if (g.is_constant())
      return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    MultiPoly da = divexact(a.den_, g), db = divexact(b.den_, g);
    return RatFunc(a.num_ * db + b.num_ * da, da * b.den_);
  }

  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    check_same_registry(a.registry(), b.registry());
    if (a.is_zero() || b.is_zero()) return RatFunc(a.registry());
    // Cross-cancellation keeps intermediates reduced.
    MultiPoly g1 = poly_gcd(a.num_, b.den_);
    MultiPoly g2 = poly_gcd(b.num_, a.den_);
    MultiPoly n = divexact(a.num_, g1) * divexact(b.num_, g2);
    MultiPoly d = divexact(a.den_, g2) * divexact(b.den_, g1);
    RatFunc r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    r.normalize_unit();
    return r;
  }

  RatFunc inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inversion of zero");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize_unit();
    return r;
  }

  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend RatFunc operator*(const RatFunc& a, const Rat& c) {
    RatFunc r = a;
    r.num_ *= c;
    if (rat_is_zero(c)) r.den_ = MultiPoly::constant(a.registry(), Rat(1));
    return r;
  }
  friend RatFunc operator*(const Rat& c, const RatFunc& a) { return a * c; }

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    RatFunc acc = constant(registry(), Rat(1));
    RatFunc b = *this;
    while (k > 0) {
      if (k & 1) acc *= b;
      if (k >>= 1) b *= b;
    }
    return acc;
  }

  RatFunc derivative(int var) const {
    // (n/d)' = (n'd - nd')/d^2
    MultiPoly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return RatFunc(std::move(n), den_ * den_);
  }

  RatFunc substitute(const std::map<int, RatFunc>& repl) const {
    // Common-denominator substitution: each replacement p_i/q_i enters a
    // monomial as p_i^e / q_i^e; multiply through by q_i^(deg_i).
    std::map<int, MultiPoly> pnum, pden;
    for (auto& [v, f] : repl) {
      check_same_registry(registry(), f.registry());
      pnum[v] = f.num();
      pden[v] = f.den();
    }
    auto lift = [&](const MultiPoly& p) {
      MultiPoly out(p.registry());
      std::map<int, int> maxdeg;
      for (auto& [v, f] : repl) maxdeg[v] = p.degree(v);
      const int nv = p.registry()->size();
      for (auto& [e, c] : p.terms()) {
        MultiPoly term = MultiPoly::constant(p.registry(), c);
        Expo rest(static_cast<size_t>(nv), 0);
        for (int i = 0; i < nv; ++i) {
          if (e[i] == 0) {
            continue;
          }
          auto it = pnum.find(i);
          if (it == pnum.end()) rest[static_cast<size_t>(i)] = e[i];
        }
        MultiPoly mono(p.registry());
        mono.add_term(rest, Rat(1));
        term *= mono;
        for (auto& [v, f] : repl) {
          unsigned ev = e[v];
          term *= pnum[v].pow(ev) * pden[v].pow(static_cast<unsigned>(maxdeg[v]) - ev);
        }
        out += term;
      }
      // out / scale equals p with the substitutions applied
      MultiPoly scale = MultiPoly::constant(p.registry(), Rat(1));
      for (auto& [v, d] : maxdeg) scale *= pden[v].pow(static_cast<unsigned>(d));
      return std::make_pair(out, scale);
    };
    auto [nn, ns] = lift(num_);
    auto [dn, ds] = lift(den_);
    if (dn.is_zero())
      throw std::domain_error("RatFunc::substitute: denominator vanishes");
    return RatFunc(nn * ds, dn * ns);
  }

  Rat eval(const std::vector<Rat>& point) const {
    Rat d = den_.eval(point);
    if (rat_is_zero(d)) throw std::domain_error("RatFunc::eval: denominator vanishes");
    return num_.eval(point) / d;
  }

  // Variable relabeling; gcd-free since canonical form is preserved up to
  // the unit normalization.
  RatFunc permute_vars(const std::vector<int>& perm) const {
    RatFunc r;
    r.num_ = num_.permute_vars(perm);
    r.den_ = den_.permute_vars(perm);
    r.normalize_unit();
    return r;
  }

  RatFunc lower(const std::vector<std::optional<Rat>>& vals) const {
    MultiPoly d = den_.lower(vals);
    if (d.is_zero()) throw std::domain_error("RatFunc::lower: denominator vanishes");
    return RatFunc(num_.lower(vals), std::move(d));
  }

  std::string str() const {
    if (is_polynomial()) return as_polynomial().str();
    std::string n = num_.str(), d = den_.str();
    return "(" + n + ")/(" + d + ")";
  }

 private:
  void reduce() {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
      den_ = MultiPoly::constant(num_.registry(), Rat(1));
      return;
    }
    if (!den_.is_constant()) {
      MultiPoly g = poly_gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = divexact(num_, g);
        den_ = divexact(den_, g);
      }
    }
    normalize_unit();
  }

  // Makes the denominator's graded-lex leading coefficient 1.
  void normalize_unit() {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
      den_ = MultiPoly::constant(num_.registry(), Rat(1));
      return;
    }
    Rat lc = den_.leading().second;
    if (lc != 1) {
      Rat inv = 1 / lc;
      num_ *= inv;
      den_ *= inv;
    }
  }

  MultiPoly num_, den_;
};

}  // namespace ybl

#endif
