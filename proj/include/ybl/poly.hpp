#ifndef YBL_POLY_HPP
#define YBL_POLY_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ybl/rational.hpp"
#include "ybl/varset.hpp"

namespace ybl {

using Expo = std::vector<unsigned>;

inline unsigned expo_total(const Expo& e) {
  unsigned t = 0;
  for (unsigned x : e) t += x;
  return t;
}

// Graded lexicographic order in registry order: first by total degree,
// ties broken lexicographically with earlier registry variables larger.
struct GrlexLess {
  bool operator()(const Expo& a, const Expo& b) const {
    unsigned ta = expo_total(a), tb = expo_total(b);
    if (ta != tb) return ta < tb;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

/*
  Sparse multivariate polynomial over Rat. Terms are kept in a map in
  graded-lex order, so iteration (and hence serialization and printing)
  is deterministic. Zero coefficients are never stored.
*/
class MultiPoly {
 public:
  using TermMap = std::map<Expo, Rat, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(RegistryPtr reg) : reg_(std::move(reg)) {}

  static MultiPoly constant(RegistryPtr reg, const Rat& c) {
    MultiPoly p(std::move(reg));
    if (!rat_is_zero(c)) p.add_term(Expo(static_cast<size_t>(p.reg_->size()), 0), c);
    return p;
  }

  static MultiPoly variable(RegistryPtr reg, int var, unsigned power = 1) {
    MultiPoly p(std::move(reg));
    if (var < 0 || var >= p.reg_->size())
      throw std::out_of_range("MultiPoly::variable: index");
    Expo e(p.reg_->size(), 0);
    e[var] = power;
    p.terms_[e] = Rat(1);
    return p;
  }

  const RegistryPtr& registry() const { return reg_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && expo_total(terms_.begin()->first) == 0;
  }

  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::logic_error("MultiPoly: not a constant");
    return terms_.begin()->second;
  }

  void add_term(const Expo& e, const Rat& c) {
    if (rat_is_zero(c)) return;
    Rat cc = c;
    cc.canonicalize();  // guard against raw p/q construction
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, std::move(cc));
    } else {
      it->second += cc;
      if (rat_is_zero(it->second)) terms_.erase(it);
    }
  }

  // Leading term in graded-lex order.
  const std::pair<const Expo, Rat>& leading() const {
    if (terms_.empty()) throw std::logic_error("MultiPoly::leading: zero polynomial");
    return *terms_.rbegin();
  }

  int degree(int var) const {
    int d = 0;
    for (auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (auto& [e, c] : terms_) d = std::max(d, expo_total(e));
    return d;
  }

  bool depends_on(int var) const {
    for (auto& [e, c] : terms_)
      if (e[var] > 0) return true;
    return false;
  }

  MultiPoly operator-() const {
    MultiPoly r(reg_);
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_same_registry(reg_, o.reg_);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_same_registry(reg_, o.reg_);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_same_registry(a.reg_, b.reg_);
    MultiPoly r(a.reg_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    const int nv = a.reg_->size();
    Expo e(nv, 0);
    for (auto& [ea, ca] : a.terms_) {
      for (auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly& operator*=(const Rat& c) {
    if (rat_is_zero(c)) {
      terms_.clear();
      return *this;
    }
    Rat cc = c;
    cc.canonicalize();
    for (auto& [e, v] : terms_) v *= cc;
    return *this;
  }
  friend MultiPoly operator*(MultiPoly a, const Rat& c) { return a *= c; }
  friend MultiPoly operator*(const Rat& c, MultiPoly a) { return a *= c; }

  bool operator==(const MultiPoly& o) const {
    return reg_.get() == o.reg_.get() && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly pow(unsigned k) const {
    MultiPoly acc = constant(reg_, Rat(1));
    MultiPoly b = *this;
    while (k > 0) {
      if (k & 1) acc *= b;
      if (k >>= 1) b *= b;
    }
    return acc;
  }

  MultiPoly derivative(int var) const {
    MultiPoly r(reg_);
    for (auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Expo f = e;
      f[var] -= 1;
      r.add_term(f, c * Rat(static_cast<long>(e[var])));
    }
    return r;
  }

  // Substitutes polynomials for a subset of variables (same registry).
  MultiPoly substitute(const std::map<int, MultiPoly>& repl) const {
    MultiPoly r(reg_);
    const int nv = reg_->size();
    for (auto& [e, c] : terms_) {
      MultiPoly term = constant(reg_, c);
      Expo rest(nv, 0);
      for (int i = 0; i < nv; ++i) {
        if (e[i] == 0) continue;
        auto it = repl.find(i);
        if (it == repl.end())
          rest[i] = e[i];
        else
          term *= it->second.pow(e[i]);
      }
      MultiPoly mono(reg_);
      mono.terms_[rest] = Rat(1);
      r += term * mono;
    }
    return r;
  }

  Rat eval(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != reg_->size())
      throw std::invalid_argument("MultiPoly::eval: point size mismatch");
    Rat acc(0);
    for (auto& [e, c] : terms_) {
      Rat t = c;
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) t *= rat_pow(point[i], e[i]);
      acc += t;
    }
    return acc;
  }

  // Coefficients as a dense univariate polynomial in `var`, entries free of `var`.
  std::vector<MultiPoly> coeffs_in(int var) const {
    std::vector<MultiPoly> out(static_cast<size_t>(degree(var)) + 1, MultiPoly(reg_));
    for (auto& [e, c] : terms_) {
      Expo f = e;
      unsigned k = f[var];
      f[var] = 0;
      out[k].add_term(f, c);
    }
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    return out;
  }

  static MultiPoly from_coeffs(int var, const std::vector<MultiPoly>& cs, RegistryPtr reg) {
    MultiPoly r(reg);
    for (size_t k = 0; k < cs.size(); ++k) {
      if (cs[k].is_zero()) continue;
      for (auto& [e, c] : cs[k].terms_) {
        Expo f = e;
        f[var] += static_cast<unsigned>(k);
        r.add_term(f, c);
      }
    }
    return r;
  }

  // Relabels variables by `perm` (old index -> new index), a bijection.
  MultiPoly permute_vars(const std::vector<int>& perm) const {
    MultiPoly r(reg_);
    const size_t nv = static_cast<size_t>(reg_->size());
    for (auto& [e, c] : terms_) {
      Expo f(nv, 0);
      for (size_t i = 0; i < nv; ++i) f[static_cast<size_t>(perm[i])] = e[i];
      r.terms_[f] = c;
    }
    return r;
  }

  // Substitutes rational constants for the variables where `vals` is set.
  MultiPoly lower(const std::vector<std::optional<Rat>>& vals) const {
    MultiPoly r(reg_);
    const size_t nv = static_cast<size_t>(reg_->size());
    for (auto& [e, c] : terms_) {
      Rat coef = c;
      Expo f(nv, 0);
      for (size_t i = 0; i < nv; ++i) {
        if (e[i] == 0) continue;
        if (vals[i].has_value())
          coef *= rat_pow(*vals[i], e[i]);
        else
          f[i] = e[i];
      }
      r.add_term(f, coef);
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // Highest terms first reads naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Rat& c = it->second;
      std::string mon;
      for (size_t i = 0; i < it->first.size(); ++i) {
        if (it->first[i] == 0) continue;
        if (!mon.empty()) mon += "*";
        mon += reg_->name(static_cast<int>(i));
        if (it->first[i] > 1) mon += "^" + std::to_string(it->first[i]);
      }
      bool neg = sgn(c) < 0;
      Rat a = rat_abs(c);
      std::string cs = rat_str(a);
      std::string piece;
      if (mon.empty())
        piece = cs;
      else if (a == 1)
        piece = mon;
      else
        piece = cs + "*" + mon;
      if (first) {
        out += (neg ? "-" : "") + piece;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + piece;
      }
    }
    return out;
  }

 private:
  RegistryPtr reg_;
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Exact division, content and gcd.
// ---------------------------------------------------------------------------

// Divides a by b, requiring the division to be exact; used by the
// fraction-free elimination and the gcd routines.
inline MultiPoly divexact(const MultiPoly& a, const MultiPoly& b) {
  check_same_registry(a.registry(), b.registry());
  if (b.is_zero()) throw std::domain_error("divexact: division by zero");
  if (b.is_constant()) {
    MultiPoly r = a;
    Rat inv = 1 / b.constant_value();
    r *= inv;
    return r;
  }
  MultiPoly rem = a;
  MultiPoly quo(a.registry());
  const auto& lb = b.leading();
  const int nv = a.registry()->size();
  while (!rem.is_zero()) {
    const auto& lr = rem.leading();
    Expo q(nv, 0);
    for (int i = 0; i < nv; ++i) {
      if (lr.first[i] < lb.first[i])
        throw std::domain_error("divexact: not divisible");
      q[i] = lr.first[i] - lb.first[i];
    }
    Rat qc = lr.second / lb.second;
    MultiPoly qt(a.registry());
    qt.add_term(q, qc);
    quo += qt;
    rem -= qt * b;
  }
  return quo;
}

inline bool divides(const MultiPoly& b, const MultiPoly& a) {
  if (b.is_zero()) return a.is_zero();
  if (b.is_constant()) return true;
  // Monomial-order division with early bail-out.
  MultiPoly rem = a;
  const auto& lb = b.leading();
  const int nv = a.registry()->size();
  while (!rem.is_zero()) {
    const auto& lr = rem.leading();
    Expo q(nv, 0);
    for (int i = 0; i < nv; ++i) {
      if (lr.first[i] < lb.first[i]) return false;
      q[i] = lr.first[i] - lb.first[i];
    }
    MultiPoly qt(a.registry());
    qt.add_term(q, lr.second / lb.second);
    rem -= qt * b;
  }
  return true;
}

// Rational content: c > 0 such that p/c has coprime integer coefficients.
inline Rat rat_content(const MultiPoly& p) {
  if (p.is_zero()) return Rat(1);
  mpz_class num_gcd(0), den_lcm(1);
  for (auto& [e, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rat c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

// Sign-and-content normalized copy: integer coprime coefficients with
// positive leading coefficient. The canonical representative of the
// associate class used by gcd.
inline MultiPoly poly_primitive(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Rat c = rat_content(p);
  if (sgn(p.leading().second) < 0) c = -c;
  MultiPoly r = p;
  r *= 1 / c;
  return r;
}

namespace detail {

inline MultiPoly gcd_impl(const MultiPoly& A, const MultiPoly& B, int depth);

// gcd of the coefficients of p viewed as univariate in `var`.
inline MultiPoly content_in(const MultiPoly& p, int var, int depth) {
  auto cs = p.coeffs_in(var);
  MultiPoly g(p.registry());
  for (auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? poly_primitive(c) : gcd_impl(g, c, depth + 1);
    if (g.is_constant()) break;
  }
  return g.is_zero() ? MultiPoly::constant(p.registry(), Rat(1)) : g;
}

// Pseudo-remainder of dense univariate views in `var`.
inline std::vector<MultiPoly> prem(std::vector<MultiPoly> f, const std::vector<MultiPoly>& g,
                                   const RegistryPtr& reg) {
  const MultiPoly& lg = g.back();
  int df = static_cast<int>(f.size()) - 1;
  const int dg = static_cast<int>(g.size()) - 1;
  while (df >= dg) {
    if (!f.back().is_zero()) {
      MultiPoly lf = f.back();
      for (auto& c : f) c *= lg;
      for (int k = 0; k <= dg; ++k)
        f[static_cast<size_t>(df - dg + k)] -= lf * g[static_cast<size_t>(k)];
    }
    f.pop_back();
    --df;
    while (!f.empty() && f.back().is_zero()) {
      f.pop_back();
      --df;
    }
    if (f.empty()) break;
  }
  while (!f.empty() && f.back().is_zero()) f.pop_back();
  return f;
}

// Sound shortcut: substituting values for all variables but `var` can only
// raise the gcd degree in `var`, never lower it, as long as neither leading
// coefficient vanishes. A degree-zero image therefore certifies that the
// true gcd is free of `var`.
inline bool image_gcd_free_of(const MultiPoly& A, const MultiPoly& B, int var) {
  const auto& reg = A.registry();
  const int nv = reg->size();
  static const long seeds[] = {7, 11, 17, 23, 5, 13, 29, 3, 19, 31};
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Rat> point(static_cast<size_t>(nv), Rat(0));
    for (int i = 0; i < nv; ++i)
      point[static_cast<size_t>(i)] =
          Rat(seeds[(i + 3 * attempt) % 10] + 10 * attempt + i, 1 + ((i + attempt) % 3));
    auto eval_in = [&](const MultiPoly& p) {
      auto cs = p.coeffs_in(var);
      std::vector<Rat> out;
      out.reserve(cs.size());
      for (auto& c : cs) out.push_back(c.eval(point));
      while (out.size() > 1 && rat_is_zero(out.back())) out.pop_back();
      return out;
    };
    std::vector<Rat> fa = eval_in(A), fb = eval_in(B);
    if (static_cast<int>(fa.size()) - 1 != A.degree(var)) continue;  // lc vanished
    if (static_cast<int>(fb.size()) - 1 != B.degree(var)) continue;
    auto is_zero_poly = [](const std::vector<Rat>& v) {
      return v.size() == 1 && rat_is_zero(v[0]);
    };
    // univariate Euclid over Q; ends with fa = gcd image, fb = 0
    while (!is_zero_poly(fb)) {
      std::vector<Rat> r = fa;  // r := fa mod fb
      while (r.size() >= fb.size() && !is_zero_poly(r)) {
        Rat q = r.back() / fb.back();
        size_t off = r.size() - fb.size();
        for (size_t k = 0; k < fb.size(); ++k) r[off + k] -= q * fb[k];
        while (r.size() > 1 && rat_is_zero(r.back())) r.pop_back();
      }
      fa = std::move(fb);
      fb = std::move(r);
    }
    return fa.size() == 1;
  }
  return false;
}

inline MultiPoly gcd_impl(const MultiPoly& A0, const MultiPoly& B0, int depth) {
  const auto& reg = A0.registry();
  if (A0.is_zero()) return poly_primitive(B0);
  if (B0.is_zero()) return poly_primitive(A0);
  if (A0.is_constant() || B0.is_constant())
    return MultiPoly::constant(reg, Rat(1));
  if (depth > 64) throw std::logic_error("gcd: recursion depth exceeded");

  MultiPoly A = poly_primitive(A0), B = poly_primitive(B0);
  if (A == B) return A;

  // Main variable: common to both, smallest max-degree to keep PRS short.
  int var = -1;
  long best = -1;
  for (int i = 0; i < reg->size(); ++i) {
    if (!A.depends_on(i) || !B.depends_on(i)) continue;
    long d = std::max(A.degree(i), B.degree(i));
    if (var < 0 || d < best) {
      var = i;
      best = d;
    }
  }
  if (var < 0) return MultiPoly::constant(reg, Rat(1));  // disjoint supports

  if (image_gcd_free_of(A, B, var)) {
    // gcd divides both contents in `var`.
    MultiPoly ca = content_in(A, var, depth);
    if (ca.is_constant()) return MultiPoly::constant(reg, Rat(1));
    MultiPoly cb = content_in(B, var, depth);
    return gcd_impl(ca, cb, depth + 1);
  }

  MultiPoly contA = content_in(A, var, depth);
  MultiPoly contB = content_in(B, var, depth);
  MultiPoly cont = gcd_impl(contA, contB, depth + 1);
  std::vector<MultiPoly> f = divexact(A, contA).coeffs_in(var);
  std::vector<MultiPoly> g = divexact(B, contB).coeffs_in(var);
  if (f.size() < g.size()) std::swap(f, g);

  // Primitive PRS.
  while (true) {
    std::vector<MultiPoly> r = prem(f, g, reg);
    if (r.empty()) {
      // g divides f: primitive part of g is the pp-gcd.
      MultiPoly gg = MultiPoly::from_coeffs(var, g, reg);
      MultiPoly pp = divexact(gg, content_in(gg, var, depth));
      return cont * poly_primitive(pp);
    }
    if (r.size() == 1) {
      if (r[0].is_zero()) {
        MultiPoly gg = MultiPoly::from_coeffs(var, g, reg);
        MultiPoly pp = divexact(gg, content_in(gg, var, depth));
        return cont * poly_primitive(pp);
      }
      return cont;  // pp-gcd trivial
    }
    MultiPoly rr = MultiPoly::from_coeffs(var, r, reg);
    rr = poly_primitive(divexact(rr, content_in(rr, var, depth)));
    f = g;
    g = rr.coeffs_in(var);
  }
}

}  // namespace detail

inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  check_same_registry(a.registry(), b.registry());
  return detail::gcd_impl(a, b, 0);
}

inline MultiPoly poly_lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.registry());
  return divexact(a * b, poly_gcd(a, b));
}

}  // namespace ybl

#endif
