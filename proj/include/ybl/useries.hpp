#ifndef YBL_USERIES_HPP
#define YBL_USERIES_HPP

#include <stdexcept>
#include <vector>

#include "ybl/matrix.hpp"

namespace ybl {

/*
  Laurent expansion at infinity in a distinguished variable: for f = N/D
  rational in `var` with deg N <= deg D, returns a_0..a_smax with
  f = sum_s a_s var^{-s} + O(var^{-smax-1}). The coefficients are rational
  functions of the remaining variables.
*/
inline std::vector<RatFunc> expand_at_infinity(const RatFunc& f, int var, int smax) {
  const RegistryPtr& reg = f.registry();
  std::vector<MultiPoly> nc = f.num().coeffs_in(var);
  std::vector<MultiPoly> dc = f.den().coeffs_in(var);
  if (f.is_zero()) return std::vector<RatFunc>(static_cast<size_t>(smax) + 1, RatFunc(reg));
  const int dn = static_cast<int>(nc.size()) - 1;
  const int dd = static_cast<int>(dc.size()) - 1;
  if (dn > dd)
    throw std::domain_error("expand_at_infinity: function grows at infinity");
  RatFunc lead_inv = RatFunc(dc[static_cast<size_t>(dd)]).inverse();
  auto ncoef = [&](int k) {  // coefficient of var^k in N
    if (k < 0 || k > dn) return RatFunc(reg);
    return RatFunc(nc[static_cast<size_t>(k)]);
  };
  auto dcoef = [&](int k) {
    if (k < 0 || k > dd) return RatFunc(reg);
    return RatFunc(dc[static_cast<size_t>(k)]);
  };
  std::vector<RatFunc> a;
  a.reserve(static_cast<size_t>(smax) + 1);
  for (int s = 0; s <= smax; ++s) {
    // Match coefficients of var^{dd-s} in N = D * sum a_t var^{-t}.
    RatFunc acc = ncoef(dd - s);
    for (int t = 0; t < s; ++t) acc -= dcoef(dd - s + t) * a[static_cast<size_t>(t)];
    a.push_back(acc * lead_inv);
  }
  return a;
}

// Entrywise expansion of a matrix rational in `var`.
inline std::vector<FieldMatrix> expand_at_infinity(const FieldMatrix& m, int var, int smax) {
  std::vector<FieldMatrix> out(static_cast<size_t>(smax) + 1,
                               FieldMatrix(m.registry(), m.rows(), m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      auto cs = expand_at_infinity(m.at(i, j), var, smax);
      for (int s = 0; s <= smax; ++s) out[static_cast<size_t>(s)].at(i, j) = cs[static_cast<size_t>(s)];
    }
  return out;
}

// Limit of f as var -> infinity: 0 if deg num < deg den, ratio of leading
// coefficients if equal; error if f grows.
inline RatFunc limit_at_infinity(const RatFunc& f, int var) {
  if (f.is_zero()) return f;
  std::vector<MultiPoly> nc = f.num().coeffs_in(var);
  std::vector<MultiPoly> dc = f.den().coeffs_in(var);
  const int dn = static_cast<int>(nc.size()) - 1;
  const int dd = static_cast<int>(dc.size()) - 1;
  if (dn > dd) throw std::domain_error("limit_at_infinity: function grows");
  if (dn < dd) return RatFunc(f.registry());
  return RatFunc(nc.back(), dc.back());
}

inline FieldMatrix limit_at_infinity(const FieldMatrix& m, int var) {
  FieldMatrix r(m.registry(), m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = limit_at_infinity(m.at(i, j), var);
  return r;
}

// True iff f -> 0 as var -> infinity (numerator degree strictly smaller).
inline bool vanishes_at_infinity(const RatFunc& f, int var) {
  if (f.is_zero()) return true;
  return f.num().degree(var) < f.den().degree(var);
}

// Substitutes a value for `var`.
inline RatFunc subst_var(const RatFunc& f, int var, const RatFunc& value) {
  return f.substitute({{var, value}});
}

inline FieldMatrix subst_var(const FieldMatrix& m, int var, const RatFunc& value) {
  FieldMatrix r(m.registry(), m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).substitute({{var, value}});
  return r;
}

}  // namespace ybl

#endif
