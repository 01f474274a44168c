#ifndef YBL_CONTEXT_HPP
#define YBL_CONTEXT_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ybl/ratfunc.hpp"

namespace ybl {

/*
  One computation session for fixed N (colors) and n (tensor slots).

  The variable registry always carries the full symbolic alphabet
    z_1..z_n, h, q_1..q_N, u, x, g_1..g_n, s_1..s_n, r_1..r_{N-1};
  g_* are the flat Chern-root slots and s_* the flat block elementary
  symmetric slots, both regrouped per weight. A scalar assignment may pin
  z, h and q to rationals; accessors below then hand out constants, so
  every formula downstream is written once and works in either mode.

  The weight-space layer (xi vectors and friends) always computes with
  symbolic z, h: its recursion permutes z-variables, which only makes
  sense symbolically. Specialization happens when values are read out
  through lower().
*/
class Context {
 public:
  Context(int N, int n) : N_(N), n_(n) {
    if (N < 1 || n < 1) throw std::invalid_argument("Context: need N >= 1, n >= 1");
    auto reg = std::make_shared<VarRegistry>();
    for (int a = 1; a <= n; ++a) zv_.push_back(reg->add("z" + std::to_string(a), VarRole::Equivariant));
    hv_ = reg->add("h", VarRole::Deformation);
    for (int i = 1; i <= N; ++i) qv_.push_back(reg->add("q" + std::to_string(i), VarRole::Quantum));
    uv_ = reg->add("u", VarRole::Spectral);
    xv_ = reg->add("x", VarRole::Auxiliary);
    for (int k = 1; k <= n; ++k) gv_.push_back(reg->add("g" + std::to_string(k), VarRole::ChernRoot));
    for (int k = 1; k <= n; ++k) sv_.push_back(reg->add("s" + std::to_string(k), VarRole::Auxiliary));
    for (int i = 1; i < N; ++i) rv_.push_back(reg->add("r" + std::to_string(i), VarRole::Auxiliary));
    reg_ = std::move(reg);
    vals_.assign(static_cast<size_t>(reg_->size()), std::nullopt);
  }

  int N() const { return N_; }
  int n() const { return n_; }
  const RegistryPtr& registry() const { return reg_; }

  // --- scalar assignments -------------------------------------------------
  void specialize_z(const std::vector<Rat>& zvals, const Rat& hval) {
    if (static_cast<int>(zvals.size()) != n_)
      throw std::invalid_argument("specialize_z: expected " + std::to_string(n_) + " values");
    for (int a = 0; a < n_; ++a) vals_[static_cast<size_t>(zv_[a])] = zvals[static_cast<size_t>(a)];
    vals_[static_cast<size_t>(hv_)] = hval;
    check_z_genericity();
  }

  void specialize_q(const std::vector<Rat>& qvals) {
    if (static_cast<int>(qvals.size()) != N_)
      throw std::invalid_argument("specialize_q: expected " + std::to_string(N_) + " values");
    for (int i = 0; i < N_; ++i) vals_[static_cast<size_t>(qv_[i])] = qvals[static_cast<size_t>(i)];
    check_q_genericity();
  }

  bool z_symbolic() const { return !vals_[static_cast<size_t>(hv_)].has_value(); }
  bool q_symbolic() const { return !vals_[static_cast<size_t>(qv_[0])].has_value(); }

  // --- variable accessors (1-based where the notation is) ------------------
  int z_var(int a) const { return zv_.at(static_cast<size_t>(a - 1)); }
  int h_var() const { return hv_; }
  int q_var(int i) const { return qv_.at(static_cast<size_t>(i - 1)); }
  int u_var() const { return uv_; }
  int x_var() const { return xv_; }
  int gamma_var(int k) const { return gv_.at(static_cast<size_t>(k - 1)); }
  int sigma_var(int k) const { return sv_.at(static_cast<size_t>(k - 1)); }
  int r_var(int i) const { return rv_.at(static_cast<size_t>(i - 1)); }

  // Scalars respecting the assignment (z may be a constant).
  RatFunc z(int a) const { return value_or_var(z_var(a)); }
  RatFunc h() const { return value_or_var(hv_); }
  RatFunc q(int i) const { return value_or_var(q_var(i)); }
  RatFunc u() const { return RatFunc::variable(reg_, uv_); }
  RatFunc x() const { return RatFunc::variable(reg_, xv_); }
  RatFunc gamma(int k) const { return RatFunc::variable(reg_, gamma_var(k)); }
  RatFunc rvar(int i) const { return RatFunc::variable(reg_, r_var(i)); }
  RatFunc constant(const Rat& c) const { return RatFunc::constant(reg_, c); }
  RatFunc zero() const { return RatFunc(reg_); }
  RatFunc one() const { return RatFunc::constant(reg_, Rat(1)); }

  // Symbolic z/h regardless of assignment (weight-space layer).
  RatFunc z_sym(int a) const { return RatFunc::variable(reg_, z_var(a)); }
  RatFunc h_sym() const { return RatFunc::variable(reg_, hv_); }

  // Applies the scalar assignment to a symbolically built value.
  RatFunc lower(const RatFunc& f) const { return f.lower(vals_); }

  const std::vector<std::optional<Rat>>& assignment() const { return vals_; }

 private:
  RatFunc value_or_var(int var) const {
    const auto& v = vals_[static_cast<size_t>(var)];
    if (v.has_value()) return RatFunc::constant(reg_, *v);
    return RatFunc::variable(reg_, var);
  }

  // The paper-level distinctness assumptions: every factor that can occur
  // in a denominator must be nonzero under the assignment.
  void check_z_genericity() const {
    auto zval = [&](int a) { return *vals_[static_cast<size_t>(zv_[a - 1])]; };
    Rat hval = *vals_[static_cast<size_t>(hv_)];
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) {
        if (i == j) continue;
        Rat d = zval(i) - zval(j);
        if (rat_is_zero(d))
          fail_generic("z" + std::to_string(i) + "-z" + std::to_string(j));
        if (rat_is_zero(d + hval))
          fail_generic("z" + std::to_string(i) + "-z" + std::to_string(j) + "+h");
        if (rat_is_zero(d - hval))
          fail_generic("z" + std::to_string(i) + "-z" + std::to_string(j) + "-h");
      }
  }

  void check_q_genericity() const {
    for (int i = 1; i <= N_; ++i)
      for (int j = i + 1; j <= N_; ++j) {
        Rat d = *vals_[static_cast<size_t>(qv_[i - 1])] - *vals_[static_cast<size_t>(qv_[j - 1])];
        if (rat_is_zero(d))
          fail_generic("q" + std::to_string(i) + "-q" + std::to_string(j));
      }
  }

  [[noreturn]] static void fail_generic(const std::string& factor) {
    throw std::domain_error("genericity guard: factor " + factor + " vanishes");
  }

  int N_, n_;
  RegistryPtr reg_;
  int hv_ = -1, uv_ = -1, xv_ = -1;
  std::vector<int> zv_, qv_, gv_, sv_, rv_;
  std::vector<std::optional<Rat>> vals_;
};

// Default rational q-panel: q_i = 1/p_i over the first N primes, which is
// automatically distinct and keeps denominators small.
inline std::vector<Rat> default_q_values(int N) {
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  if (N > 10) throw std::invalid_argument("default_q_values: N too large");
  std::vector<Rat> q;
  for (int i = 0; i < N; ++i) q.push_back(Rat(1, primes[i]));
  return q;
}

}  // namespace ybl

#endif
