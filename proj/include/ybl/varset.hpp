#ifndef YBL_VARSET_HPP
#define YBL_VARSET_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ybl {

enum class VarRole {
  Equivariant,   // z_1..z_n
  Deformation,   // h
  Quantum,       // q_1..q_N
  ChernRoot,     // g_{p,i}
  Spectral,      // u
  Auxiliary,     // x, r_i, block elementary symmetrics
  Series,        // series variable
};

// Ordered list of named variables shared by every polynomial and rational
// function of one computation. The order is fixed at construction and
// determines the monomial order.
class VarRegistry {
 public:
  int add(const std::string& name, VarRole role) {
    if (index_.count(name))
      throw std::invalid_argument("VarRegistry: duplicate variable " + name);
    index_[name] = static_cast<int>(names_.size());
    names_.push_back(name);
    roles_.push_back(role);
    return static_cast<int>(names_.size()) - 1;
  }

  int size() const { return static_cast<int>(names_.size()); }

  int find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      throw std::invalid_argument("VarRegistry: unknown variable " + name);
    return it->second;
  }

  bool contains(const std::string& name) const { return index_.count(name) > 0; }

  const std::string& name(int i) const { return names_.at(i); }
  VarRole role(int i) const { return roles_.at(i); }

 private:
  std::vector<std::string> names_;
  std::vector<VarRole> roles_;
  std::map<std::string, int> index_;
};

using RegistryPtr = std::shared_ptr<const VarRegistry>;

inline void check_same_registry(const RegistryPtr& a, const RegistryPtr& b) {
  if (a.get() != b.get())
    throw std::invalid_argument("operands belong to different variable registries");
}

}  // namespace ybl

#endif
