#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace koszul {

struct BasisElement {
  std::string label;
  int degree = 0;
};

/// A finite-dimensional graded vector space with a fixed ordered basis.
/// Immutable after construction; shared by reference everywhere.
class GradedSpace {
 public:
  GradedSpace(std::string name, std::vector<BasisElement> basis)
      : name_(std::move(name)), basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      auto [it, fresh] = index_.emplace(basis_[i].label, i);
      if (!fresh)
        throw std::invalid_argument("duplicate basis label '" +
                                    basis_[i].label + "' in space " + name_);
    }
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const std::string& label(std::size_t i) const { return basis_.at(i).label; }
  int degree(std::size_t i) const { return basis_.at(i).degree; }

  /// Index of a label, or npos when absent.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? npos : it->second;
  }

  int min_degree() const {
    int m = 0;
    bool first = true;
    for (const auto& b : basis_) {
      if (first || b.degree < m) m = b.degree;
      first = false;
    }
    return m;
  }
  int max_degree() const {
    int m = 0;
    bool first = true;
    for (const auto& b : basis_) {
      if (first || b.degree > m) m = b.degree;
      first = false;
    }
    return m;
  }

 private:
  std::string name_;
  std::vector<BasisElement> basis_;
  std::unordered_map<std::string, std::size_t> index_;
};

using SpaceRef = std::shared_ptr<const GradedSpace>;

inline SpaceRef make_space(std::string name, std::vector<BasisElement> basis) {
  return std::make_shared<const GradedSpace>(std::move(name),
                                             std::move(basis));
}

/// Degree-shifted view: same basis labels, degrees remapped per V[n]^m = V^{m+n},
/// so a basis vector of degree d in V has degree d - n in V[n].
inline SpaceRef shifted_space(const SpaceRef& v, int n) {
  std::vector<BasisElement> basis = v->basis();
  for (auto& b : basis) b.degree -= n;
  return make_space(v->name() + "[" + std::to_string(n) + "]",
                    std::move(basis));
}

}  // namespace koszul
