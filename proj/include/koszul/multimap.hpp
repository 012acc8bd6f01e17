#pragma once

#include <functional>

#include "koszul/normal_form.hpp"

namespace koszul {

/// One arity component of a structure map: skew-symmetric in `garity` leading
/// slots from the algebra space, with an optional trailing module slot that
/// never participates in the symmetry. Data lives only on canonical keys
/// (sorted skew part); evaluation on arbitrary keys routes through
/// skew_normalize and the accumulated sign.
class SkewMultiMap {
 public:
  SkewMultiMap() = default;
  SkewMultiMap(SpaceRef g, int garity, Shape module, Shape target, int degree)
      : g_(std::move(g)),
        garity_(garity),
        module_(std::move(module)),
        target_(std::move(target)),
        degree_(degree) {}

  const SpaceRef& algebra_space() const { return g_; }
  int garity() const { return garity_; }
  const Shape& module_shape() const { return module_; }
  const Shape& target_shape() const { return target_; }
  int degree() const { return degree_; }
  bool is_zero() const { return entries_.empty(); }
  const std::map<TensorKey, GradedElement>& entries() const {
    return entries_;
  }

  Shape source_shape() const { return concat(power(g_, garity_), module_); }

  std::size_t key_size() const { return garity_ + module_.size(); }

  int input_degree(const TensorKey& key) const {
    int d = 0;
    for (int i = 0; i < garity_; ++i) d += g_->degree(key[i]);
    for (std::size_t m = 0; m < module_.size(); ++m)
      d += module_[m]->degree(key[garity_ + m]);
    return d;
  }

  /// Adds `value` at `key` (any slot order in the skew block). Enforces
  /// homogeneity: deg(out) = deg(in) + degree. A nonzero value on a key whose
  /// skew part normalizes to zero is rejected.
  void add(const TensorKey& key, const GradedElement& value) {
    if (key.size() != key_size())
      throw std::invalid_argument("multimap key has wrong length");
    if (value.is_zero()) return;
    if (!same_shape(value.shape(), target_))
      throw std::invalid_argument("multimap value has wrong shape");
    auto vdeg = value.homogeneous_degree();
    if (!vdeg)
      throw std::invalid_argument("multimap value is not homogeneous");
    if (*vdeg != input_degree(key) + degree_)
      throw std::invalid_argument(
          "degree violation: entry at key " + key_label(source_shape(), key) +
          " maps degree " + std::to_string(input_degree(key)) + " to " +
          std::to_string(*vdeg) + " but operator degree is " +
          std::to_string(degree_));
    TensorKey skew(key.begin(), key.begin() + garity_);
    NormalizedKey nf = skew_normalize(*g_, std::move(skew));
    if (nf.zero)
      throw std::invalid_argument(
          "nonzero value on a skew-degenerate key at " +
          key_label(source_shape(), key));
    TensorKey canon = nf.key;
    canon.insert(canon.end(), key.begin() + garity_, key.end());
    auto it = entries_.find(canon);
    if (it == entries_.end()) {
      GradedElement v = value.scaled(Rational(nf.sign));
      if (!v.is_zero()) entries_.emplace(std::move(canon), std::move(v));
    } else {
      it->second.add(value, Rational(nf.sign));
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  /// Value on one basis tensor; zero element when absent or degenerate.
  GradedElement eval_key(const TensorKey& key) const {
    if (key.size() != key_size())
      throw std::invalid_argument("multimap eval key has wrong length");
    TensorKey skew(key.begin(), key.begin() + garity_);
    NormalizedKey nf = skew_normalize(*g_, std::move(skew));
    if (nf.zero) return GradedElement(target_);
    TensorKey canon = nf.key;
    canon.insert(canon.end(), key.begin() + garity_, key.end());
    auto it = entries_.find(canon);
    if (it == entries_.end()) return GradedElement(target_);
    return it->second.scaled(Rational(nf.sign));
  }

  /// Linear extension to sparse inputs over the source shape.
  GradedElement eval(const GradedElement& x) const {
    GradedElement out(target_);
    for (const auto& [k, c] : x.terms()) out.add(eval_key(k), c);
    return out;
  }

  void add_map(const SkewMultiMap& other, const Rational& scale = Rational(1)) {
    if (other.garity_ != garity_ || !same_shape(other.module_, module_) ||
        !same_shape(other.target_, target_) || other.degree_ != degree_)
      throw std::invalid_argument("multimap profile mismatch in add_map");
    for (const auto& [k, v] : other.entries_) {
      auto it = entries_.find(k);
      if (it == entries_.end()) {
        GradedElement sv = v.scaled(scale);
        if (!sv.is_zero()) entries_.emplace(k, std::move(sv));
      } else {
        it->second.add(v, scale);
        if (it->second.is_zero()) entries_.erase(it);
      }
    }
  }

  SkewMultiMap scaled(const Rational& c) const {
    SkewMultiMap r(g_, garity_, module_, target_, degree_);
    if (c == 0) return r;
    for (const auto& [k, v] : entries_) r.entries_.emplace(k, v.scaled(c));
    return r;
  }

  bool operator==(const SkewMultiMap& o) const {
    return garity_ == o.garity_ && degree_ == o.degree_ &&
           same_shape(module_, o.module_) && same_shape(target_, o.target_) &&
           entries_ == o.entries_;
  }

 private:
  SpaceRef g_;
  int garity_ = 0;
  Shape module_;
  Shape target_;
  int degree_ = 0;
  std::map<TensorKey, GradedElement> entries_;
};

/// A block in a tensor-product operator: either an identity run or a stored
/// multilinear map consuming a contiguous slice.
struct OperatorBlock {
  const SkewMultiMap* op = nullptr;  // null marks an identity block
  int identity_factors = 0;

  std::size_t in_factors() const {
    return op ? op->key_size() : static_cast<std::size_t>(identity_factors);
  }
  int degree() const { return op ? op->degree() : 0; }
};

/// Applies blocks left to right with the operator-Koszul interchange sign:
/// each block of odd degree picks up (-1)^{deg of the factors to its left}.
inline GradedElement apply_operator_tensor(
    const std::vector<OperatorBlock>& blocks, const GradedElement& x) {
  std::size_t need = 0;
  Shape out_shape;
  for (const auto& b : blocks) {
    need += b.in_factors();
    if (b.op) {
      for (const auto& s : b.op->target_shape()) out_shape.push_back(s);
    }
  }
  if (need != x.shape().size())
    throw std::invalid_argument("operator blocks do not cover the element");
  // Identity blocks keep their own factors.
  {
    std::size_t at = 0;
    out_shape.clear();
    for (const auto& b : blocks) {
      if (b.op) {
        for (const auto& s : b.op->target_shape()) out_shape.push_back(s);
      } else {
        for (int t = 0; t < b.identity_factors; ++t)
          out_shape.push_back(x.shape()[at + t]);
      }
      at += b.in_factors();
    }
  }
  GradedElement result(out_shape);
  for (const auto& [key, coeff] : x.terms()) {
    std::vector<std::pair<TensorKey, Rational>> partial{{TensorKey{}, coeff}};
    std::size_t at = 0;
    int left_degree = 0;
    bool dead = false;
    for (const auto& b : blocks) {
      std::size_t take = b.in_factors();
      TensorKey slice(key.begin() + at, key.begin() + at + take);
      int slice_degree = 0;
      for (std::size_t t = 0; t < take; ++t)
        slice_degree += x.shape()[at + t]->degree(slice[t]);
      if (b.op) {
        int inter = ((b.op->degree() & 1) && (left_degree & 1)) ? -1 : 1;
        GradedElement v = b.op->eval_key(slice);
        if (v.is_zero()) {
          dead = true;
          break;
        }
        std::vector<std::pair<TensorKey, Rational>> next;
        for (const auto& [pk, pc] : partial)
          for (const auto& [vk, vc] : v.terms()) {
            TensorKey nk = pk;
            nk.insert(nk.end(), vk.begin(), vk.end());
            next.emplace_back(std::move(nk), pc * vc * inter);
          }
        partial = std::move(next);
      } else {
        for (auto& [pk, pc] : partial)
          pk.insert(pk.end(), slice.begin(), slice.end());
      }
      left_degree += slice_degree;
      at += take;
    }
    if (dead) continue;
    for (auto& [pk, pc] : partial) result.add(std::move(pk), std::move(pc));
  }
  return result;
}

/// Enumerates the canonical admissible skew keys of Lambda^arity(g): sorted
/// index tuples where only odd-degree labels may repeat.
inline std::vector<TensorKey> canonical_skew_keys(const GradedSpace& g,
                                                  int arity) {
  std::vector<TensorKey> out;
  TensorKey cur;
  auto rec = [&](auto&& self, std::uint32_t from) -> void {
    if (static_cast<int>(cur.size()) == arity) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t i = from; i < g.dim(); ++i) {
      bool repeat = !cur.empty() && cur.back() == i;
      if (repeat && (g.degree(i) % 2 == 0)) continue;
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Canonical sym keys: sorted tuples where odd-degree labels are distinct.
inline std::vector<TensorKey> canonical_sym_keys(const GradedSpace& g,
                                                 int arity) {
  std::vector<TensorKey> out;
  TensorKey cur;
  auto rec = [&](auto&& self, std::uint32_t from) -> void {
    if (static_cast<int>(cur.size()) == arity) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t i = from; i < g.dim(); ++i) {
      bool repeat = !cur.empty() && cur.back() == i;
      if (repeat && (g.degree(i) % 2 != 0)) continue;
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// All basis keys of a shape (cartesian product of factor bases).
inline std::vector<TensorKey> all_keys(const Shape& shape) {
  std::vector<TensorKey> out;
  TensorKey cur;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == shape.size()) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t i = 0; i < shape[pos]->dim(); ++i) {
      cur.push_back(i);
      self(self, pos + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Full source enumeration for a component: canonical skew g-part times every
/// module key.
inline std::vector<TensorKey> canonical_source_keys(const SkewMultiMap& m) {
  std::vector<TensorKey> out;
  auto skews = canonical_skew_keys(*m.algebra_space(), m.garity());
  auto mods = all_keys(m.module_shape());
  out.reserve(skews.size() * mods.size());
  for (const auto& s : skews)
    for (const auto& md : mods) {
      TensorKey k = s;
      k.insert(k.end(), md.begin(), md.end());
      out.push_back(std::move(k));
    }
  return out;
}

}  // namespace koszul
