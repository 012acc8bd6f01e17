#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "koszul/graded_space.hpp"
#include "koszul/permutation.hpp"
#include "koszul/rational.hpp"

namespace koszul {

/// The factor list of a tensor power; the empty shape is the ground field.
using Shape = std::vector<SpaceRef>;

inline Shape concat(const Shape& a, const Shape& b) {
  Shape s = a;
  s.insert(s.end(), b.begin(), b.end());
  return s;
}

inline Shape power(const SpaceRef& v, int n) {
  return Shape(static_cast<std::size_t>(n), v);
}

inline bool same_shape(const Shape& a, const Shape& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].get() != b[i].get()) return false;
  return true;
}

inline std::string shape_name(const Shape& s) {
  if (s.empty()) return "K";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "*";
    out += s[i]->name();
  }
  return out;
}

/// Basis tensor of a shape: per-factor basis indices.
using TensorKey = std::vector<std::uint32_t>;

inline int key_degree(const Shape& shape, const TensorKey& key) {
  int d = 0;
  for (std::size_t i = 0; i < key.size(); ++i) d += shape[i]->degree(key[i]);
  return d;
}

inline std::vector<int> key_degrees(const Shape& shape, const TensorKey& key) {
  std::vector<int> ds(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) ds[i] = shape[i]->degree(key[i]);
  return ds;
}

inline std::string key_label(const Shape& shape, const TensorKey& key) {
  if (key.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += "*";
    out += shape[i]->label(key[i]);
  }
  return out;
}

/// Sparse exact element of a tensor power. Zero coefficients are never stored.
class GradedElement {
 public:
  GradedElement() = default;
  explicit GradedElement(Shape shape) : shape_(std::move(shape)) {}

  static GradedElement basis(Shape shape, TensorKey key,
                             Rational coeff = Rational(1)) {
    GradedElement e(std::move(shape));
    e.add(std::move(key), std::move(coeff));
    return e;
  }

  /// Scalar element of the ground field (empty shape).
  static GradedElement scalar(Rational c) {
    GradedElement e{Shape{}};
    e.add(TensorKey{}, std::move(c));
    return e;
  }

  const Shape& shape() const { return shape_; }
  const std::map<TensorKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add(TensorKey key, Rational coeff) {
    if (coeff == 0) return;
    if (key.size() != shape_.size())
      throw std::invalid_argument("key length does not match shape");
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), std::move(coeff));
    } else {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const GradedElement& other, const Rational& scale = Rational(1)) {
    if (!same_shape(shape_, other.shape_))
      throw std::invalid_argument("element shape mismatch in add");
    if (scale == 0) return;
    for (const auto& [k, c] : other.terms_) add(k, c * scale);
  }

  GradedElement operator+(const GradedElement& o) const {
    GradedElement r = *this;
    r.add(o);
    return r;
  }
  GradedElement operator-(const GradedElement& o) const {
    GradedElement r = *this;
    r.add(o, Rational(-1));
    return r;
  }
  GradedElement scaled(const Rational& c) const {
    GradedElement r(shape_);
    if (c == 0) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
  }

  bool operator==(const GradedElement& o) const {
    return same_shape(shape_, o.shape_) && terms_ == o.terms_;
  }

  /// All stored keys share one total degree; nullopt for 0 or mixed.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& [k, c] : terms_) {
      int kd = key_degree(shape_, k);
      if (!d)
        d = kd;
      else if (*d != kd)
        return std::nullopt;
    }
    return d;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << to_string(c) << "*" << key_label(shape_, k);
    }
    return os.str();
  }

 private:
  Shape shape_;
  std::map<TensorKey, Rational> terms_;
};

inline GradedElement tensor(const GradedElement& a, const GradedElement& b) {
  GradedElement r(concat(a.shape(), b.shape()));
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      TensorKey k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      r.add(std::move(k), ca * cb);
    }
  return r;
}

/// Left Koszul action: input slot p moves to slot perm.images[p] and the
/// crossing factors pick up the Koszul sign (plus sgn when signed = true).
inline GradedElement koszul_permute(const GradedElement& x,
                                    const Permutation& perm, bool signed_sum) {
  Shape out_shape(x.shape().size());
  for (std::size_t p = 0; p < x.shape().size(); ++p)
    out_shape[perm.images[p]] = x.shape()[p];
  GradedElement r(out_shape);
  int sgn = signed_sum ? signature(perm) : 1;
  for (const auto& [k, c] : x.terms()) {
    TensorKey out(k.size());
    for (std::size_t p = 0; p < k.size(); ++p) out[perm.images[p]] = k[p];
    int chi = koszul_sign(perm, key_degrees(x.shape(), k));
    r.add(std::move(out), c * (sgn * chi));
  }
  return r;
}

enum class ShufflerKind { Skew, Sym };

namespace detail {
inline void check_shuffler_blocks(const std::vector<int>& block_sizes,
                                  std::size_t n, bool& empty_sum) {
  long long total = 0;
  empty_sum = false;
  for (int b : block_sizes) {
    if (b == -1) empty_sum = true;
    total += (b == -1 ? 0 : b);
  }
  if (!empty_sum && total != static_cast<long long>(n))
    throw std::invalid_argument("shuffler blocks do not cover the element");
}
}  // namespace detail

/// The input-side (splitting) shuffler: the signed sum whose sigma-term
/// carries x_{sigma(m)} in slot m, over the block-increasing permutations.
/// This is the reading under which the standard unitality, associativity
/// and symmetry identities hold verbatim, and the one every structure
/// formula precomposes with.
inline GradedElement apply_shuffler(ShufflerKind kind,
                                    const std::vector<int>& block_sizes,
                                    const GradedElement& x) {
  bool empty = false;
  detail::check_shuffler_blocks(block_sizes, x.shape().size(), empty);
  GradedElement r(x.shape());
  if (empty) return r;
  for (const auto& perm : enumerate_shuffles(block_sizes))
    r.add(koszul_permute(x, perm.inverse(), kind == ShufflerKind::Skew));
  return r;
}

/// The output-side (merging) shuffler: the same signed sum with each
/// block-increasing sigma acting from the left (input slot p lands in slot
/// sigma(p)). This transpose reading is the one that restricts to
/// Sym x Sym -> Sym and Lambda x Lambda -> Lambda.
inline GradedElement apply_shuffler_merge(ShufflerKind kind,
                                          const std::vector<int>& block_sizes,
                                          const GradedElement& x) {
  bool empty = false;
  detail::check_shuffler_blocks(block_sizes, x.shape().size(), empty);
  GradedElement r(x.shape());
  if (empty) return r;
  for (const auto& perm : enumerate_shuffles(block_sizes))
    r.add(koszul_permute(x, perm, kind == ShufflerKind::Skew));
  return r;
}

/// Block swap s_{A,B}: A x B -> B x A with the Koszul sign, where A is the
/// leading `split` factors.
inline GradedElement block_swap(const GradedElement& x, std::size_t split) {
  std::size_t n = x.shape().size();
  Permutation p;
  p.images.resize(n);
  for (std::size_t i = 0; i < split; ++i)
    p.images[i] = static_cast<std::uint32_t>(i + (n - split));
  for (std::size_t i = split; i < n; ++i)
    p.images[i] = static_cast<std::uint32_t>(i - split);
  return koszul_permute(x, p, false);
}

/// Input-side shuffler acting only on slots [offset, offset + sum(blocks)),
/// identity elsewhere; the Koszul bookkeeping still sees the whole tensor.
inline GradedElement apply_shuffler_slots(ShufflerKind kind,
                                          const std::vector<int>& block_sizes,
                                          const GradedElement& x,
                                          std::size_t offset) {
  GradedElement r(x.shape());
  std::size_t n = x.shape().size();
  for (const auto& local : enumerate_shuffles(block_sizes)) {
    Permutation inv = local.inverse();
    Permutation p = Permutation::identity(n);
    for (std::size_t t = 0; t < inv.size(); ++t)
      p.images[offset + t] =
          static_cast<std::uint32_t>(offset + inv.images[t]);
    r.add(koszul_permute(x, p, kind == ShufflerKind::Skew));
  }
  return r;
}

/// Block swap of (left, right) adjacent runs starting at `offset`.
inline GradedElement block_swap_slots(const GradedElement& x,
                                      std::size_t offset, std::size_t left,
                                      std::size_t right) {
  std::size_t n = x.shape().size();
  Permutation p = Permutation::identity(n);
  for (std::size_t i = 0; i < left; ++i)
    p.images[offset + i] = static_cast<std::uint32_t>(offset + i + right);
  for (std::size_t i = 0; i < right; ++i)
    p.images[offset + left + i] = static_cast<std::uint32_t>(offset + i);
  return koszul_permute(x, p, false);
}

}  // namespace koszul
