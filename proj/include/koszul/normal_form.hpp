#pragma once

#include "koszul/element.hpp"

namespace koszul {

struct NormalizedKey {
  TensorKey key;
  int sign = 1;   // accumulated reordering sign
  bool zero = false;
};

namespace detail {

/// Insertion sort on basis indices of a single space, accumulating the
/// reordering sign. `skew` selects eps = sgn * chi, otherwise chi alone.
inline NormalizedKey sort_one_space(const GradedSpace& space, TensorKey key,
                                    bool skew) {
  NormalizedKey out;
  int sign = 1;
  for (std::size_t i = 1; i < key.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && key[j - 1] > key[j]) {
      int da = space.degree(key[j - 1]) & 1;
      int db = space.degree(key[j]) & 1;
      int chi = (da && db) ? -1 : 1;
      sign *= skew ? -chi : chi;
      std::swap(key[j - 1], key[j]);
      --j;
    }
  }
  // Repetition rules: in the skew case a repeated even-degree label forces 0
  // (transposing it costs -1); in the sym case a repeated odd label does.
  for (std::size_t i = 1; i < key.size(); ++i) {
    if (key[i] == key[i - 1]) {
      bool odd = space.degree(key[i]) & 1;
      if ((skew && !odd) || (!skew && odd)) {
        out.zero = true;
        return out;
      }
    }
  }
  out.key = std::move(key);
  out.sign = sign;
  return out;
}

}  // namespace detail

/// Canonical form of a key in a skew power of one space: labels sorted into
/// basis order, sign eps accumulated; zero when a repeated label has even
/// degree.
inline NormalizedKey skew_normalize(const GradedSpace& space, TensorKey key) {
  return detail::sort_one_space(space, std::move(key), /*skew=*/true);
}

/// Canonical form in a symmetric power: sorted with the Koszul sign chi;
/// zero when a repeated label has odd degree.
inline NormalizedKey sym_normalize(const GradedSpace& space, TensorKey key) {
  return detail::sort_one_space(space, std::move(key), /*skew=*/false);
}

/// True when every key of `x` (an element of a tensor power of one space)
/// already carries the symmetry: sigma(x) = x for the Koszul action of every
/// transposition, checked for adjacent transpositions.
inline bool is_symmetric_tensor(const GradedElement& x) {
  std::size_t n = x.shape().size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Permutation p = Permutation::identity(n);
    std::swap(p.images[i], p.images[i + 1]);
    if (!(koszul_permute(x, p, false) == x)) return false;
  }
  return true;
}

/// True when the Koszul action of every adjacent transposition negates x,
/// i.e. sigma(x) = sgn(sigma) x with chi folded into the action.
inline bool is_skew_tensor(const GradedElement& x) {
  std::size_t n = x.shape().size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Permutation p = Permutation::identity(n);
    std::swap(p.images[i], p.images[i + 1]);
    if (!(koszul_permute(x, p, false) == x.scaled(Rational(-1))))
      return false;
  }
  return true;
}

}  // namespace koszul
