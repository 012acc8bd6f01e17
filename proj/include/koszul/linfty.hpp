#pragma once

#include "koszul/multimap.hpp"

namespace koszul {

/// Input-side shuffle expansion of a key: the sigma-term carries label
/// sigma(m) in slot m, so a trailing block of the result feeds an inner map
/// exactly as the expanded structure formulas consume them. Shared by every
/// signed shuffle sum below.
struct ShuffleTerm {
  TensorKey labels;
  int sign;
};

inline std::vector<ShuffleTerm> shuffle_terms(const GradedSpace& g,
                                              const TensorKey& labels,
                                              const std::vector<int>& blocks,
                                              bool signed_sum) {
  std::vector<ShuffleTerm> out;
  std::vector<int> degs(labels.size());
  for (std::size_t p = 0; p < labels.size(); ++p)
    degs[p] = g.degree(labels[p]);
  for (const auto& perm : enumerate_shuffles(blocks)) {
    Permutation inv = perm.inverse();
    ShuffleTerm t;
    t.labels.resize(labels.size());
    for (std::size_t m = 0; m < labels.size(); ++m)
      t.labels[m] = labels[perm.images[m]];
    t.sign = koszul_sign(inv, degs);
    if (signed_sum) t.sign *= signature(inv);
    out.push_back(std::move(t));
  }
  return out;
}

/// A homotopy Lie algebra presented by structure maps: bracket arity i has
/// operator degree 2 - i. Components absent from the table are zero; all
/// reported results are exact for arities up to `arity_cap`.
struct LInfinityAlgebra {
  SpaceRef space;
  std::map<int, SkewMultiMap> brackets;
  int arity_cap = 4;

  const SkewMultiMap* bracket(int i) const {
    auto it = brackets.find(i);
    return it == brackets.end() ? nullptr : &it->second;
  }

  int max_bracket_arity() const {
    return brackets.empty() ? 0 : brackets.rbegin()->first;
  }

  void set_bracket(SkewMultiMap b) {
    if (b.module_shape().size() != 0 || b.target_shape().size() != 1 ||
        b.target_shape()[0].get() != space.get())
      throw std::invalid_argument("bracket must map a power of g into g");
    if (b.degree() != 2 - b.garity())
      throw std::invalid_argument("bracket arity " +
                                  std::to_string(b.garity()) +
                                  " must have operator degree " +
                                  std::to_string(2 - b.garity()));
    brackets[b.garity()] = std::move(b);
  }

  /// pi_1^i = (-1)^{i-1} l^i; zero map when the bracket is absent.
  SkewMultiMap pi1(int i) const {
    const SkewMultiMap* b = bracket(i);
    if (!b)
      return SkewMultiMap(space, i, Shape{}, Shape{space}, 2 - i);
    return b->scaled(Rational(parity_sign(i - 1)));
  }

  /// Evaluates l^i on a raw tuple; zero when the bracket is absent.
  GradedElement eval_bracket(int i, const TensorKey& key) const {
    const SkewMultiMap* b = bracket(i);
    if (!b) return GradedElement(Shape{space});
    return b->eval_key(key);
  }
};

/// Generalised Jacobi summand sum at total arity i, evaluated on one basis
/// key: sum over j~ + k = i of (-1)^{j~} l^j (l^k x 1_{j~}) Sigma_{k,j~}.
inline GradedElement jacobi_sum(const LInfinityAlgebra& alg, int arity,
                                const TensorKey& key) {
  GradedElement acc(Shape{alg.space});
  for (int k = 1; k <= arity; ++k) {
    int jt = arity - k;  // j~ = j - 1
    int j = jt + 1;
    const SkewMultiMap* lj = alg.bracket(j);
    const SkewMultiMap* lk = alg.bracket(k);
    if (!lj || !lk) continue;
    int outer_sign = parity_sign(jt);
    for (const auto& st : shuffle_terms(*alg.space, key, {k, jt}, true)) {
      TensorKey inner(st.labels.begin(), st.labels.begin() + k);
      GradedElement mid = lk->eval_key(inner);
      for (const auto& [mk, mc] : mid.terms()) {
        TensorKey outer;
        outer.reserve(static_cast<std::size_t>(j));
        outer.push_back(mk[0]);
        outer.insert(outer.end(), st.labels.begin() + k, st.labels.end());
        acc.add(lj->eval_key(outer), mc * (st.sign * outer_sign));
      }
    }
  }
  return acc;
}

struct ResidualWitness {
  int arity = 0;
  TensorKey key;
  GradedElement residual;
};

struct JacobiReport {
  bool pass = true;
  int arity_cap = 0;
  std::vector<ResidualWitness> failures;
  std::vector<int> degree_forced_zero;  // arities <= cap where l^i must vanish
  bool complete_above_cap = false;      // brackets themselves end below cap
};

/// Evaluates the generalised Jacobi identity on every canonical basis key of
/// Lambda^i g for i <= cap.
inline JacobiReport check_jacobi(const LInfinityAlgebra& alg) {
  JacobiReport rep;
  rep.arity_cap = alg.arity_cap;
  for (int i = 1; i <= alg.arity_cap; ++i) {
    bool any_target = false;
    for (const auto& key : canonical_skew_keys(*alg.space, i)) {
      int out_deg = key_degree(power(alg.space, i), key) + 2 - i;
      if (out_deg >= alg.space->min_degree() &&
          out_deg <= alg.space->max_degree())
        any_target = true;
      GradedElement r = jacobi_sum(alg, i, key);
      if (!r.is_zero()) {
        rep.pass = false;
        rep.failures.push_back({i, key, r});
      }
    }
    if (!any_target) rep.degree_forced_zero.push_back(i);
  }
  rep.complete_above_cap = alg.max_bracket_arity() * 2 - 1 <= alg.arity_cap;
  return rep;
}

struct LowArityReport {
  bool differential_squares_to_zero = true;  // l1 l1 = 0
  bool bracket_is_cochain_map = true;        // arity-2 relation
  bool jacobi_up_to_homotopy = true;         // arity-3 relation
  std::vector<ResidualWitness> failures;
};

/// The three named low-arity relations, reported individually.
inline LowArityReport low_arity_report(const LInfinityAlgebra& alg) {
  LowArityReport rep;
  for (int i = 1; i <= 3; ++i) {
    bool ok = true;
    for (const auto& key : canonical_skew_keys(*alg.space, i)) {
      GradedElement r = jacobi_sum(alg, i, key);
      if (!r.is_zero()) {
        ok = false;
        rep.failures.push_back({i, key, r});
      }
    }
    if (i == 1) rep.differential_squares_to_zero = ok;
    if (i == 2) rep.bracket_is_cochain_map = ok;
    if (i == 3) rep.jacobi_up_to_homotopy = ok;
  }
  return rep;
}

}  // namespace koszul
