#pragma once

#include "koszul/linfty.hpp"

namespace koszul {

/// A polyvector-type map Lambda^j g -> (Sym_pm^w g)[d], stored skew on the
/// source; values are honest (skew-)symmetric tensors in the w-th tensor
/// power of g.
struct PolyMap {
  int weight = 0;
  SkewMultiMap map;

  PolyMap() = default;
  PolyMap(int w, SkewMultiMap m) : weight(w), map(std::move(m)) {
    if (map.module_shape().size() != 0)
      throw std::invalid_argument("polymap must not carry a module slot");
    if (static_cast<int>(map.target_shape().size()) != w)
      throw std::invalid_argument("polymap target must be the weight power");
  }

  static PolyMap zero(const SpaceRef& g, int arity, int weight, int degree) {
    return PolyMap(weight,
                   SkewMultiMap(g, arity, Shape{}, power(g, weight), degree));
  }

  int arity() const { return map.garity(); }
  int degree() const { return map.degree(); }
  const SpaceRef& algebra_space() const { return map.algebra_space(); }
  bool is_zero() const { return map.is_zero(); }
};

inline PolyMap pi1_polymap(const LInfinityAlgebra& alg, int i) {
  return PolyMap(1, alg.pi1(i));
}

/// Bullet product of polyvector maps for the n-shifted sign rule:
///   P o Q = (-1)^{(|P|+j~) q~ n + |P| k~}
///           Sigma^pm_{p,q~} (P x 1_{q~}) (1_{j~} x Q) Sigma_{j~,k}.
/// Result: arity j~+k, weight p+q~, degree |P|+|Q|. Zero when j = 0 or
/// q = 0 (a -1 block collapses the signed sums).
inline PolyMap bullet(const PolyMap& P, const PolyMap& Q, int n) {
  const SpaceRef& g = P.algebra_space();
  if (g.get() != Q.algebra_space().get())
    throw std::invalid_argument("bullet over different algebras");
  int j = P.arity(), k = Q.arity();
  int p = P.weight, q = Q.weight;
  int jt = j - 1, kt = k - 1, qt = q - 1;
  int arity = jt + k;
  int weight = p + qt;
  int degree = P.degree() + Q.degree();
  PolyMap R = PolyMap::zero(g, arity, weight, degree);
  if (j == 0 || q == 0) return R;
  long long s0e = static_cast<long long>(P.degree() + jt) * qt * n +
                  static_cast<long long>(P.degree()) * kt;
  int s0 = parity_sign(s0e);
  ShufflerKind out_kind = (n % 2 == 0) ? ShufflerKind::Sym : ShufflerKind::Skew;
  Shape tshape = power(g, weight);
  for (const auto& key : canonical_skew_keys(*g, arity)) {
    GradedElement acc(tshape);
    for (const auto& st : shuffle_terms(*g, key, {jt, k}, true)) {
      TensorKey left(st.labels.begin(), st.labels.begin() + jt);
      TensorKey right(st.labels.begin() + jt, st.labels.end());
      int ldeg = 0;
      for (auto l : left) ldeg += g->degree(l);
      // Interchange: Q slides past the untouched left block.
      int s1 = parity_sign(static_cast<long long>(Q.degree()) * ldeg);
      GradedElement qv = Q.map.eval_key(right);
      for (const auto& [qk, qc] : qv.terms()) {
        TensorKey pin = left;
        pin.push_back(qk[0]);
        GradedElement pv = P.map.eval_key(pin);
        for (const auto& [pk, pc] : pv.terms()) {
          TensorKey out = pk;
          out.insert(out.end(), qk.begin() + 1, qk.end());
          acc.add(std::move(out), pc * qc * (st.sign * s1));
        }
      }
    }
    if (acc.is_zero()) continue;
    GradedElement sym = apply_shuffler_merge(out_kind, {p, qt}, acc);
    R.map.add(key, sym.scaled(Rational(s0)));
  }
  return R;
}

/// Schouten-Nijenhuis bracket as the signed commutator of the bullet product:
///   {P,Q} = P o Q - (-1)^{(|P|+p~n+j~)(|Q|+q~n+k~)} Q o P.
inline PolyMap schouten(const PolyMap& P, const PolyMap& Q, int n) {
  PolyMap pq = bullet(P, Q, n);
  PolyMap qp = bullet(Q, P, n);
  long long e = static_cast<long long>(P.degree() + (P.weight - 1) * n +
                                       P.arity() - 1) *
                (Q.degree() + (Q.weight - 1) * n + Q.arity() - 1);
  pq.map.add_map(qp.map, Rational(-parity_sign(e)));
  return pq;
}

}  // namespace koszul
