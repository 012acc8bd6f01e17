#pragma once

#include "koszul/intertwiner.hpp"

namespace koszul {

/// A graded space with a degree-1 action family rho_V : V ~~> V[1].
struct Representation {
  Shape space;
  Intertwiner action;
  bool verified = false;

  const SpaceRef& algebra_space() const { return action.algebra_space(); }
};

/// The trivial representation on the ground field: empty shape, zero action.
inline Representation trivial_rep(const LInfinityAlgebra& alg) {
  return {Shape{}, zero_intertwiner(alg.space, Shape{}, Shape{}, 1), true};
}

/// The adjoint representation: rho^i = pi_1^i with the last slot as module.
inline Representation adjoint_rep(const LInfinityAlgebra& alg) {
  const SpaceRef& g = alg.space;
  Shape v{g};
  Intertwiner rho(g, v, v, 1, std::max(alg.max_bracket_arity(), 0));
  for (int i = 1; i <= alg.max_bracket_arity(); ++i) {
    const SkewMultiMap* li = alg.bracket(i);
    if (!li) continue;
    SkewMultiMap pi = alg.pi1(i);
    SkewMultiMap c = rho.make_component(i);
    for (const auto& key : canonical_source_keys(c)) {
      GradedElement val = pi.eval_key(key);
      if (!val.is_zero()) c.add(key, val);
    }
    rho.set_component(i, c);
  }
  return {v, std::move(rho), false};
}

/// rho_{U,V} = rho_U . 1_V + 1_U . rho_V on the tensor product.
inline Representation tensor_rep(const Representation& u,
                                 const Representation& v) {
  const SpaceRef& g = u.algebra_space();
  Intertwiner rho = odot(u.action, identity_intertwiner(g, v.space));
  rho.add(odot(identity_intertwiner(g, u.space), v.action));
  return {concat(u.space, v.space), std::move(rho), false};
}

struct RepresentationReport {
  bool pass = false;
  bool routes_agree = true;
  Intertwiner residual;          // juxtaposition route
  Intertwiner residual_allocca;  // expanded structure-map route
  std::string incident;
};

/// The expanded action-property sum at one arity, with the module slot fixed
/// last throughout:
///   sum_{j~+k=i} (-1)^{j~k~} rho^j (1_{j~-1} x pi_1^k x 1_V)(Sigma_{j~-1,k} x 1_V)
///              + (-1)^{jk~}  rho^j (1_{j~} x rho^k)(Sigma_{j~,k~} x 1_V).
inline Intertwiner action_residual_expanded(const LInfinityAlgebra& alg,
                                            const Intertwiner& rho) {
  const SpaceRef& g = alg.space;
  int ext = std::min(kMaxExtent,
                     std::max(2 * rho.extent() - 1,
                              rho.extent() + alg.max_bracket_arity()));
  Intertwiner r(g, rho.source(), rho.target(), 2, std::max(ext, 0));
  std::size_t msize = rho.source().size();
  for (int i = 1; i <= ext; ++i) {
    SkewMultiMap c = r.make_component(i);
    for (const auto& key : canonical_source_keys(c)) {
      TensorKey glabels(key.begin(), key.end() - msize);
      TensorKey ukey(key.end() - msize, key.end());
      GradedElement acc(rho.target());
      for (int k = 1; k <= i; ++k) {
        int jt = i - k;
        const SkewMultiMap* rj = rho.component(jt + 1);
        if (!rj) continue;
        // Structure-map term: pi_1^k lands in the last g slot of rho^j.
        if (alg.bracket(k) != nullptr) {
          SkewMultiMap pik = alg.pi1(k);
          int pre = parity_sign(static_cast<long long>(jt) * (k - 1));
          if (jt >= 1) {
            for (const auto& st :
                 shuffle_terms(*g, glabels, {jt - 1, k}, true)) {
              int ldeg = 0;
              for (int t = 0; t < jt - 1; ++t)
                ldeg += g->degree(st.labels[t]);
              int inter =
                  parity_sign(static_cast<long long>(2 - k) * ldeg);
              TensorKey lin(st.labels.begin() + (jt - 1), st.labels.end());
              GradedElement mid = pik.eval_key(lin);
              for (const auto& [mk, mc] : mid.terms()) {
                TensorKey rin(st.labels.begin(),
                              st.labels.begin() + (jt - 1));
                rin.push_back(mk[0]);
                rin.insert(rin.end(), ukey.begin(), ukey.end());
                acc.add(rj->eval_key(rin),
                        mc * (pre * st.sign * inter));
              }
            }
          }
        }
        // Action-action term: rho^k consumes the trailing labels and module.
        if (const SkewMultiMap* rk = rho.component(k)) {
          int pre = parity_sign(static_cast<long long>(jt + 1) * (k - 1));
          for (const auto& st : shuffle_terms(*g, glabels, {jt, k - 1}, true)) {
            int ldeg = 0;
            for (int t = 0; t < jt; ++t) ldeg += g->degree(st.labels[t]);
            int inter = parity_sign(static_cast<long long>(1 - (k - 1)) * ldeg);
            TensorKey kin(st.labels.begin() + jt, st.labels.end());
            kin.insert(kin.end(), ukey.begin(), ukey.end());
            GradedElement mid = rk->eval_key(kin);
            for (const auto& [mk, mc] : mid.terms()) {
              TensorKey rin(st.labels.begin(), st.labels.begin() + jt);
              rin.insert(rin.end(), mk.begin(), mk.end());
              acc.add(rj->eval_key(rin), mc * (pre * st.sign * inter));
            }
          }
        }
      }
      if (!acc.is_zero()) c.add(key, acc);
    }
    r.set_component(i, c);
  }
  return r;
}

/// Both routes of the representation predicate: rho rho = varrho_rho ell_V by
/// juxtaposition, and the expanded structure-map form. Any disagreement
/// between the two residuals is surfaced as an incident.
inline RepresentationReport is_representation(const LInfinityAlgebra& alg,
                                              const Intertwiner& rho) {
  RepresentationReport rep;
  if (rho.degree() != 1 || !same_shape(rho.source(), rho.target()))
    throw std::invalid_argument("action family must be a degree-1 endo family");
  Intertwiner lhs = juxtapose(rho, rho);
  lhs.add(juxtapose(varrho_of(rho), ell_of(alg, rho.source())), Rational(-1));
  rep.residual = std::move(lhs);
  rep.residual_allocca = action_residual_expanded(alg, rho);
  rep.pass = rep.residual.is_zero();
  rep.routes_agree = rep.residual == rep.residual_allocca;
  if (!rep.routes_agree)
    rep.incident =
        "representation predicate routes disagree; juxtaposition route " +
        std::string(rep.residual.is_zero() ? "vanishes" : "is nonzero") +
        ", expanded route " +
        std::string(rep.residual_allocca.is_zero() ? "vanishes"
                                                   : "is nonzero");
  return rep;
}

inline Representation verified(const LInfinityAlgebra& alg, Representation r) {
  RepresentationReport rep = is_representation(alg, r.action);
  if (!rep.pass || !rep.routes_agree)
    throw std::invalid_argument("action family fails the representation "
                                "predicate");
  r.verified = true;
  return r;
}

}  // namespace koszul
