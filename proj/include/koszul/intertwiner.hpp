#pragma once

#include "koszul/linfty.hpp"

namespace koszul {

/// Hard ceiling on intertwiner component indices; composites are computed
/// exactly to their natural extent, which stays tiny at desk scale.
inline constexpr int kMaxExtent = 64;

/// An arity-indexed family of skew multilinear maps
///   f^i : g^{x(i-1)} x U -> V[ deg - (i-1) ],   i >= 1,
/// skew in the g slots with the module slot pinned last. Components above
/// `extent` are genuinely zero, so every equality below is exact.
class Intertwiner {
 public:
  Intertwiner() = default;
  Intertwiner(SpaceRef g, Shape source, Shape target, int degree, int extent)
      : g_(std::move(g)),
        source_(std::move(source)),
        target_(std::move(target)),
        degree_(degree),
        extent_(extent) {
    if (extent_ > kMaxExtent)
      throw std::invalid_argument("intertwiner extent exceeds sanity bound");
  }

  const SpaceRef& algebra_space() const { return g_; }
  const Shape& source() const { return source_; }
  const Shape& target() const { return target_; }
  int degree() const { return degree_; }
  int extent() const { return extent_; }

  const SkewMultiMap* component(int i) const {
    auto it = comps_.find(i);
    return it == comps_.end() ? nullptr : &it->second;
  }

  SkewMultiMap make_component(int i) const {
    return SkewMultiMap(g_, i - 1, source_, target_, degree_ - (i - 1));
  }

  void set_component(int i, SkewMultiMap m) {
    if (i < 1) throw std::invalid_argument("component index must be >= 1");
    if (m.garity() != i - 1 || !same_shape(m.module_shape(), source_) ||
        !same_shape(m.target_shape(), target_) ||
        m.degree() != degree_ - (i - 1))
      throw std::invalid_argument("component profile mismatch");
    if (m.is_zero()) {
      comps_.erase(i);
      return;
    }
    if (i > extent_) extent_ = i;
    comps_.insert_or_assign(i, std::move(m));
  }

  bool is_zero() const {
    for (const auto& [i, m] : comps_)
      if (!m.is_zero()) return false;
    return true;
  }

  int max_nonzero_component() const {
    int m = 0;
    for (const auto& [i, c] : comps_)
      if (!c.is_zero()) m = i;
    return m;
  }

  void add(const Intertwiner& other, const Rational& scale = Rational(1)) {
    if (!same_shape(source_, other.source_) ||
        !same_shape(target_, other.target_) || degree_ != other.degree_)
      throw std::invalid_argument("intertwiner profile mismatch in add");
    extent_ = std::max(extent_, other.extent_);
    for (const auto& [i, m] : other.comps_) {
      auto it = comps_.find(i);
      if (it == comps_.end()) {
        SkewMultiMap s = m.scaled(scale);
        if (!s.is_zero()) comps_.emplace(i, std::move(s));
      } else {
        it->second.add_map(m, scale);
        if (it->second.is_zero()) comps_.erase(it);
      }
    }
  }

  Intertwiner scaled(const Rational& c) const {
    Intertwiner r(g_, source_, target_, degree_, extent_);
    if (c == 0) return r;
    for (const auto& [i, m] : comps_) r.comps_.emplace(i, m.scaled(c));
    return r;
  }

  Intertwiner operator+(const Intertwiner& o) const {
    Intertwiner r = *this;
    r.add(o);
    return r;
  }
  Intertwiner operator-(const Intertwiner& o) const {
    Intertwiner r = *this;
    r.add(o, Rational(-1));
    return r;
  }

  bool operator==(const Intertwiner& o) const {
    if (!same_shape(source_, o.source_) || !same_shape(target_, o.target_) ||
        degree_ != o.degree_)
      return false;
    int hi = std::max(extent_, o.extent_);
    for (int i = 1; i <= hi; ++i) {
      const SkewMultiMap* a = component(i);
      const SkewMultiMap* b = o.component(i);
      bool az = !a || a->is_zero();
      bool bz = !b || b->is_zero();
      if (az != bz) return false;
      if (!az && !(*a == *b)) return false;
    }
    return true;
  }

  /// First nonzero component difference against `o`, for residual reports.
  std::vector<ResidualWitness> difference_witnesses(const Intertwiner& o,
                                                    std::size_t limit = 4) const {
    std::vector<ResidualWitness> out;
    Intertwiner d = *this;
    d.add(o, Rational(-1));
    for (const auto& [i, m] : d.comps_) {
      for (const auto& [k, v] : m.entries()) {
        if (out.size() >= limit) return out;
        out.push_back({i, k, v});
      }
    }
    return out;
  }

 private:
  SpaceRef g_;
  Shape source_, target_;
  int degree_ = 0;
  int extent_ = 0;
  std::map<int, SkewMultiMap> comps_;
};

inline Intertwiner zero_intertwiner(const SpaceRef& g, Shape src, Shape tgt,
                                    int degree) {
  return Intertwiner(g, std::move(src), std::move(tgt), degree, 0);
}

inline Intertwiner identity_intertwiner(const SpaceRef& g, const Shape& u) {
  Intertwiner f(g, u, u, 0, 1);
  SkewMultiMap c = f.make_component(1);
  for (const auto& k : all_keys(u))
    c.add(k, GradedElement::basis(u, k));
  f.set_component(1, c);
  return f;
}

/// gamma_{U,V}: the single-component Koszul swap U x V -> V x U.
inline Intertwiner gamma_intertwiner(const SpaceRef& g, const Shape& u,
                                     const Shape& v) {
  Intertwiner f(g, concat(u, v), concat(v, u), 0, 1);
  SkewMultiMap c = f.make_component(1);
  for (const auto& k : all_keys(concat(u, v))) {
    GradedElement swapped =
        block_swap(GradedElement::basis(concat(u, v), k), u.size());
    c.add(k, swapped);
  }
  f.set_component(1, c);
  return f;
}

/// ell_U: component i is l^{i-1} x 1_U into g x U, of total degree 2.
inline Intertwiner ell_of(const LInfinityAlgebra& alg, const Shape& u) {
  const SpaceRef& g = alg.space;
  int ext = alg.max_bracket_arity() + 1;
  Intertwiner f(g, u, concat(Shape{g}, u), 2, std::max(ext, 0));
  for (int i = 2; i <= ext; ++i) {
    const SkewMultiMap* l = alg.bracket(i - 1);
    if (!l) continue;
    SkewMultiMap c = f.make_component(i);
    for (const auto& gk : canonical_skew_keys(*g, i - 1)) {
      GradedElement lv = l->eval_key(gk);
      if (lv.is_zero()) continue;
      for (const auto& uk : all_keys(u)) {
        GradedElement out(concat(Shape{g}, u));
        for (const auto& [lk, lc] : lv.terms()) {
          TensorKey ok;
          ok.push_back(lk[0]);
          ok.insert(ok.end(), uk.begin(), uk.end());
          out.add(std::move(ok), lc);
        }
        TensorKey key = gk;
        key.insert(key.end(), uk.begin(), uk.end());
        c.add(key, out);
      }
    }
    f.set_component(i, c);
  }
  return f;
}

/// varrho_f: component m evaluates to (-1)^m f^{m+1} with the source g slot
/// folded into the skew arguments of f.
inline Intertwiner varrho_of(const Intertwiner& f) {
  const SpaceRef& g = f.algebra_space();
  Shape src = concat(Shape{g}, f.source());
  int ext = std::max(f.extent() - 1, 0);
  Intertwiner r(g, src, f.target(), f.degree() - 1, ext);
  for (int m = 1; m <= ext; ++m) {
    const SkewMultiMap* fm1 = f.component(m + 1);
    if (!fm1) continue;
    SkewMultiMap c = r.make_component(m);
    int sign = parity_sign(m);
    for (const auto& key : canonical_source_keys(c)) {
      // Key layout: (m-1) outer g labels, one source g label, module part.
      GradedElement v = fm1->eval_key(key);
      if (!v.is_zero()) c.add(key, v.scaled(Rational(sign)));
    }
    r.set_component(m, c);
  }
  return r;
}

/// Juxtaposition (g after f):
///   (gf)^i = sum_{j~+k=i} (-1)^{(|g|-j~)k~} g^j [1_{j~} x f^k]
///            [Sigma_{j~,k~} x 1_U].
inline Intertwiner juxtapose(const Intertwiner& gmap, const Intertwiner& fmap) {
  if (!same_shape(gmap.source(), fmap.target()))
    throw std::invalid_argument("juxtapose: target/source mismatch");
  const SpaceRef& g = fmap.algebra_space();
  int ext = std::max(0, std::min(kMaxExtent,
                                 gmap.extent() + fmap.extent() - 1));
  Intertwiner r(g, fmap.source(), gmap.target(),
                gmap.degree() + fmap.degree(), ext);
  std::size_t msize = fmap.source().size();
  for (int i = 1; i <= ext; ++i) {
    SkewMultiMap c = r.make_component(i);
    for (const auto& key : canonical_source_keys(c)) {
      TensorKey glabels(key.begin(), key.end() - msize);
      TensorKey ukey(key.end() - msize, key.end());
      GradedElement acc(gmap.target());
      for (int k = 1; k <= i; ++k) {
        int jt = i - k;  // j~ = j - 1
        const SkewMultiMap* gj = gmap.component(jt + 1);
        const SkewMultiMap* fk = fmap.component(k);
        if (!gj || !fk) continue;
        int pre =
            parity_sign(static_cast<long long>(gmap.degree() - jt) * (k - 1));
        int fdeg_op = fmap.degree() - (k - 1);
        for (const auto& st : shuffle_terms(*g, glabels, {jt, k - 1}, true)) {
          int ldeg = 0;
          for (int t = 0; t < jt; ++t) ldeg += g->degree(st.labels[t]);
          int inter = parity_sign(static_cast<long long>(fdeg_op) * ldeg);
          TensorKey fin(st.labels.begin() + jt, st.labels.end());
          fin.insert(fin.end(), ukey.begin(), ukey.end());
          GradedElement mid = fk->eval_key(fin);
          for (const auto& [mk, mc] : mid.terms()) {
            TensorKey gin(st.labels.begin(), st.labels.begin() + jt);
            gin.insert(gin.end(), mk.begin(), mk.end());
            acc.add(gj->eval_key(gin), mc * (pre * st.sign * inter));
          }
        }
      }
      if (!acc.is_zero()) c.add(key, acc);
    }
    r.set_component(i, c);
  }
  return r;
}

/// Odot product:
///   (f . g)^i = sum_{j~+k=i} (-1)^{(|f|-j~)k~} [f^j x g^k]
///               [1_{j~} x s_{k~,U} x 1_V] [Sigma_{j~,k~} x 1_{UV}].
inline Intertwiner odot(const Intertwiner& fmap, const Intertwiner& gmap) {
  if (fmap.algebra_space().get() != gmap.algebra_space().get())
    throw std::invalid_argument("odot over different algebras");
  const SpaceRef& g = fmap.algebra_space();
  Shape src = concat(fmap.source(), gmap.source());
  Shape tgt = concat(fmap.target(), gmap.target());
  int ext = std::max(0, std::min(kMaxExtent,
                                 fmap.extent() + gmap.extent() - 1));
  Intertwiner r(g, src, tgt, fmap.degree() + gmap.degree(), ext);
  std::size_t usize = fmap.source().size();
  std::size_t vsize = gmap.source().size();
  for (int i = 1; i <= ext; ++i) {
    SkewMultiMap c = r.make_component(i);
    for (const auto& key : canonical_source_keys(c)) {
      std::size_t ng = key.size() - usize - vsize;
      TensorKey glabels(key.begin(), key.begin() + ng);
      TensorKey ukey(key.begin() + ng, key.begin() + ng + usize);
      TensorKey vkey(key.begin() + ng + usize, key.end());
      int udeg = 0;
      for (std::size_t t = 0; t < usize; ++t)
        udeg += fmap.source()[t]->degree(ukey[t]);
      GradedElement acc(tgt);
      for (int k = 1; k <= i; ++k) {
        int jt = i - k;
        const SkewMultiMap* fj = fmap.component(jt + 1);
        const SkewMultiMap* gk = gmap.component(k);
        if (!fj || !gk) continue;
        int pre =
            parity_sign(static_cast<long long>(fmap.degree() - jt) * (k - 1));
        int gdeg_op = gmap.degree() - (k - 1);
        for (const auto& st : shuffle_terms(*g, glabels, {jt, k - 1}, true)) {
          int ldeg = 0, rdeg = 0;
          for (int t = 0; t < jt; ++t) ldeg += g->degree(st.labels[t]);
          for (std::size_t t = jt; t < st.labels.size(); ++t)
            rdeg += g->degree(st.labels[t]);
          // s_{k~,U}: the module block of f slides left past the k~ labels.
          int sswap = ((rdeg & 1) && (udeg & 1)) ? -1 : 1;
          // Interchange: g^k past f^j's inputs (left labels and u).
          int inter =
              parity_sign(static_cast<long long>(gdeg_op) * (ldeg + udeg));
          TensorKey finK(st.labels.begin(), st.labels.begin() + jt);
          finK.insert(finK.end(), ukey.begin(), ukey.end());
          GradedElement fv = fj->eval_key(finK);
          if (fv.is_zero()) continue;
          TensorKey ginK(st.labels.begin() + jt, st.labels.end());
          ginK.insert(ginK.end(), vkey.begin(), vkey.end());
          GradedElement gv = gk->eval_key(ginK);
          if (gv.is_zero()) continue;
          acc.add(tensor(fv, gv),
                  Rational(pre * st.sign * sswap * inter));
        }
      }
      if (!acc.is_zero()) c.add(key, acc);
    }
    r.set_component(i, c);
  }
  return r;
}

/// Hom differential [[rho, f]] = rho_V f - (-1)^{|f|} f rho_U - varrho_f ell_U.
inline Intertwiner hom_differential(const LInfinityAlgebra& alg,
                                    const Intertwiner& rho_u,
                                    const Intertwiner& rho_v,
                                    const Intertwiner& f) {
  Intertwiner r = juxtapose(rho_v, f);
  r.add(juxtapose(f, rho_u), Rational(-parity_sign(f.degree())));
  r.add(juxtapose(varrho_of(f), ell_of(alg, f.source())), Rational(-1));
  return r;
}

struct EquivarianceReport {
  bool equivariant = false;
  Intertwiner residual;
};

inline EquivarianceReport is_equivariant(const LInfinityAlgebra& alg,
                                         const Intertwiner& rho_u,
                                         const Intertwiner& rho_v,
                                         const Intertwiner& f) {
  if (f.degree() != 0)
    throw std::invalid_argument("equivariant maps must have degree 0");
  EquivarianceReport rep;
  rep.residual = hom_differential(alg, rho_u, rho_v, f);
  rep.equivariant = rep.residual.is_zero();
  return rep;
}

}  // namespace koszul
