#pragma once

#include <random>

#include "koszul/fixtures.hpp"
#include "koszul/representation.hpp"

namespace koszul {

/// Instance-generator knobs; every run records these plus the seed.
struct GenConfig {
  std::uint64_t seed = 1;
  int max_dim = 3;
  int min_degree = -2;
  int max_degree = 2;
  int arity_cap = 4;
  int max_terms_per_component = 3;
};

class InstanceGen {
 public:
  explicit InstanceGen(GenConfig cfg) : cfg_(cfg), rng_(cfg.seed) {}

  const GenConfig& config() const { return cfg_; }

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  Rational rational() {
    int num = uniform(-3, 3);
    if (num == 0) num = 1;
    int den = uniform(1, 2);
    return Rational(num, den);
  }

  SpaceRef random_space(const std::string& prefix) {
    int dim = uniform(1, cfg_.max_dim);
    std::vector<BasisElement> basis;
    for (int i = 0; i < dim; ++i)
      basis.push_back({prefix + std::to_string(counter_++) + "_" +
                           std::to_string(i),
                       uniform(cfg_.min_degree, cfg_.max_degree)});
    return make_space(prefix + std::to_string(counter_++), std::move(basis));
  }

  /// Degree-preserving unitriangular change of basis.
  std::vector<std::vector<Rational>> random_basis_change(const SpaceRef& v) {
    std::size_t n = v->dim();
    std::vector<std::vector<Rational>> t(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) t[i][i] = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (v->degree(i) == v->degree(j) && uniform(0, 2) == 0)
          t[j][i] = rational();  // column i picks up basis vector j
    return t;
  }

  /// Transport of the structure maps along x -> T x.
  LInfinityAlgebra conjugate(const LInfinityAlgebra& alg,
                             const std::vector<std::vector<Rational>>& t) {
    const SpaceRef& g = alg.space;
    auto inv = invert_matrix(t);
    auto apply = [&](const std::vector<std::vector<Rational>>& m,
                     const GradedElement& x) {
      GradedElement out(Shape{g});
      for (const auto& [k, c] : x.terms())
        for (std::uint32_t r = 0; r < g->dim(); ++r)
          if (m[r][k[0]] != 0) out.add({r}, c * m[r][k[0]]);
      return out;
    };
    LInfinityAlgebra res{g, {}, alg.arity_cap};
    for (const auto& [i, li] : alg.brackets) {
      SkewMultiMap m(g, i, Shape{}, Shape{g}, 2 - i);
      for (const auto& key : canonical_skew_keys(*g, i)) {
        // l'(x_1,...,x_i) = T l(T^{-1} x_1, ..., T^{-1} x_i), expanded
        // multilinearly over the inverse images of the key.
        GradedElement acc(Shape{g});
        std::vector<GradedElement> cols;
        for (auto kk : key)
          cols.push_back(apply(inv, GradedElement::basis(Shape{g}, {kk})));
        std::vector<std::pair<TensorKey, Rational>> expanded{{TensorKey{}, 1}};
        for (const auto& col : cols) {
          std::vector<std::pair<TensorKey, Rational>> next;
          for (const auto& [pk, pc] : expanded)
            for (const auto& [ck, cc] : col.terms()) {
              TensorKey nk = pk;
              nk.push_back(ck[0]);
              next.emplace_back(std::move(nk), pc * cc);
            }
          expanded = std::move(next);
        }
        for (const auto& [tk, tc] : expanded)
          acc.add(apply(t, li.eval_key(tk)), tc);
        if (!acc.is_zero()) m.add(key, acc);
      }
      if (!m.is_zero()) res.set_bracket(std::move(m));
    }
    return res;
  }

  LInfinityAlgebra random_algebra() {
    int pick = uniform(0, 4);
    LInfinityAlgebra alg;
    switch (pick) {
      case 0:
        alg = fixtures::abelian(uniform(1, cfg_.max_dim), cfg_.arity_cap);
        break;
      case 1: {
        // Abelian space with a square-zero differential from a disjoint
        // matching of degree-adjacent basis pairs.
        SpaceRef v = random_space("n");
        alg = LInfinityAlgebra{v, {}, cfg_.arity_cap};
        SkewMultiMap l1(v, 1, Shape{}, Shape{v}, 1);
        std::vector<char> used(v->dim(), 0);
        bool any = false;
        for (std::uint32_t a = 0; a < v->dim(); ++a) {
          if (used[a]) continue;
          for (std::uint32_t b = 0; b < v->dim(); ++b) {
            if (a == b || used[b] || used[a]) continue;
            if (v->degree(b) == v->degree(a) + 1 && uniform(0, 1) == 0) {
              l1.add({a}, GradedElement::basis(Shape{v}, {b}, rational()));
              used[a] = used[b] = 1;
              any = true;
            }
          }
        }
        if (any) alg.set_bracket(std::move(l1));
        break;
      }
      case 2:
        alg = fixtures::sl2(cfg_.arity_cap);
        break;
      case 3:
        alg = fixtures::dgla(cfg_.arity_cap);
        break;
      default:
        alg = fixtures::string_lie2(cfg_.arity_cap);
        break;
    }
    if (!alg.brackets.empty() && uniform(0, 1) == 0)
      alg = conjugate(alg, random_basis_change(alg.space));
    return alg;
  }

  /// A representation that genuinely satisfies the action property: the
  /// trivial or adjoint fixtures, a tensor square, or a complex with a
  /// square-zero differential and no higher action.
  Representation random_representation(const LInfinityAlgebra& alg) {
    int pick = uniform(0, 3);
    if (pick == 0) return trivial_rep(alg);
    if (pick == 1) return adjoint_rep(alg);
    if (pick == 2 && alg.space->dim() <= 3) {
      Representation adj = adjoint_rep(alg);
      return tensor_rep(adj, adj);
    }
    SpaceRef v = random_space("v");
    Intertwiner rho(alg.space, Shape{v}, Shape{v}, 1, 1);
    SkewMultiMap c = rho.make_component(1);
    std::vector<char> used(v->dim(), 0);
    for (std::uint32_t a = 0; a < v->dim(); ++a) {
      if (used[a]) continue;
      for (std::uint32_t b = 0; b < v->dim(); ++b) {
        if (a == b || used[b] || used[a]) continue;
        if (v->degree(b) == v->degree(a) + 1 && uniform(0, 1) == 0) {
          c.add({a}, GradedElement::basis(Shape{v}, {b}, rational()));
          used[a] = used[b] = 1;
        }
      }
    }
    rho.set_component(1, c);
    return {Shape{v}, std::move(rho), false};
  }

  /// An arbitrary intertwiner: any family of skew maps with consistent
  /// degrees is valid.
  Intertwiner random_intertwiner(const SpaceRef& g, const Shape& src,
                                 const Shape& tgt, int degree, int max_comp) {
    Intertwiner f(g, src, tgt, degree, max_comp);
    for (int i = 1; i <= max_comp; ++i) {
      SkewMultiMap c = f.make_component(i);
      auto keys = canonical_source_keys(c);
      if (keys.empty()) continue;
      auto tkeys = all_keys(tgt);
      int quota = uniform(0, cfg_.max_terms_per_component);
      for (int q = 0; q < quota; ++q) {
        const TensorKey& in = keys[static_cast<std::size_t>(
            uniform(0, static_cast<int>(keys.size()) - 1))];
        int want = c.input_degree(in) + c.degree();
        std::vector<const TensorKey*> fits;
        for (const auto& tk : tkeys)
          if (key_degree(tgt, tk) == want) fits.push_back(&tk);
        if (fits.empty()) continue;
        const TensorKey* out = fits[static_cast<std::size_t>(
            uniform(0, static_cast<int>(fits.size()) - 1))];
        GradedElement v = GradedElement::basis(tgt, *out, rational());
        // Keys whose skew part degenerates cannot carry data.
        NormalizedKey nf =
            skew_normalize(*g, TensorKey(in.begin(), in.begin() + i - 1));
        if (nf.zero) continue;
        c.add(in, v);
      }
      f.set_component(i, c);
    }
    return f;
  }

  /// An arbitrary degree-1 action candidate (usually not a representation).
  Intertwiner random_action_candidate(const LInfinityAlgebra& alg,
                                      const Shape& space, int max_comp) {
    return random_intertwiner(alg.space, space, space, 1, max_comp);
  }

 private:
  GenConfig cfg_;
  std::mt19937_64 rng_;
  int counter_ = 0;
};

}  // namespace koszul
