#pragma once

#include "koszul/representation.hpp"

namespace koszul {

/// Word-length-truncated completed free graded-commutative algebra on the
/// shifted dual generators theta^a (degree 1 - |x_a|), with the differential
/// table populated from the structure constants.
///
/// Monomials are sorted generator-index words; sorting signs follow graded
/// commutativity of the theta degrees, and odd theta generators never repeat.
class CEAlgebra;

using CEMonomial = std::vector<std::uint32_t>;

struct CEMonoNF {
  CEMonomial mono;
  int sign = 1;
  bool zero = false;
};

class CEElement {
 public:
  CEElement() = default;

  const std::map<CEMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(CEMonomial m, Rational c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const CEElement& o, const Rational& s = Rational(1)) {
    for (const auto& [m, c] : o.terms_) add(m, c * s);
  }

  CEElement scaled(const Rational& s) const {
    CEElement r;
    if (s == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
  }

  bool operator==(const CEElement& o) const { return terms_ == o.terms_; }

  /// Restriction to word lengths <= w.
  CEElement truncated(int w) const {
    CEElement r;
    for (const auto& [m, c] : terms_)
      if (static_cast<int>(m.size()) <= w) r.terms_.emplace(m, c);
    return r;
  }

 private:
  std::map<CEMonomial, Rational> terms_;
};

class CEAlgebra {
 public:
  CEAlgebra(const LInfinityAlgebra& alg, int word_cap)
      : g_(alg.space), word_cap_(word_cap) {
    delta_.resize(g_->dim());
    build_delta(alg);
  }

  const SpaceRef& space() const { return g_; }
  int word_cap() const { return word_cap_; }
  int theta_degree(std::uint32_t a) const { return 1 - g_->degree(a); }
  const CEElement& delta_of_generator(std::uint32_t a) const {
    return delta_.at(a);
  }
  std::string theta_label(std::uint32_t a) const {
    return "theta_" + g_->label(a);
  }

  int mono_degree(const CEMonomial& m) const {
    int d = 0;
    for (auto a : m) d += theta_degree(a);
    return d;
  }

  /// Sorts a word into canonical order under graded commutativity.
  CEMonoNF normalize(CEMonomial m) const {
    CEMonoNF nf;
    int sign = 1;
    for (std::size_t i = 1; i < m.size(); ++i) {
      std::size_t j = i;
      while (j > 0 && m[j - 1] > m[j]) {
        if ((theta_degree(m[j - 1]) & 1) && (theta_degree(m[j]) & 1))
          sign = -sign;
        std::swap(m[j - 1], m[j]);
        --j;
      }
    }
    for (std::size_t i = 1; i < m.size(); ++i)
      if (m[i] == m[i - 1] && (theta_degree(m[i]) & 1)) {
        nf.zero = true;
        return nf;
      }
    nf.mono = std::move(m);
    nf.sign = sign;
    return nf;
  }

  /// Graded-commutative product, truncated at the word cap.
  CEElement mul(const CEElement& a, const CEElement& b) const {
    CEElement r;
    for (const auto& [ma, ca] : a.terms())
      for (const auto& [mb, cb] : b.terms()) {
        if (static_cast<int>(ma.size() + mb.size()) > word_cap_) continue;
        CEMonomial m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        CEMonoNF nf = normalize(std::move(m));
        if (nf.zero) continue;
        r.add(std::move(nf.mono), ca * cb * nf.sign);
      }
    return r;
  }

  CEElement unit() const {
    CEElement e;
    e.add(CEMonomial{}, Rational(1));
    return e;
  }

  CEElement generator(std::uint32_t a) const {
    CEElement e;
    e.add(CEMonomial{a}, Rational(1));
    return e;
  }

  /// Leibniz extension of the generator table.
  CEElement delta(const CEElement& e) const {
    CEElement r;
    for (const auto& [m, c] : e.terms()) {
      for (std::size_t pos = 0; pos < m.size(); ++pos) {
        int presign = 1;
        for (std::size_t t = 0; t < pos; ++t)
          if (theta_degree(m[t]) & 1) presign = -presign;
        CEElement left;
        left.add(CEMonomial(m.begin(), m.begin() + pos), 1);
        CEElement right;
        right.add(CEMonomial(m.begin() + pos + 1, m.end()), 1);
        CEElement mid = delta_.at(m[pos]);
        r.add(mul(mul(left, mid), right), c * presign);
      }
    }
    return r;
  }

  /// The canonical augmentation: kill every generator.
  Rational augmentation(const CEElement& e) const {
    auto it = e.terms().find(CEMonomial{});
    return it == e.terms().end() ? Rational(0) : it->second;
  }

 private:
  void build_delta(const LInfinityAlgebra& alg) {
    const SpaceRef& g = alg.space;
    for (int i = 1; i <= alg.max_bracket_arity() && i <= word_cap_; ++i) {
      const SkewMultiMap* li = alg.bracket(i);
      if (!li) continue;
      Rational factorial = 1;
      for (int t = 2; t <= i; ++t) factorial *= t;
      std::vector<TensorKey> tuples = all_keys(power(g, i));
      for (const auto& tup : tuples) {
        GradedElement val = li->eval_key(tup);
        if (val.is_zero()) continue;
        // (-1)^{sum_l |x_{a_l}| (l + |x_{a_{l+1}} ... x_{a_i}|)}
        long long expo = 0;
        for (int l = 1; l <= i; ++l) {
          int dl = g->degree(tup[l - 1]);
          int suffix = 0;
          for (int t = l + 1; t <= i; ++t) suffix += g->degree(tup[t - 1]);
          expo += static_cast<long long>(dl) * (l + suffix);
        }
        int sign = parity_sign(expo);
        CEMonoNF nf = normalize(CEMonomial(tup.begin(), tup.end()));
        if (nf.zero) continue;
        for (const auto& [ok, oc] : val.terms())
          delta_.at(ok[0]).add(nf.mono,
                               oc * sign * nf.sign / factorial);
      }
    }
  }

  SpaceRef g_;
  int word_cap_;
  std::vector<CEElement> delta_;
};

inline int reversal_degree(const std::vector<int>& degrees) {
  int total = 0;
  for (std::size_t l = 0; l < degrees.size(); ++l) {
    int suffix = 0;
    for (std::size_t t = l + 1; t < degrees.size(); ++t) suffix += degrees[t];
    total += degrees[l] * suffix;
  }
  return total;
}

struct CEDeltaSquaredReport {
  bool pass = true;
  std::vector<std::pair<std::uint32_t, CEElement>> failures;
};

inline CEDeltaSquaredReport check_delta_squared(const CEAlgebra& a) {
  CEDeltaSquaredReport rep;
  for (std::uint32_t gen = 0; gen < a.space()->dim(); ++gen) {
    CEElement d2 = a.delta(a.delta_of_generator(gen));
    if (!d2.is_zero()) {
      rep.pass = false;
      rep.failures.emplace_back(gen, d2);
    }
  }
  return rep;
}

/// Element of a completed semi-free CE-module in the free normal form:
/// coefficients (theta words) to the left, module generator key to the right.
class CEModuleElement {
 public:
  using Key = std::pair<CEMonomial, TensorKey>;

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(CEMonomial m, TensorKey v, Rational c) {
    if (c == 0) return;
    Key k{std::move(m), std::move(v)};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(std::move(k), std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const CEModuleElement& o, const Rational& s = Rational(1)) {
    for (const auto& [k, c] : o.terms_) {
      Key kk = k;
      add(std::move(kk.first), std::move(kk.second), c * s);
    }
  }

  CEModuleElement scaled(const Rational& s) const {
    CEModuleElement r;
    if (s == 0) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
  }

  bool operator==(const CEModuleElement& o) const {
    return terms_ == o.terms_;
  }

  CEModuleElement truncated(int w) const {
    CEModuleElement r;
    for (const auto& [k, c] : terms_)
      if (static_cast<int>(k.first.size()) <= w) r.terms_.emplace(k, c);
    return r;
  }

 private:
  std::map<Key, Rational> terms_;
};

/// Completed semi-free CE-module of a representation: free over the CE
/// algebra on the module basis, with d given on generators by the action
/// structure constants.
class CEModule {
 public:
  CEModule(const CEAlgebra& a, const Representation& rep)
      : a_(&a), space_(rep.space) {
    build(rep);
  }

  const CEAlgebra& algebra() const { return *a_; }
  const Shape& generator_space() const { return space_; }
  int generator_degree(const TensorKey& v) const {
    return key_degree(space_, v);
  }

  const CEModuleElement& d_of_generator(const TensorKey& v) const {
    return dtable_.at(v);
  }

  /// Left multiplication by an algebra element, truncated at the cap.
  CEModuleElement mul(const CEElement& a, const CEModuleElement& m) const {
    CEModuleElement r;
    for (const auto& [am, ac] : a.terms())
      for (const auto& [k, c] : m.terms()) {
        if (static_cast<int>(am.size() + k.first.size()) > a_->word_cap())
          continue;
        CEMonomial w = am;
        w.insert(w.end(), k.first.begin(), k.first.end());
        CEMonoNF nf = a_->normalize(std::move(w));
        if (nf.zero) continue;
        r.add(std::move(nf.mono), k.second, ac * c * nf.sign);
      }
    return r;
  }

  /// d(a v) = delta(a) v + (-1)^{|a|} a d(v), extended linearly.
  CEModuleElement d(const CEModuleElement& m) const {
    CEModuleElement r;
    for (const auto& [k, c] : m.terms()) {
      CEElement word;
      word.add(k.first, 1);
      CEElement dw = a_->delta(word);
      for (const auto& [wm, wc] : dw.terms()) r.add(wm, k.second, wc * c);
      int s = parity_sign(a_->mono_degree(k.first));
      CEModuleElement tail = mul(word, dtable_.at(k.second));
      r.add(tail, c * s);
    }
    return r;
  }

  CEModuleElement generator(const TensorKey& v) const {
    CEModuleElement e;
    e.add({}, v, 1);
    return e;
  }

 private:
  void build(const Representation& rep) {
    const SpaceRef& g = a_->space();
    for (const auto& v : all_keys(space_)) {
      CEModuleElement dv;
      for (int i = 1; i <= rep.action.extent(); ++i) {
        const SkewMultiMap* ri = rep.action.component(i);
        if (!ri) continue;
        int it = i - 1;
        if (it > a_->word_cap()) continue;
        Rational factorial = 1;
        for (int t = 2; t <= it; ++t) factorial *= t;
        for (const auto& tup : all_keys(power(g, it))) {
          TensorKey full = tup;
          full.insert(full.end(), v.begin(), v.end());
          GradedElement val = ri->eval_key(full);
          if (val.is_zero()) continue;
          std::vector<int> degs(it);
          for (int t = 0; t < it; ++t) degs[t] = g->degree(tup[t]);
          long long expo = reversal_degree(degs);
          for (int l = 1; l <= it; ++l)
            expo += static_cast<long long>(degs[l - 1]) * (l - 1);
          int sign = parity_sign(expo);
          CEMonoNF nf = a_->normalize(CEMonomial(tup.begin(), tup.end()));
          if (nf.zero) continue;
          for (const auto& [ok, oc] : val.terms())
            dv.add(nf.mono, ok, oc * sign * nf.sign / factorial);
        }
      }
      dtable_.emplace(v, std::move(dv));
    }
  }

  const CEAlgebra* a_;
  Shape space_;
  std::map<TensorKey, CEModuleElement> dtable_;
};

struct CEDSquaredReport {
  bool pass = true;
  std::vector<std::pair<TensorKey, CEModuleElement>> failures;
};

inline CEDSquaredReport check_d_squared(const CEModule& m) {
  CEDSquaredReport rep;
  for (const auto& v : all_keys(m.generator_space())) {
    CEModuleElement d2 = m.d(m.d_of_generator(v));
    if (!d2.is_zero()) {
      rep.pass = false;
      rep.failures.emplace_back(v, d2);
    }
  }
  return rep;
}

/// Base-linear module map determined by its values on generators:
/// F(a v) = (-1)^{|F||a|} a F(v).
struct CEMorphism {
  const CEModule* source = nullptr;
  const CEModule* target = nullptr;
  int degree = 0;
  std::map<TensorKey, CEModuleElement> table;

  CEModuleElement apply(const CEModuleElement& m) const {
    CEModuleElement r;
    for (const auto& [k, c] : m.terms()) {
      int s = (degree & 1) && (source->algebra().mono_degree(k.first) & 1)
                  ? -1
                  : 1;
      CEElement word;
      word.add(k.first, 1);
      r.add(target->mul(word, table.at(k.second)), c * s);
    }
    return r;
  }
};

/// CE^f on generators, from the components of an intertwiner.
inline CEMorphism ce_of_morphism(const Intertwiner& f, const CEModule& src,
                                 const CEModule& tgt) {
  if (!same_shape(f.source(), src.generator_space()) ||
      !same_shape(f.target(), tgt.generator_space()))
    throw std::invalid_argument("ce_of_morphism: module shapes do not match");
  const CEAlgebra& a = src.algebra();
  const SpaceRef& g = a.space();
  CEMorphism m;
  m.source = &src;
  m.target = &tgt;
  m.degree = f.degree();
  for (const auto& u : all_keys(src.generator_space())) {
    CEModuleElement out;
    for (int i = 1; i <= f.extent(); ++i) {
      const SkewMultiMap* fi = f.component(i);
      if (!fi) continue;
      int it = i - 1;
      if (it > a.word_cap()) continue;
      Rational factorial = 1;
      for (int t = 2; t <= it; ++t) factorial *= t;
      for (const auto& tup : all_keys(power(g, it))) {
        TensorKey full = tup;
        full.insert(full.end(), u.begin(), u.end());
        GradedElement val = fi->eval_key(full);
        if (val.is_zero()) continue;
        std::vector<int> degs(it);
        for (int t = 0; t < it; ++t) degs[t] = g->degree(tup[t]);
        long long expo = reversal_degree(degs);
        for (int l = 1; l <= it; ++l)
          expo += static_cast<long long>(degs[l - 1]) * (l + f.degree());
        int sign = parity_sign(expo);
        CEMonoNF nf = a.normalize(CEMonomial(tup.begin(), tup.end()));
        if (nf.zero) continue;
        for (const auto& [ok, oc] : val.terms())
          out.add(nf.mono, ok, oc * sign * nf.sign / factorial);
      }
    }
    m.table.emplace(u, std::move(out));
  }
  return m;
}

struct CESuiteReport {
  bool delta_squared = true;
  bool module_d_squared = true;
  bool functoriality = true;
  bool dg_compatibility = true;
  bool monoidality_differential = true;
  bool monoidality_morphisms = true;
  bool unit_preserved = true;
  bool braiding_preserved = true;
  int random_pairs = 0;
  bool pass() const {
    return delta_squared && module_d_squared && functoriality &&
           dg_compatibility && monoidality_differential &&
           monoidality_morphisms && unit_preserved && braiding_preserved;
  }
};

/// Relative tensor in the free normal form: (a u) x (b v) =
/// (-1)^{|b||u|} (a b)(u x v).
inline CEModuleElement relative_tensor(const CEAlgebra& a,
                                       const CEModuleElement& left,
                                       const Shape& left_space,
                                       const CEModuleElement& right,
                                       const Shape& right_space,
                                       const CEModule& target) {
  (void)right_space;
  CEModuleElement r;
  for (const auto& [lk, lc] : left.terms()) {
    int udeg = key_degree(left_space, lk.second);
    for (const auto& [rk, rc] : right.terms()) {
      if (static_cast<int>(lk.first.size() + rk.first.size()) > a.word_cap())
        continue;
      CEMonomial w = lk.first;
      w.insert(w.end(), rk.first.begin(), rk.first.end());
      int s = (a.mono_degree(rk.first) & 1) && (udeg & 1) ? -1 : 1;
      CEMonoNF nf = a.normalize(std::move(w));
      if (nf.zero) continue;
      TensorKey gen = lk.second;
      gen.insert(gen.end(), rk.second.begin(), rk.second.end());
      r.add(nf.mono, std::move(gen), lc * rc * s * nf.sign);
    }
  }
  (void)target;
  return r;
}

/// The equivalence checks at the word cap, quantified over `pairs` random
/// intertwiner pairs over the adjoint module: functoriality,
/// dg-compatibility, monoidality on differentials and morphisms, the strict
/// unit, and braiding preservation.
template <typename RandomIntertwiner>
CESuiteReport check_equivalence_suite(const LInfinityAlgebra& alg,
                                      const Representation& adj,
                                      const CEAlgebra& a, int pairs,
                                      RandomIntertwiner&& random_pair) {
  CESuiteReport rep;
  rep.delta_squared = check_delta_squared(a).pass;
  CEModule m(a, adj);
  rep.module_d_squared = check_d_squared(m).pass;
  Representation sq = tensor_rep(adj, adj);
  CEModule msq(a, sq);

  // Tensor-module differential against the free normal form.
  for (const auto& u : all_keys(adj.space))
    for (const auto& v : all_keys(adj.space)) {
      TensorKey uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      CEModuleElement rhs = relative_tensor(a, m.d_of_generator(u), adj.space,
                                            m.generator(v), adj.space, msq);
      rhs.add(relative_tensor(a, m.generator(u), adj.space,
                              m.d_of_generator(v), adj.space, msq),
              Rational(parity_sign(key_degree(adj.space, u))));
      if (!(msq.d_of_generator(uv) == rhs))
        rep.monoidality_differential = false;
    }

  // The trivial representation transports to the base algebra itself.
  {
    Representation triv{Shape{},
                        zero_intertwiner(alg.space, Shape{}, Shape{}, 1),
                        true};
    CEModule mtriv(a, triv);
    if (!mtriv.d_of_generator({}).is_zero()) rep.unit_preserved = false;
  }

  // The braiding transports to the Koszul swap.
  {
    Intertwiner gm = gamma_intertwiner(alg.space, adj.space, adj.space);
    CEMorphism cg = ce_of_morphism(gm, msq, msq);
    for (const auto& u : all_keys(adj.space))
      for (const auto& v : all_keys(adj.space)) {
        TensorKey uv = u, vu = v;
        uv.insert(uv.end(), v.begin(), v.end());
        vu.insert(vu.end(), u.begin(), u.end());
        CEModuleElement expect;
        int sign = (key_degree(adj.space, u) & 1) &&
                           (key_degree(adj.space, v) & 1)
                       ? -1
                       : 1;
        expect.add({}, vu, Rational(sign));
        if (!(cg.table.at(uv) == expect)) rep.braiding_preserved = false;
      }
  }

  for (int t = 0; t < pairs; ++t) {
    auto [f, g] = random_pair();
    CEMorphism cf = ce_of_morphism(f, m, m);
    CEMorphism cg = ce_of_morphism(g, m, m);
    CEMorphism cgf = ce_of_morphism(juxtapose(g, f), m, m);
    Intertwiner df = hom_differential(alg, adj.action, adj.action, f);
    CEMorphism cdf = ce_of_morphism(df, m, m);
    CEMorphism cfg = ce_of_morphism(odot(f, g), msq, msq);
    for (const auto& u : all_keys(adj.space)) {
      if (!(cgf.table.at(u) == cg.apply(cf.table.at(u))))
        rep.functoriality = false;
      CEModuleElement rhs = m.d(cf.table.at(u));
      rhs.add(cf.apply(m.d_of_generator(u)),
              Rational(-parity_sign(f.degree())));
      if (!(cdf.table.at(u) == rhs)) rep.dg_compatibility = false;
      for (const auto& v : all_keys(adj.space)) {
        TensorKey uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        int sign =
            (g.degree() & 1) && (key_degree(adj.space, u) & 1) ? -1 : 1;
        CEModuleElement expect =
            relative_tensor(a, cf.table.at(u), adj.space, cg.table.at(v),
                            adj.space, msq)
                .scaled(Rational(sign));
        if (!(cfg.table.at(uv) == expect)) rep.monoidality_morphisms = false;
      }
    }
    ++rep.random_pairs;
  }
  return rep;
}

}  // namespace koszul
