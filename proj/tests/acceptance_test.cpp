// Acceptance suite: every criterion prints exactly one PASS/FAIL line with
// its wall time, and the binary fails if any line fails.

#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>

#include "koszul/axioms.hpp"
#include "koszul/braiding.hpp"
#include "koszul/ce.hpp"
#include "koszul/io.hpp"

using namespace koszul;

namespace {

struct Criterion {
  int number;
  std::string name;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  bool ok = true;

  Criterion(int n, std::string nm) : number(n), name(std::move(nm)) {}

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      std::printf("  criterion %d detail: %s\n", number, what.c_str());
    }
  }

  ~Criterion() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("ACCEPTANCE %d (%s): %s  [%lld ms]\n", number, name.c_str(),
                ok ? "PASS" : "FAIL", static_cast<long long>(ms));
    std::fflush(stdout);
    EXPECT_TRUE(ok) << "criterion " << number << " (" << name << ")";
  }
};

GradedElement jacobiator3(const LInfinityAlgebra& alg, std::uint32_t x,
                          std::uint32_t y, std::uint32_t z) {
  const SkewMultiMap* l2 = alg.bracket(2);
  GradedElement out(Shape{alg.space});
  if (!l2) return out;
  auto br2 = [&](const GradedElement& a, std::uint32_t b) {
    GradedElement r(Shape{alg.space});
    for (const auto& [k, c] : a.terms()) r.add(l2->eval_key({k[0], b}), c);
    return r;
  };
  out.add(br2(l2->eval_key({x, y}), z));
  out.add(br2(l2->eval_key({x, z}), y), Rational(-1));
  out.add(br2(l2->eval_key({y, z}), x));
  return out;
}

std::vector<LInfinityAlgebra> failing_sl2_mutations(std::size_t want) {
  LInfinityAlgebra base = fixtures::sl2();
  const SpaceRef& g = base.space;
  std::vector<LInfinityAlgebra> out;
  for (int delta : {1, 2, -1, 3, -2}) {
    for (const auto& key : canonical_skew_keys(*g, 2)) {
      for (std::uint32_t t = 0; t < g->dim(); ++t) {
        LInfinityAlgebra mut = base;
        SkewMultiMap l2 = *mut.bracket(2);
        l2.add(key, GradedElement::basis(Shape{g}, {t}, Rational(delta)));
        mut.brackets[2] = std::move(l2);
        if (jacobiator3(mut, 0, 1, 2).is_zero()) continue;
        out.push_back(std::move(mut));
        if (out.size() == want) return out;
      }
    }
  }
  return out;
}

}  // namespace

TEST(Acceptance, C1_JacobiSuite) {
  Criterion c(1, "jacobi suite");
  c.require(check_jacobi(fixtures::abelian(3)).pass, "abelian fails");
  c.require(check_jacobi(fixtures::dgla()).pass, "dgla fails");
  c.require(check_jacobi(fixtures::sl2()).pass, "sl2 fails");
  c.require(check_jacobi(fixtures::string_lie2()).pass, "string fails");
  auto mutations = failing_sl2_mutations(20);
  c.require(mutations.size() == 20, "mutation pool too small");
  for (const auto& m : mutations)
    c.require(!check_jacobi(m).pass, "a single-constant mutation passed");
}

TEST(Acceptance, C2_DgCategorySuite) {
  Criterion c(2, "dg-category axioms on 200 random instances");
  AxiomSuiteConfig cfg;
  cfg.seed = 2026;
  cfg.instances = 200;
  cfg.max_dim = 3;
  cfg.min_degree = -2;
  cfg.max_degree = 2;
  cfg.arity_cap = 4;
  cfg.jobs = 4;
  cfg.monoidal = false;
  AxiomCounts counts = run_axiom_suite(cfg);
  c.require(counts.instances == 200, "instance count");
  for (const char* axiom :
       {"juxtaposition_associativity", "juxtaposition_unitality",
        "hom_differential_squares_to_zero", "hom_differential_leibniz"})
    c.require(counts.failures.count(axiom) &&
                  counts.failures.at(axiom) == 0,
              std::string(axiom) + " has nonzero residuals");
}

TEST(Acceptance, C3_SymmetricMonoidalSuite) {
  Criterion c(3, "symmetric monoidal axioms on 200 random instances");
  AxiomSuiteConfig cfg;
  cfg.seed = 2026;
  cfg.instances = 200;
  cfg.max_dim = 3;
  cfg.min_degree = -2;
  cfg.max_degree = 2;
  cfg.arity_cap = 4;
  cfg.jobs = 4;
  cfg.dg_category = false;
  AxiomCounts counts = run_axiom_suite(cfg);
  c.require(counts.instances == 200, "instance count");
  for (const char* axiom :
       {"odot_interchange", "odot_associativity", "odot_leibniz",
        "gamma_naturality", "gamma_involutivity", "gamma_hexagon",
        "strict_unit"})
    c.require(counts.failures.count(axiom) &&
                  counts.failures.at(axiom) == 0,
              std::string(axiom) + " has nonzero residuals");
}

TEST(Acceptance, C4_RepresentationPredicateCrossCheck) {
  Criterion c(4, "representation predicate two-route cross-check");
  InstanceGen gen({2027, 3, -2, 2, 4, 3});
  int candidates = 0, deliberate_failures = 0;
  while (candidates < 100) {
    LInfinityAlgebra alg = gen.random_algebra();
    Intertwiner cand;
    if (candidates % 3 == 0) {
      cand = gen.random_representation(alg).action;
    } else {
      SpaceRef v = gen.random_space("cv");
      cand = gen.random_action_candidate(alg, Shape{v}, 3);
    }
    RepresentationReport rep = is_representation(alg, cand);
    c.require(rep.routes_agree, "routes disagree: " + rep.incident);
    c.require(rep.residual == rep.residual_allocca,
              "route residuals differ");
    if (!rep.pass) ++deliberate_failures;
    ++candidates;
  }
  c.require(deliberate_failures >= 20, "corpus lacks deliberate failures");
}

TEST(Acceptance, C5_MaurerCartanCrossCheck) {
  Criterion c(5, "weight-decomposed vs Schouten Maurer-Cartan residuals");
  // All shipped Poisson fixtures.
  struct Fixture {
    LInfinityAlgebra alg;
    ShiftedPoissonStructure sps;
  };
  std::vector<Fixture> fixtures_list;
  {
    LInfinityAlgebra sl2 = fixtures::sl2();
    fixtures_list.push_back({sl2, fixtures::sl2_casimir_poisson(sl2)});
    LInfinityAlgebra str = fixtures::string_lie2();
    auto sp = fixtures::string_lie2_poisson(str);
    c.require(sp.found, "string fixture not solved: " + sp.note);
    fixtures_list.push_back({str, sp.sps});
    LInfinityAlgebra d = fixtures::dgla();
    auto dp = fixtures::dgla_poisson_free(d);
    c.require(dp.found, "dgla fixture not solved: " + dp.note);
    fixtures_list.push_back({d, dp.sps});
  }
  for (const auto& fx : fixtures_list) {
    for (int w : {2, 3})
      for (int i = 0; i <= fx.sps.arity_cap; ++i) {
        SkewMultiMap displayed = w == 2
                                     ? weight2_mc_residual(fx.alg, fx.sps, i)
                                     : weight3_mc_residual(fx.alg, fx.sps, i);
        SkewMultiMap generic = mc_residual_generic(fx.alg, fx.sps, w, i);
        c.require(displayed == generic, "fixture route mismatch");
      }
  }
  // 50 fuzzed non-solutions over the string algebra.
  LInfinityAlgebra alg = fixtures::string_lie2();
  const SpaceRef& g = alg.space;
  std::mt19937_64 rng(505);
  int trials = 0, fails = 0;
  while (trials < 50) {
    ShiftedPoissonStructure sps{g, 2, {}, 3, 3};
    bool any = false;
    for (int w : {2, 3})
      for (int i = 0; i <= 2; ++i) {
        PolyMap p = PolyMap::zero(g, i, w, (1 - w) * 2 + 2 - i);
        for (const auto& in : canonical_skew_keys(*g, i)) {
          int want = key_degree(power(g, i), in) + p.degree();
          for (const auto& sk : canonical_sym_keys(*g, w)) {
            if (key_degree(power(g, w), sk) != want) continue;
            GradedElement orbit = fixtures::sym_orbit(g, sk);
            if (orbit.is_zero() || rng() % 4) continue;
            p.map.add(in, orbit.scaled(
                              Rational(1 + static_cast<int>(rng() % 3))));
            any = true;
          }
        }
        if (!p.is_zero()) sps.set_component(w, i, p);
      }
    if (!any) continue;
    ++trials;
    bool pass_all = true;
    for (int w : {2, 3})
      for (int i = 0; i <= 3; ++i) {
        SkewMultiMap displayed = w == 2
                                     ? weight2_mc_residual(alg, sps, i)
                                     : weight3_mc_residual(alg, sps, i);
        SkewMultiMap generic = mc_residual_generic(alg, sps, w, i);
        c.require(displayed == generic, "fuzz route mismatch");
        if (!generic.is_zero()) pass_all = false;
      }
    if (!pass_all) ++fails;
  }
  c.require(fails >= 45, "fuzzed corpus unexpectedly solves Maurer-Cartan");
}

TEST(Acceptance, C6_BraidingCertificateClassical) {
  Criterion c(6, "braiding certificate, classical regime");
  LInfinityAlgebra alg = fixtures::sl2();
  ShiftedPoissonStructure sps = fixtures::sl2_casimir_poisson(alg);
  BraidingData data = build_braiding_data(alg, sps);
  Representation adj = adjoint_rep(alg);

  // Independent oracle: the classical Casimir contraction.
  Intertwiner t = t_objects(adj, adj, data);
  const SkewMultiMap* c1 = t.component(1);
  c.require(c1 != nullptr, "t has no arity-1 component");
  if (c1) {
    const SkewMultiMap* l2 = alg.bracket(2);
    GradedElement cas = fixtures::sl2_casimir(alg).map.eval_key({});
    Shape uv = power(alg.space, 2);
    for (const auto& key : all_keys(uv)) {
      GradedElement expect(uv);
      for (const auto& [ck, cc] : cas.terms()) {
        GradedElement lu = l2->eval_key({ck[0], key[0]});
        GradedElement rv = l2->eval_key({ck[1], key[1]});
        for (const auto& [lk, lc] : lu.terms())
          for (const auto& [rk, rc] : rv.terms())
            expect.add({lk[0], rk[0]}, cc * lc * rc * Rational(-1));
      }
      c.require(c1->eval_key(key) == expect,
                "casimir contraction oracle mismatch at " +
                    key_label(uv, key));
    }
  }

  BraidingCertificate cert = certify(alg, sps, adj, adj, adj, data);
  for (const auto& check : cert.checks)
    c.require(check.pass, check.name + " failed");
  c.require(cert.info_flag("coherence_lhs_zero"),
            "classical coherence sum is nonzero");
  c.require(cert.info_flag("coherence_boundary_zero"),
            "classical boundary is nonzero");
}

TEST(Acceptance, C7_BraidingCertificateHomotopical) {
  Criterion c(7, "braiding certificate, homotopical regime");
  // String Lie 2-algebra: the solver records that pi_3 = 0 is forced at
  // these caps; the certificate must still close exactly.
  LInfinityAlgebra str = fixtures::string_lie2();
  auto sp = fixtures::string_lie2_poisson(str);
  c.require(sp.found, "string fixture not solved: " + sp.note);
  if (sp.found) {
    c.require(sp.note.find("zero-dimensional") != std::string::npos,
              "expected the recorded pi_3 = 0 statement");
    BraidingData data = build_braiding_data(str, sp.sps);
    Representation adj = adjoint_rep(str);
    BraidingCertificate cert = certify(str, sp.sps, adj, adj, adj, data);
    for (const auto& check : cert.checks)
      c.require(check.pass, "string: " + check.name + " failed");
    Intertwiner t3 = t_triple_homotopy(adj, adj, adj, data);
    Intertwiner tf = t_morphisms(identity_intertwiner(str.space, adj.space),
                                 identity_intertwiner(str.space, adj.space),
                                 adj, adj, adj, data);
    c.require(t_objects(adj, adj, data).degree() == 0 &&
                  tf.degree() == -1 && t3.degree() == -2,
              "degree audit 0/-1/-2 failed");
  }
  // DGLA with nonzero pi_3: the coherence sum equals a nonzero boundary.
  LInfinityAlgebra d = fixtures::dgla();
  auto dp = fixtures::dgla_poisson_free(d);
  c.require(dp.found, "dgla fixture not solved: " + dp.note);
  if (dp.found) {
    BraidingData data = build_braiding_data(d, dp.sps);
    Representation adj = adjoint_rep(d);
    BraidingCertificate cert = certify(d, dp.sps, adj, adj, adj, data);
    for (const auto& check : cert.checks)
      c.require(check.pass, "dgla: " + check.name + " failed");
    c.require(!cert.info_flag("coherence_boundary_zero", true),
              "dgla boundary unexpectedly zero");
  }
}

TEST(Acceptance, C8_ChevalleyEilenbergSuite) {
  Criterion c(8, "Chevalley-Eilenberg suite");
  LInfinityAlgebra sl2 = fixtures::sl2();
  LInfinityAlgebra str = fixtures::string_lie2();
  CEAlgebra a_sl2(sl2, 6);
  CEAlgebra a_str(str, 6);
  c.require(check_delta_squared(a_sl2).pass, "sl2 delta squared");
  c.require(check_delta_squared(a_str).pass, "string delta squared");
  Representation adj_sl2 = adjoint_rep(sl2);
  Representation adj_str = adjoint_rep(str);
  CEModule m_sl2(a_sl2, adj_sl2);
  CEModule m_str(a_str, adj_str);
  c.require(check_d_squared(m_sl2).pass, "sl2 adjoint module d squared");
  c.require(check_d_squared(m_str).pass, "string adjoint module d squared");

  // Functoriality, dg-compatibility, monoidality and braiding preservation
  // on 100 random intertwiner pairs.
  InstanceGen gen({2028, 3, -1, 1, 4, 3});
  Representation sq = tensor_rep(adj_str, adj_str);
  CEModule m_sq(a_str, sq);
  int pairs = 0;
  while (pairs < 100) {
    Intertwiner f = gen.random_intertwiner(str.space, adj_str.space,
                                           adj_str.space,
                                           gen.uniform(-1, 1), 3);
    Intertwiner g2 = gen.random_intertwiner(str.space, adj_str.space,
                                            adj_str.space,
                                            gen.uniform(-1, 1), 3);
    CEMorphism cf = ce_of_morphism(f, m_str, m_str);
    CEMorphism cg = ce_of_morphism(g2, m_str, m_str);
    CEMorphism cgf = ce_of_morphism(juxtapose(g2, f), m_str, m_str);
    Intertwiner df = hom_differential(str, adj_str.action, adj_str.action, f);
    CEMorphism cdf = ce_of_morphism(df, m_str, m_str);
    CEMorphism cfg = ce_of_morphism(odot(f, g2), m_sq, m_sq);
    for (const auto& u : all_keys(adj_str.space)) {
      c.require(cgf.table.at(u) == cg.apply(cf.table.at(u)),
                "CE functoriality");
      CEModuleElement rhs = m_str.d(cf.table.at(u));
      rhs.add(cf.apply(m_str.d_of_generator(u)),
              Rational(-parity_sign(f.degree())));
      c.require(cdf.table.at(u) == rhs, "CE dg-compatibility");
      for (const auto& v : all_keys(adj_str.space)) {
        TensorKey uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        int sign = (g2.degree() & 1) && (key_degree(adj_str.space, u) & 1)
                       ? -1
                       : 1;
        CEModuleElement expect =
            relative_tensor(a_str, cf.table.at(u), adj_str.space,
                            cg.table.at(v), adj_str.space, m_sq)
                .scaled(Rational(sign));
        c.require(cfg.table.at(uv) == expect, "CE monoidality on morphisms");
      }
    }
    if (!c.ok) break;
    ++pairs;
  }

  // Tensor-module differential matches the relative tensor normal form.
  for (const auto& u : all_keys(adj_str.space))
    for (const auto& v : all_keys(adj_str.space)) {
      TensorKey uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      CEModuleElement rhs =
          relative_tensor(a_str, m_str.d_of_generator(u), adj_str.space,
                          m_str.generator(v), adj_str.space, m_sq);
      rhs.add(relative_tensor(a_str, m_str.generator(u), adj_str.space,
                              m_str.d_of_generator(v), adj_str.space, m_sq),
              Rational(parity_sign(key_degree(adj_str.space, u))));
      c.require(m_sq.d_of_generator(uv) == rhs,
                "CE monoidality on differentials");
    }

  // Braiding preservation: CE of gamma is the Koszul swap.
  Intertwiner gm = gamma_intertwiner(str.space, adj_str.space,
                                     adj_str.space);
  CEMorphism cgm = ce_of_morphism(gm, m_sq, m_sq);
  for (const auto& u : all_keys(adj_str.space))
    for (const auto& v : all_keys(adj_str.space)) {
      TensorKey uv = u, vu = v;
      uv.insert(uv.end(), v.begin(), v.end());
      vu.insert(vu.end(), u.begin(), u.end());
      CEModuleElement expect;
      int sign = (key_degree(adj_str.space, u) & 1) &&
                         (key_degree(adj_str.space, v) & 1)
                     ? -1
                     : 1;
      expect.add({}, vu, Rational(sign));
      c.require(cgm.table.at(uv) == expect, "CE braiding preservation");
    }

  // Ten injected single-sign mutations, each caught by functoriality or
  // dg-compatibility (see the unit suite for the construction).
  {
    LInfinityAlgebra dg = fixtures::dgla();
    CEAlgebra a_dg(dg, 6);
    Representation adj_dg = adjoint_rep(dg);
    CEModule m_dg(a_dg, adj_dg);
    auto mutated = [&](const Intertwiner& f, int mode) {
      CEMorphism m0;
      m0.source = &m_dg;
      m0.target = &m_dg;
      m0.degree = f.degree();
      const SpaceRef& gsp = dg.space;
      for (const auto& u : all_keys(adj_dg.space)) {
        CEModuleElement out;
        for (int i = 1; i <= f.extent(); ++i) {
          const SkewMultiMap* fi = f.component(i);
          if (!fi) continue;
          int it = i - 1;
          Rational factorial = 1;
          for (int t = 2; t <= it; ++t) factorial *= t;
          for (const auto& tup : all_keys(power(gsp, it))) {
            TensorKey full = tup;
            full.insert(full.end(), u.begin(), u.end());
            GradedElement val = fi->eval_key(full);
            if (val.is_zero()) continue;
            std::vector<int> degs(it);
            for (int t = 0; t < it; ++t) degs[t] = gsp->degree(tup[t]);
            long long expo = reversal_degree(degs);
            if (mode == 1 && !degs.empty()) {
              int suffix = 0;
              for (std::size_t t = 1; t < degs.size(); ++t)
                suffix += degs[t];
              expo -= static_cast<long long>(degs[0]) * suffix;
            }
            for (int l = 1; l <= it; ++l) {
              long long weight = l + f.degree();
              if (mode == 2) weight = l;
              if (mode == 3) weight = l - 1;
              expo += static_cast<long long>(degs[l - 1]) * weight;
            }
            if (mode == 4) expo += 1;
            if (mode == 5) expo += degs.empty() ? 0 : degs[0];
            int sign = parity_sign(expo);
            CEMonoNF nf = a_dg.normalize(CEMonomial(tup.begin(), tup.end()));
            if (nf.zero) continue;
            for (const auto& [ok2, oc] : val.terms())
              out.add(nf.mono, ok2, oc * sign * nf.sign / factorial);
          }
        }
        m0.table.emplace(u, std::move(out));
      }
      return m0;
    };
    auto holds = [&](const Intertwiner& f, const Intertwiner& g3, int mode) {
      CEMorphism cf = mutated(f, mode);
      CEMorphism cg3 = mutated(g3, mode);
      CEMorphism cgf = mutated(juxtapose(g3, f), mode);
      for (const auto& u : all_keys(adj_dg.space))
        if (!(cgf.table.at(u) == cg3.apply(cf.table.at(u)))) return false;
      Intertwiner df =
          hom_differential(dg, adj_dg.action, adj_dg.action, f);
      CEMorphism cdf = mutated(df, mode);
      for (const auto& u : all_keys(adj_dg.space)) {
        CEModuleElement rhs = m_dg.d(cf.table.at(u));
        rhs.add(cf.apply(m_dg.d_of_generator(u)),
                Rational(-parity_sign(f.degree())));
        if (!(cdf.table.at(u) == rhs)) return false;
      }
      return true;
    };
    Intertwiner probe(dg.space, adj_dg.space, adj_dg.space, 4, 4);
    {
      SkewMultiMap c4 = probe.make_component(4);
      auto idx = [&](const char* s) {
        return static_cast<std::uint32_t>(dg.space->find(s));
      };
      c4.add({idx("et"), idx("ft"), idx("h"), idx("e")},
             GradedElement::basis(adj_dg.space, {idx("ht")}, Rational(1)));
      probe.set_component(4, c4);
    }
    InstanceGen mgen({2029, 3, -1, 1, 4, 3});
    int caught = 0;
    for (int mode = 1; mode <= 5; ++mode) {
      int here = 0;
      for (int trial = 0; trial < 60 && here < 2; ++trial) {
        Intertwiner f =
            mode == 1 ? probe
                      : mgen.random_intertwiner(dg.space, adj_dg.space,
                                                adj_dg.space,
                                                mgen.uniform(-1, 1), 3);
        Intertwiner g3 = mgen.random_intertwiner(dg.space, adj_dg.space,
                                                 adj_dg.space,
                                                 mgen.uniform(-1, 1), 3);
        if (f.is_zero() || g3.is_zero()) continue;
        if (!holds(f, g3, 0)) continue;
        if (!holds(f, g3, mode)) ++here;
      }
      caught += here;
    }
    c.require(caught >= 10, "sign mutations caught: " +
                                std::to_string(caught) + " < 10");
  }
}

TEST(Acceptance, C9_ShufflerIdentitySuite) {
  Criterion c(9, "shuffler identities and Koszul cocycle, 500 evaluations");
  SpaceRef m =
      make_space("M", {{"a", 0}, {"b", 1}, {"c", -1}, {"d", 2}});
  std::mt19937_64 rng(909);
  auto random_tensor = [&](int n) {
    Shape sh = power(m, n);
    GradedElement e(sh);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      TensorKey k(n);
      for (int i = 0; i < n; ++i)
        k[i] = static_cast<std::uint32_t>(rng() % m->dim());
      int num = static_cast<int>(rng() % 7) - 3;
      e.add(k, Rational(num ? num : 1, 1 + static_cast<int>(rng() % 2)));
    }
    return e;
  };
  for (int trial = 0; trial < 500; ++trial) {
    int i = 1 + static_cast<int>(rng() % 2);
    int j = 1 + static_cast<int>(rng() % 2);
    GradedElement x = random_tensor(i + j);
    GradedElement mid = apply_shuffler(ShufflerKind::Skew, {i, j}, x);

    GradedElement lhs =
        apply_shuffler_slots(ShufflerKind::Skew, {i, j - 1}, x, 0);
    GradedElement t2 =
        apply_shuffler_slots(ShufflerKind::Skew, {i - 1, j}, x, 0);
    t2 = block_swap_slots(t2, static_cast<std::size_t>(i - 1),
                          static_cast<std::size_t>(j), 1);
    lhs.add(t2, Rational(parity_sign(j)));
    c.require(lhs == mid, "left unitality");

    GradedElement rhs =
        apply_shuffler_slots(ShufflerKind::Skew, {i - 1, j}, x, 1);
    GradedElement t4 =
        apply_shuffler_slots(ShufflerKind::Skew, {i, j - 1}, x, 1);
    t4 = block_swap_slots(t4, 0, 1, static_cast<std::size_t>(i));
    rhs.add(t4, Rational(parity_sign(i)));
    c.require(rhs == mid, "right unitality");

    // Associativity through a merged middle block.
    GradedElement full = apply_shuffler(ShufflerKind::Skew, {i, j}, x);
    GradedElement staged = apply_shuffler(ShufflerKind::Skew, {i + j}, x);
    staged = apply_shuffler_slots(ShufflerKind::Skew, {i, j}, staged, 0);
    c.require(staged == full, "associativity via merged block");

    // Block symmetry.
    GradedElement sym = apply_shuffler(ShufflerKind::Skew, {j, i}, x);
    sym = block_swap_slots(sym, 0, static_cast<std::size_t>(j),
                           static_cast<std::size_t>(i));
    c.require(sym.scaled(Rational(parity_sign(i * j))) == full,
              "block symmetry");

    if (!c.ok) break;
  }
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    std::vector<std::uint32_t> a(n), b(n);
    for (int i = 0; i < n; ++i) a[i] = b[i] = static_cast<std::uint32_t>(i);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    Permutation sigma{a}, tau{b};
    std::vector<int> degs(n);
    for (int i = 0; i < n; ++i) degs[i] = static_cast<int>(rng() % 5) - 2;
    Permutation tinv = tau.inverse();
    std::vector<int> permuted(n);
    for (int mm = 0; mm < n; ++mm) permuted[mm] = degs[tinv.images[mm]];
    c.require(koszul_sign(sigma.compose(tau), degs) ==
                  koszul_sign(sigma, permuted) * koszul_sign(tau, degs),
              "koszul cocycle");
    if (!c.ok) break;
  }
}
