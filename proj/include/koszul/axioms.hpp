#pragma once

#include <future>

#include "koszul/random_gen.hpp"

namespace koszul {

/// One seeded random instance for the category-axiom suites.
struct AxiomInstance {
  LInfinityAlgebra alg;
  Representation u, v, w;
  Intertwiner f, g, h;  // f: U ~~> V, g: V ~~> W, h: W ~~> W

  static AxiomInstance make(InstanceGen& gen) {
    AxiomInstance in;
    in.alg = gen.random_algebra();
    in.u = gen.random_representation(in.alg);
    in.v = gen.random_representation(in.alg);
    in.w = gen.random_representation(in.alg);
    in.f = gen.random_intertwiner(in.alg.space, in.u.space, in.v.space,
                                  gen.uniform(-1, 1), 3);
    in.g = gen.random_intertwiner(in.alg.space, in.v.space, in.w.space,
                                  gen.uniform(-1, 1), 3);
    in.h = gen.random_intertwiner(in.alg.space, in.w.space, in.w.space,
                                  gen.uniform(-1, 1), 3);
    return in;
  }
};

struct AxiomCounts {
  std::map<std::string, long> failures;
  long instances = 0;

  void merge(const AxiomCounts& o) {
    instances += o.instances;
    for (const auto& [k, v] : o.failures) failures[k] += v;
  }
  bool pass() const {
    for (const auto& [k, v] : failures)
      if (v) return false;
    return true;
  }
};

/// The dg-category axioms: associativity and unitality of juxtaposition,
/// square-zero of the hom differential on representations, and the Leibniz
/// rule of the differential over juxtaposition.
inline void run_dg_category_axioms(const AxiomInstance& in, AxiomCounts& out) {
  auto tally = [&](const char* name, bool ok) {
    if (!ok) out.failures[name]++;
    else out.failures.try_emplace(name, 0);
  };
  Intertwiner gf = juxtapose(in.g, in.f);
  tally("juxtaposition_associativity",
        juxtapose(in.h, gf) == juxtapose(juxtapose(in.h, in.g), in.f));
  Intertwiner idu = identity_intertwiner(in.alg.space, in.u.space);
  Intertwiner idv = identity_intertwiner(in.alg.space, in.v.space);
  tally("juxtaposition_unitality",
        juxtapose(idv, in.f) == in.f && juxtapose(in.f, idu) == in.f);
  Intertwiner df = hom_differential(in.alg, in.u.action, in.v.action, in.f);
  tally("hom_differential_squares_to_zero",
        hom_differential(in.alg, in.u.action, in.v.action, df).is_zero());
  Intertwiner lhs = hom_differential(in.alg, in.u.action, in.w.action, gf);
  Intertwiner rhs =
      juxtapose(hom_differential(in.alg, in.v.action, in.w.action, in.g),
                in.f);
  rhs.add(juxtapose(in.g, df), Rational(parity_sign(in.g.degree())));
  tally("hom_differential_leibniz", lhs == rhs);
}

/// The symmetric monoidal axioms: middle-four interchange, odot
/// associativity, the odot Leibniz rule, gamma naturality, involutivity and
/// hexagon, and strictness of the ground-field unit.
inline void run_monoidal_axioms(const AxiomInstance& in, AxiomCounts& out) {
  auto tally = [&](const char* name, bool ok) {
    if (!ok) out.failures[name]++;
    else out.failures.try_emplace(name, 0);
  };
  const SpaceRef& ga = in.alg.space;

  Intertwiner fp = in.g;  // V ~~> W composes with f: U ~~> V
  Intertwiner gp = in.h;  // W ~~> W composes with g: V ~~> W
  Intertwiner lhs = juxtapose(odot(fp, gp), odot(in.f, in.g));
  Intertwiner rhs =
      odot(juxtapose(fp, in.f), juxtapose(gp, in.g))
          .scaled(Rational(parity_sign(
              static_cast<long long>(gp.degree()) * in.f.degree())));
  tally("odot_interchange", lhs == rhs);

  tally("odot_associativity",
        odot(odot(in.f, in.g), in.h) == odot(in.f, odot(in.g, in.h)));

  Intertwiner rho_uv = tensor_rep(in.u, in.v).action;
  Intertwiner rho_vw = tensor_rep(in.v, in.w).action;
  Intertwiner l2 = hom_differential(in.alg, rho_uv, rho_vw,
                                    odot(in.f, in.g));
  Intertwiner r2 = odot(
      hom_differential(in.alg, in.u.action, in.v.action, in.f), in.g);
  r2.add(odot(in.f,
              hom_differential(in.alg, in.v.action, in.w.action, in.g)),
         Rational(parity_sign(in.f.degree())));
  tally("odot_leibniz", l2 == r2);

  Intertwiner g_sf = gamma_intertwiner(ga, in.f.source(), in.h.source());
  Intertwiner g_tf = gamma_intertwiner(ga, in.f.target(), in.h.target());
  Intertwiner nat_l = juxtapose(g_tf, odot(in.f, in.h));
  Intertwiner nat_r =
      juxtapose(odot(in.h, in.f), g_sf)
          .scaled(Rational(parity_sign(
              static_cast<long long>(in.f.degree()) * in.h.degree())));
  tally("gamma_naturality", nat_l == nat_r);

  Intertwiner g_uv = gamma_intertwiner(ga, in.u.space, in.v.space);
  Intertwiner g_vu = gamma_intertwiner(ga, in.v.space, in.u.space);
  tally("gamma_involutivity",
        juxtapose(g_vu, g_uv) ==
            identity_intertwiner(ga, concat(in.u.space, in.v.space)));

  Intertwiner hex_l =
      gamma_intertwiner(ga, concat(in.u.space, in.v.space), in.w.space);
  Intertwiner hex_r = juxtapose(
      odot(gamma_intertwiner(ga, in.u.space, in.w.space),
           identity_intertwiner(ga, in.v.space)),
      odot(identity_intertwiner(ga, in.u.space),
           gamma_intertwiner(ga, in.v.space, in.w.space)));
  tally("gamma_hexagon", hex_l == hex_r);

  Intertwiner idk = identity_intertwiner(ga, Shape{});
  tally("strict_unit", odot(in.f, idk) == in.f && odot(idk, in.f) == in.f);
}

struct AxiomSuiteConfig {
  std::uint64_t seed = 1;
  int instances = 200;
  int max_dim = 3;
  int min_degree = -2;
  int max_degree = 2;
  int arity_cap = 4;
  int jobs = 1;
  bool dg_category = true;
  bool monoidal = true;
};

inline AxiomCounts run_axiom_suite(const AxiomSuiteConfig& cfg) {
  auto worker = [&](int lo, int hi, std::uint64_t seed) {
    InstanceGen gen({seed, cfg.max_dim, cfg.min_degree, cfg.max_degree,
                     cfg.arity_cap, 3});
    AxiomCounts counts;
    for (int t = lo; t < hi; ++t) {
      AxiomInstance in = AxiomInstance::make(gen);
      if (cfg.dg_category) run_dg_category_axioms(in, counts);
      if (cfg.monoidal) run_monoidal_axioms(in, counts);
      ++counts.instances;
    }
    return counts;
  };
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) return worker(0, cfg.instances, cfg.seed);
  std::vector<std::future<AxiomCounts>> futs;
  int chunk = (cfg.instances + jobs - 1) / jobs;
  for (int j = 0; j < jobs; ++j) {
    int lo = j * chunk;
    int hi = std::min(cfg.instances, lo + chunk);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, worker, lo, hi,
                              cfg.seed + static_cast<std::uint64_t>(j)));
  }
  AxiomCounts total;
  for (auto& f : futs) total.merge(f.get());
  return total;
}

}  // namespace koszul
