// Command-line front end: loads instances from JSON files, dispatches the
// checkers, and emits text or structured reports with deterministic content.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "koszul/axioms.hpp"
#include "koszul/io.hpp"

namespace {

using namespace koszul;

constexpr const char* kToolVersion = "0.1.0";

struct GlobalOpts {
  int arity_cap = 4;
  int word_cap = 6;
  int weight_cap = 3;
  std::uint64_t seed = 1;
  int jobs = 1;
  int instances = 50;
  std::string format = "text";
  std::string output;
};

struct ReportBuilder {
  json report;
  bool all_pass = true;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  explicit ReportBuilder(const std::string& command, const GlobalOpts& g) {
    report["tool"] = "koszul";
    report["version"] = kToolVersion;
    report["command"] = command;
    report["inputs"] = json::array();
    report["config"] = {{"arity_cap", g.arity_cap},
                        {"word_cap", g.word_cap},
                        {"weight_cap", g.weight_cap},
                        {"seed", g.seed},
                        {"jobs", g.jobs}};
    report["checks"] = json::array();
    report["warnings"] = json::array();
    report["info"] = json::array();
  }

  void input(const LoadedFile& f) {
    report["inputs"].push_back(
        {{"path", f.path.string()}, {"digest", f.digest}});
  }
  void warn(const std::string& w) { report["warnings"].push_back(w); }
  void note(const std::string& key, const json& value) {
    report["info"].push_back({{"name", key}, {"value", value}});
  }
  void check(const std::string& name, bool pass,
             std::vector<std::string> witnesses = {}) {
    json c{{"name", name}, {"pass", pass}};
    if (!witnesses.empty()) c["witnesses"] = witnesses;
    report["checks"].push_back(c);
    all_pass = all_pass && pass;
  }

  int finish(const GlobalOpts& g) {
    report["pass"] = all_pass;
    report["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (g.format == "structured") {
      std::cout << report.dump(2) << "\n";
    } else {
      for (const auto& c : report["checks"]) {
        std::cout << (c["pass"].get<bool>() ? "[PASS] " : "[FAIL] ")
                  << c["name"].get<std::string>();
        if (c.contains("witnesses"))
          std::cout << "  (" << c["witnesses"].size() << " witnesses)";
        std::cout << "\n";
        if (c.contains("witnesses") && !c["pass"].get<bool>())
          for (const auto& w : c["witnesses"])
            std::cout << "         " << w.get<std::string>() << "\n";
      }
      for (const auto& w : report["warnings"])
        std::cout << "[warn] " << w.get<std::string>() << "\n";
      for (const auto& n : report["info"])
        std::cout << "[info] " << n["name"].get<std::string>() << ": "
                  << n["value"].dump() << "\n";
      std::cout << (all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    if (!g.output.empty()) write_json_file(g.output, report);
    return all_pass ? 0 : 1;
  }
};

std::vector<std::string> witness_strings(
    const std::vector<ResidualWitness>& ws, const Shape& src,
    std::size_t limit = 4) {
  std::vector<std::string> out;
  for (const auto& w : ws) {
    if (out.size() >= limit) break;
    out.push_back("arity " + std::to_string(w.arity) + " at " +
                  key_label(src, w.key) + ": " + w.residual.str());
  }
  return out;
}

Representation rep_by_name(const std::string& name,
                           const LInfinityAlgebra& alg,
                           const std::filesystem::path& base,
                           std::vector<std::string>* warnings) {
  if (name == "adjoint") return adjoint_rep(alg);
  if (name == "trivial") return trivial_rep(alg);
  if (name == "adjoint2") {
    Representation a = adjoint_rep(alg);
    return tensor_rep(a, a);
  }
  LoadedFile f = load_json_file(base / name);
  if (f.kind != "representation")
    throw io_error(name + " is not a representation file");
  return representation_from_json(f.body, alg, warnings);
}

int cmd_check_jacobi(const GlobalOpts& g, const std::string& path) {
  ReportBuilder rb("check jacobi", g);
  LoadedFile f = load_json_file(path);
  rb.input(f);
  std::vector<std::string> warnings;
  LInfinityAlgebra alg = algebra_from_json(f.body, &warnings);
  alg.arity_cap = g.arity_cap;
  for (const auto& w : warnings) rb.warn(w);
  JacobiReport rep = check_jacobi(alg);
  for (int i = 1; i <= alg.arity_cap; ++i) {
    std::vector<ResidualWitness> here;
    for (const auto& fail : rep.failures)
      if (fail.arity == i) here.push_back(fail);
    rb.check("jacobi_arity_" + std::to_string(i), here.empty(),
             witness_strings(here, power(alg.space, i)));
  }
  if (!rep.degree_forced_zero.empty())
    rb.note("degree_forced_zero_arities", rep.degree_forced_zero);
  rb.note("complete_above_cap", rep.complete_above_cap);
  return rb.finish(g);
}

int cmd_check_rep(const GlobalOpts& g, const std::string& path,
                  const std::string& rep_name) {
  ReportBuilder rb("check rep", g);
  LoadedFile f = load_json_file(path);
  rb.input(f);
  std::vector<std::string> warnings;
  LInfinityAlgebra alg = load_algebra_for(f, &warnings, nullptr);
  alg.arity_cap = g.arity_cap;
  Representation rep;
  if (f.kind == "representation") {
    rep = representation_from_json(f.body, alg, &warnings);
  } else if (f.kind == "linfty_algebra") {
    rep = rep_by_name(rep_name.empty() ? "adjoint" : rep_name, alg,
                      f.path.parent_path(), &warnings);
  } else {
    throw io_error("check rep expects a representation or algebra file");
  }
  for (const auto& w : warnings) rb.warn(w);
  RepresentationReport rr = is_representation(alg, rep.action);
  rb.check("representation_predicate", rr.pass,
           witness_strings(rr.residual.difference_witnesses(zero_intertwiner(
                               alg.space, rep.space, rep.space, 2)),
                           concat(power(alg.space, 3), rep.space)));
  rb.check("predicate_routes_agree", rr.routes_agree,
           rr.incident.empty() ? std::vector<std::string>{}
                               : std::vector<std::string>{rr.incident});
  return rb.finish(g);
}

int cmd_check_poisson(const GlobalOpts& g, const std::string& path) {
  ReportBuilder rb("check poisson", g);
  LoadedFile f = load_json_file(path);
  rb.input(f);
  if (f.kind != "poisson_structure")
    throw io_error("check poisson expects a poisson_structure file");
  std::vector<std::string> warnings;
  LInfinityAlgebra alg = load_algebra_for(f, &warnings, nullptr);
  alg.arity_cap = g.arity_cap;
  ShiftedPoissonStructure sps = poisson_from_json(f.body, alg, &warnings);
  sps.weight_cap = g.weight_cap;
  sps.arity_cap = g.arity_cap;
  for (const auto& w : warnings) rb.warn(w);
  MCReport rep = check_mc(alg, sps);
  for (const auto& cell : rep.cells) {
    rb.check("maurer_cartan_w" + std::to_string(cell.weight) + "_i" +
                 std::to_string(cell.arity),
             cell.failures.empty(),
             witness_strings(cell.failures,
                             power(alg.space, cell.arity)));
  }
  rb.check("weight_routes_agree", rep.routes_agree,
           rep.incident.empty() ? std::vector<std::string>{}
                                : std::vector<std::string>{rep.incident});
  return rb.finish(g);
}

int cmd_check_axioms(const GlobalOpts& g, bool dg_only, bool monoidal_only) {
  ReportBuilder rb("check axioms", g);
  AxiomSuiteConfig cfg;
  cfg.seed = g.seed;
  cfg.instances = g.instances;
  cfg.arity_cap = g.arity_cap;
  cfg.jobs = g.jobs;
  cfg.dg_category = !monoidal_only;
  cfg.monoidal = !dg_only;
  AxiomCounts counts = run_axiom_suite(cfg);
  rb.note("instances", counts.instances);
  for (const auto& [name, fails] : counts.failures)
    rb.check(name, fails == 0,
             fails ? std::vector<std::string>{std::to_string(fails) +
                                              " failing instances"}
                   : std::vector<std::string>{});
  return rb.finish(g);
}

int cmd_check_braiding(const GlobalOpts& g, const std::string& alg_path,
                       const std::string& sps_path,
                       const std::string& reps_arg) {
  ReportBuilder rb("check braiding", g);
  LoadedFile af = load_json_file(alg_path);
  LoadedFile sf = load_json_file(sps_path);
  rb.input(af);
  rb.input(sf);
  if (af.kind != "linfty_algebra")
    throw io_error("first argument must be an algebra file");
  if (sf.kind != "poisson_structure")
    throw io_error("second argument must be a poisson_structure file");
  std::vector<std::string> warnings;
  LInfinityAlgebra alg = algebra_from_json(af.body, &warnings);
  alg.arity_cap = g.arity_cap;
  ShiftedPoissonStructure sps = poisson_from_json(sf.body, alg, &warnings);
  for (const auto& w : warnings) rb.warn(w);
  std::vector<std::string> names;
  {
    std::stringstream ss(reps_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) names.push_back(tok);
  }
  if (names.size() != 3)
    throw io_error("--reps expects three comma-separated entries");
  Representation u =
      rep_by_name(names[0], alg, af.path.parent_path(), &warnings);
  Representation v =
      rep_by_name(names[1], alg, af.path.parent_path(), &warnings);
  Representation w =
      rep_by_name(names[2], alg, af.path.parent_path(), &warnings);
  BraidingData data = build_braiding_data(alg, sps);
  BraidingCertificate cert = certify(alg, sps, u, v, w, data);
  for (const auto& c : cert.checks) {
    std::vector<std::string> ws;
    for (const auto& wit : c.witnesses) {
      ws.push_back("component " + std::to_string(wit.arity) + ": " +
                   wit.residual.str());
      if (ws.size() >= 4) break;
    }
    rb.check(c.name, c.pass, ws);
  }
  for (const auto& [name, value] : cert.info) rb.note(name, value);
  return rb.finish(g);
}

int cmd_check_ce(const GlobalOpts& g, const std::string& path) {
  ReportBuilder rb("check ce", g);
  LoadedFile f = load_json_file(path);
  rb.input(f);
  if (f.kind != "linfty_algebra")
    throw io_error("check ce expects an algebra file");
  std::vector<std::string> warnings;
  LInfinityAlgebra alg = algebra_from_json(f.body, &warnings);
  alg.arity_cap = g.arity_cap;
  for (const auto& w : warnings) rb.warn(w);
  CEAlgebra a(alg, g.word_cap);
  Representation adj = adjoint_rep(alg);
  InstanceGen gen({g.seed, 3, alg.space->min_degree(), alg.space->max_degree(),
                   g.arity_cap, 3});
  CESuiteReport suite = check_equivalence_suite(
      alg, adj, a, g.instances, [&]() {
        return std::pair<Intertwiner, Intertwiner>{
            gen.random_intertwiner(alg.space, adj.space, adj.space,
                                   gen.uniform(-1, 1), 3),
            gen.random_intertwiner(alg.space, adj.space, adj.space,
                                   gen.uniform(-1, 1), 3)};
      });
  rb.check("delta_squared", suite.delta_squared);
  rb.check("adjoint_module_d_squared", suite.module_d_squared);
  rb.check("ce_functoriality", suite.functoriality);
  rb.check("ce_dg_compatibility", suite.dg_compatibility);
  rb.check("ce_monoidality_differential", suite.monoidality_differential);
  rb.check("ce_monoidality_morphisms", suite.monoidality_morphisms);
  rb.check("ce_unit_preserved", suite.unit_preserved);
  rb.check("ce_braiding_preserved", suite.braiding_preserved);
  rb.note("random_pairs", suite.random_pairs);
  return rb.finish(g);
}

int cmd_ce_export(const GlobalOpts& g, const std::string& path,
                  const std::string& out) {
  LoadedFile f = load_json_file(path);
  if (f.kind != "linfty_algebra")
    throw io_error("ce export expects an algebra file");
  std::vector<std::string> warnings;
  LInfinityAlgebra alg = algebra_from_json(f.body, &warnings);
  CEAlgebra a(alg, g.word_cap);
  json j = ce_presentation_to_json(a, f.body.value("name", "algebra"));
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(out, j);
  }
  return 0;
}

Intertwiner load_intertwiner_file(const std::string& path,
                                  LInfinityAlgebra& alg_out,
                                  std::vector<std::string>* warnings) {
  LoadedFile f = load_json_file(path);
  if (f.kind != "intertwiner")
    throw io_error(path + " is not an intertwiner file");
  alg_out = load_algebra_for(f, warnings, nullptr);
  return intertwiner_from_json(f.body, alg_out, warnings);
}

int cmd_op(const GlobalOpts&, const std::string& verb,
           const std::string& lhs_path, const std::string& rhs_path,
           const std::string& src_rep, const std::string& tgt_rep,
           const std::string& out) {
  std::vector<std::string> warnings;
  LInfinityAlgebra alg;
  Intertwiner result;
  LoadedFile lf = load_json_file(lhs_path);
  std::string alg_ref = lf.body.value("algebra", "");
  if (verb == "compose" || verb == "odot") {
    LInfinityAlgebra alg2;
    Intertwiner a = load_intertwiner_file(lhs_path, alg, &warnings);
    Intertwiner b = load_intertwiner_file(rhs_path, alg2, &warnings);
    if (alg.space->name() != alg2.space->name())
      throw io_error("operands live over different algebras");
    // Re-read b over the first algebra's space so shapes share identity.
    LoadedFile bf = load_json_file(rhs_path);
    b = intertwiner_from_json(bf.body, alg, &warnings);
    result = verb == "compose" ? juxtapose(a, b) : odot(a, b);
  } else if (verb == "diff") {
    Intertwiner a = load_intertwiner_file(lhs_path, alg, &warnings);
    std::filesystem::path base =
        std::filesystem::path(lhs_path).parent_path();
    Representation ru = rep_by_name(src_rep, alg, base, &warnings);
    Representation rv = rep_by_name(tgt_rep, alg, base, &warnings);
    if (!same_shape(ru.space, a.source()) ||
        !same_shape(rv.space, a.target()))
      throw io_error("representation shapes do not match the intertwiner");
    result = hom_differential(alg, ru.action, rv.action, a);
  } else {
    throw io_error("unknown op verb " + verb);
  }
  json j = intertwiner_to_json(result, "result", alg_ref);
  for (const auto& w : warnings) std::cerr << "[warn] " << w << "\n";
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(out, j);
  }
  return 0;
}

int cmd_gen_random(const GlobalOpts& g, const std::string& kind,
                   const std::string& algebra_path, const std::string& out) {
  InstanceGen gen({g.seed, 3, -2, 2, g.arity_cap, 3});
  json j;
  if (kind == "algebra") {
    LInfinityAlgebra alg = gen.random_algebra();
    j = algebra_to_json(alg, "random_" + std::to_string(g.seed));
  } else if (kind == "representation" || kind == "intertwiner") {
    if (algebra_path.empty())
      throw io_error("gen random " + kind + " requires --algebra");
    LoadedFile f = load_json_file(algebra_path);
    LInfinityAlgebra alg = algebra_from_json(f.body, nullptr);
    // Reference the algebra by a path that stays valid next to the output.
    std::string alg_ref =
        std::filesystem::absolute(algebra_path).string();
    if (kind == "representation") {
      Representation rep = gen.random_representation(alg);
      if (rep.space.empty())
        rep = adjoint_rep(alg);  // the trivial draw has no file shape
      j = representation_to_json(rep, "random_" + std::to_string(g.seed),
                                 alg_ref);
    } else {
      // Endomorphism families of the adjoint slot compose and differentiate
      // against the named representations out of the box.
      Shape adj{alg.space};
      Intertwiner f2 = gen.random_intertwiner(alg.space, adj, adj,
                                              gen.uniform(-1, 1), 3);
      j = intertwiner_to_json(f2, "random_" + std::to_string(g.seed),
                              alg_ref);
    }
  } else {
    throw io_error("gen random kind must be algebra, representation or "
                   "intertwiner");
  }
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(out, j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus for homotopy Lie algebras, their "
               "representation category, infinitesimal 2-braidings and "
               "Chevalley-Eilenberg complexes"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--arity-cap,-A", g.arity_cap, "arity cap for all checks");
  app.add_option("--word-cap,-W", g.word_cap, "word-length cap for CE data");
  app.add_option("--weight-cap", g.weight_cap, "Poisson weight cap");
  app.add_option("--seed", g.seed, "random seed recorded in reports");
  app.add_option("--jobs", g.jobs, "parallel jobs for independent checks");
  app.add_option("--instances", g.instances,
                 "instance count for randomized suites");
  app.add_option("--format", g.format, "text | structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--output,-o", g.output, "write the JSON report here");

  // check ...
  auto* check = app.add_subcommand("check", "run a verification suite");
  check->require_subcommand(1);
  std::string path1, path2, reps = "adjoint,adjoint,adjoint", rep_name;
  auto* jac = check->add_subcommand("jacobi", "generalised Jacobi identity");
  jac->add_option("file", path1, "algebra file")->required();
  auto* repc = check->add_subcommand("rep", "representation predicate");
  repc->add_option("file", path1, "representation or algebra file")
      ->required();
  repc->add_option("--rep", rep_name, "adjoint | trivial | adjoint2");
  auto* poi = check->add_subcommand("poisson", "Maurer-Cartan equation");
  poi->add_option("file", path1, "poisson_structure file")->required();
  auto* axi = check->add_subcommand("axioms",
                                    "randomized category axiom suites");
  bool dg_only = false, mon_only = false;
  axi->add_flag("--dg-only", dg_only, "only the dg-category axioms");
  axi->add_flag("--monoidal-only", mon_only,
                "only the symmetric monoidal axioms");
  auto* bra = check->add_subcommand("braiding",
                                    "infinitesimal 2-braiding certificate");
  bra->add_option("algebra", path1, "algebra file")->required();
  bra->add_option("poisson", path2, "poisson_structure file")->required();
  bra->add_option("--reps", reps, "three reps: adjoint|trivial|adjoint2|file");
  auto* cec = check->add_subcommand("ce", "Chevalley-Eilenberg suite");
  cec->add_option("file", path1, "algebra file")->required();

  // op ...
  auto* op = app.add_subcommand("op", "compute with intertwiners");
  op->require_subcommand(1);
  std::string op_lhs, op_rhs, src_rep = "adjoint", tgt_rep = "adjoint";
  auto* cmp = op->add_subcommand("compose", "juxtaposition g after f");
  cmp->add_option("g", op_lhs, "outer intertwiner file")->required();
  cmp->add_option("f", op_rhs, "inner intertwiner file")->required();
  auto* odt = op->add_subcommand("odot", "monoidal product f . g");
  odt->add_option("f", op_lhs)->required();
  odt->add_option("g", op_rhs)->required();
  auto* dif = op->add_subcommand("diff", "hom differential of f");
  dif->add_option("f", op_lhs)->required();
  dif->add_option("--source-rep", src_rep, "adjoint | trivial | file");
  dif->add_option("--target-rep", tgt_rep, "adjoint | trivial | file");

  // ce export
  auto* ce = app.add_subcommand("ce", "Chevalley-Eilenberg exports");
  ce->require_subcommand(1);
  auto* cex = ce->add_subcommand("export", "emit the CE presentation");
  cex->add_option("file", path1, "algebra file")->required();

  // gen random
  auto* genc = app.add_subcommand("gen", "generate fixtures");
  genc->require_subcommand(1);
  auto* rnd = genc->add_subcommand("random", "seeded random instance");
  std::string kind = "algebra", gen_algebra;
  rnd->add_option("--kind", kind, "algebra | representation | intertwiner");
  rnd->add_option("--algebra", gen_algebra, "algebra file for dependents");

  // Global flags may appear after any subcommand.
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands(nullptr)) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  CLI11_PARSE(app, argc, argv);

  try {
    if (jac->parsed()) return cmd_check_jacobi(g, path1);
    if (repc->parsed()) return cmd_check_rep(g, path1, rep_name);
    if (poi->parsed()) return cmd_check_poisson(g, path1);
    if (axi->parsed()) return cmd_check_axioms(g, dg_only, mon_only);
    if (bra->parsed()) return cmd_check_braiding(g, path1, path2, reps);
    if (cec->parsed()) return cmd_check_ce(g, path1);
    if (cmp->parsed()) return cmd_op(g, "compose", op_lhs, op_rhs, "", "",
                                     g.output);
    if (odt->parsed()) return cmd_op(g, "odot", op_lhs, op_rhs, "", "",
                                     g.output);
    if (dif->parsed()) return cmd_op(g, "diff", op_lhs, "", src_rep, tgt_rep,
                                     g.output);
    if (cex->parsed()) return cmd_ce_export(g, path1, g.output);
    if (rnd->parsed()) return cmd_gen_random(g, kind, gen_algebra, g.output);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no command\n";
  return 2;
}
