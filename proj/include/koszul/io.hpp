#pragma once

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "koszul/braiding.hpp"
#include "koszul/ce.hpp"

namespace koszul {

using nlohmann::json;

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail_io {

inline json parse(const std::string& bytes, const std::string& what) {
  json j = json::parse(bytes, nullptr, false);
  if (j.is_discarded()) throw io_error("malformed JSON in " + what);
  return j;
}

inline Rational coeff_of(const json& j, const std::string& where) {
  if (!j.is_string())
    throw io_error("coefficient must be a rational string at " + where);
  auto r = parse_rational(j.get<std::string>());
  if (!r)
    throw io_error("malformed rational '" + j.get<std::string>() + "' at " +
                   where);
  return *r;
}

inline SpaceRef space_from_json(const json& j, const std::string& name) {
  if (!j.is_array()) throw io_error("basis of " + name + " must be a list");
  std::vector<BasisElement> basis;
  for (const auto& b : j) {
    if (!b.contains("label") || !b.contains("degree"))
      throw io_error("basis entries need label and degree in " + name);
    basis.push_back({b["label"].get<std::string>(), b["degree"].get<int>()});
  }
  return make_space(name, std::move(basis));
}

inline json space_to_json(const GradedSpace& s) {
  json out = json::array();
  for (const auto& b : s.basis())
    out.push_back({{"label", b.label}, {"degree", b.degree}});
  return out;
}

/// Looks up each label in the per-slot space list.
inline TensorKey key_from_labels(const json& labels, const Shape& shape,
                                 const std::string& where) {
  if (!labels.is_array() || labels.size() != shape.size())
    throw io_error("expected " + std::to_string(shape.size()) +
                   " labels at " + where);
  TensorKey key;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    std::size_t idx = shape[i]->find(labels[i].get<std::string>());
    if (idx == GradedSpace::npos)
      throw io_error("unknown label '" + labels[i].get<std::string>() +
                     "' at " + where);
    key.push_back(static_cast<std::uint32_t>(idx));
  }
  return key;
}

inline GradedElement element_from_json(const json& j, const Shape& shape,
                                       const std::string& where) {
  GradedElement e(shape);
  if (!j.is_array()) throw io_error("output must be a list at " + where);
  for (const auto& t : j) {
    if (!t.contains("labels") || !t.contains("coeff"))
      throw io_error("output terms need labels and coeff at " + where);
    e.add(key_from_labels(t["labels"], shape, where),
          coeff_of(t["coeff"], where));
  }
  return e;
}

inline json element_to_json(const GradedElement& e) {
  json out = json::array();
  for (const auto& [k, c] : e.terms()) {
    json labels = json::array();
    for (std::size_t i = 0; i < k.size(); ++i)
      labels.push_back(e.shape()[i]->label(k[i]));
    out.push_back({{"labels", labels}, {"coeff", to_string(c)}});
  }
  return out;
}

/// Populates one multimap from an entries list; non-canonical keys are
/// accepted (the storage normalizes) and reported through `warnings`.
inline void entries_into_map(const json& entries, SkewMultiMap& m,
                             const std::string& where,
                             std::vector<std::string>* warnings) {
  Shape src = m.source_shape();
  for (const auto& entry : entries) {
    if (!entry.contains("inputs") || !entry.contains("output"))
      throw io_error("entries need inputs and output at " + where);
    TensorKey key = key_from_labels(entry["inputs"], src, where);
    if (warnings) {
      TensorKey skew(key.begin(), key.begin() + m.garity());
      NormalizedKey nf = skew_normalize(*m.algebra_space(), skew);
      if (!nf.zero && (nf.key != skew || nf.sign != 1))
        warnings->push_back("non-canonical key auto-normalized at " + where);
    }
    GradedElement value =
        element_from_json(entry["output"], m.target_shape(), where);
    try {
      m.add(key, value);
    } catch (const std::invalid_argument& err) {
      throw io_error(std::string(err.what()) + " at " + where);
    }
  }
}

inline json map_entries_to_json(const SkewMultiMap& m) {
  json out = json::array();
  Shape src = m.source_shape();
  for (const auto& [k, v] : m.entries()) {
    json inputs = json::array();
    for (std::size_t i = 0; i < k.size(); ++i)
      inputs.push_back(src[i]->label(k[i]));
    out.push_back({{"inputs", inputs}, {"output", element_to_json(v)}});
  }
  return out;
}

}  // namespace detail_io

// ---------------------------------------------------------------------------
// Algebras

inline LInfinityAlgebra algebra_from_json(const json& j,
                                          std::vector<std::string>* warnings) {
  using namespace detail_io;
  if (j.value("kind", "") != "linfty_algebra")
    throw io_error("expected kind linfty_algebra");
  SpaceRef g = space_from_json(j.at("basis"), j.value("name", "g"));
  LInfinityAlgebra alg{g, {}, j.value("arity_cap", 4)};
  if (alg.arity_cap < 1) throw io_error("arity_cap must be >= 1");
  for (const auto& br : j.value("brackets", json::array())) {
    int arity = br.at("arity").get<int>();
    if (arity < 1) throw io_error("bracket arity must be >= 1");
    SkewMultiMap m(g, arity, Shape{}, Shape{g}, 2 - arity);
    entries_into_map(br.value("entries", json::array()), m,
                     "bracket arity " + std::to_string(arity), warnings);
    if (!m.is_zero()) alg.set_bracket(std::move(m));
  }
  return alg;
}

inline json algebra_to_json(const LInfinityAlgebra& alg,
                            const std::string& name) {
  using namespace detail_io;
  json out{{"kind", "linfty_algebra"},
           {"name", name},
           {"basis", space_to_json(*alg.space)},
           {"arity_cap", alg.arity_cap}};
  json brackets = json::array();
  for (const auto& [i, m] : alg.brackets)
    if (!m.is_zero())
      brackets.push_back({{"arity", i}, {"entries", map_entries_to_json(m)}});
  out["brackets"] = brackets;
  return out;
}

// ---------------------------------------------------------------------------
// Representations

inline Representation representation_from_json(
    const json& j, const LInfinityAlgebra& alg,
    std::vector<std::string>* warnings) {
  using namespace detail_io;
  if (j.value("kind", "") != "representation")
    throw io_error("expected kind representation");
  SpaceRef v = space_from_json(j.at("space"), j.value("name", "V"));
  Shape space{v};
  Intertwiner rho(alg.space, space, space, 1, 0);
  for (const auto& comp : j.value("action", json::array())) {
    int arity = comp.at("arity").get<int>();
    if (arity < 1) throw io_error("action arity must be >= 1");
    SkewMultiMap m = rho.make_component(arity);
    entries_into_map(comp.value("entries", json::array()), m,
                     "action arity " + std::to_string(arity), warnings);
    rho.set_component(arity, std::move(m));
  }
  return {space, std::move(rho), false};
}

inline json representation_to_json(const Representation& rep,
                                   const std::string& name,
                                   const std::string& algebra_path) {
  using namespace detail_io;
  json out{{"kind", "representation"},
           {"name", name},
           {"algebra", algebra_path},
           {"space", space_to_json(*rep.space.at(0))}};
  json action = json::array();
  for (int i = 1; i <= rep.action.extent(); ++i)
    if (const SkewMultiMap* m = rep.action.component(i))
      if (!m->is_zero())
        action.push_back(
            {{"arity", i}, {"entries", map_entries_to_json(*m)}});
  out["action"] = action;
  return out;
}

// ---------------------------------------------------------------------------
// Poisson structures

inline ShiftedPoissonStructure poisson_from_json(
    const json& j, const LInfinityAlgebra& alg,
    std::vector<std::string>* warnings) {
  using namespace detail_io;
  if (j.value("kind", "") != "poisson_structure")
    throw io_error("expected kind poisson_structure");
  ShiftedPoissonStructure sps{alg.space, j.value("shift", 2), {},
                              j.value("weight_cap", 3),
                              j.value("arity_cap", alg.arity_cap)};
  for (const auto& comp : j.value("components", json::array())) {
    int w = comp.at("weight").get<int>();
    int i = comp.at("arity").get<int>();
    PolyMap p = PolyMap::zero(alg.space, i, w, (1 - w) * sps.shift + 2 - i);
    entries_into_map(comp.value("entries", json::array()), p.map,
                     "pi weight " + std::to_string(w) + " arity " +
                         std::to_string(i),
                     warnings);
    if (!p.is_zero()) {
      try {
        sps.set_component(w, i, std::move(p));
      } catch (const std::invalid_argument& err) {
        throw io_error(err.what());
      }
    }
  }
  return sps;
}

inline json poisson_to_json(const ShiftedPoissonStructure& sps,
                            const std::string& name,
                            const std::string& algebra_path) {
  using namespace detail_io;
  json out{{"kind", "poisson_structure"},
           {"name", name},
           {"algebra", algebra_path},
           {"shift", sps.shift},
           {"weight_cap", sps.weight_cap},
           {"arity_cap", sps.arity_cap}};
  json comps = json::array();
  for (const auto& [key, p] : sps.components)
    if (!p.is_zero())
      comps.push_back({{"weight", key.first},
                       {"arity", key.second},
                       {"entries", map_entries_to_json(p.map)}});
  out["components"] = comps;
  return out;
}

// ---------------------------------------------------------------------------
// Intertwiners

struct NamedSpaces {
  std::map<std::string, SpaceRef> table;

  Shape shape_from_json(const json& j, const SpaceRef& g) const {
    Shape s;
    for (const auto& name : j) {
      std::string n = name.get<std::string>();
      if (n == "g") {
        s.push_back(g);
      } else {
        auto it = table.find(n);
        if (it == table.end()) throw io_error("unknown space '" + n + "'");
        s.push_back(it->second);
      }
    }
    return s;
  }
};

inline Intertwiner intertwiner_from_json(const json& j,
                                         const LInfinityAlgebra& alg,
                                         std::vector<std::string>* warnings) {
  using namespace detail_io;
  if (j.value("kind", "") != "intertwiner")
    throw io_error("expected kind intertwiner");
  NamedSpaces spaces;
  for (const auto& sp : j.value("spaces", json::array()))
    spaces.table.emplace(sp.at("name").get<std::string>(),
                         space_from_json(sp.at("basis"),
                                         sp.at("name").get<std::string>()));
  Shape src = spaces.shape_from_json(j.at("source"), alg.space);
  Shape tgt = spaces.shape_from_json(j.at("target"), alg.space);
  Intertwiner f(alg.space, src, tgt, j.value("degree", 0), 0);
  for (const auto& comp : j.value("components", json::array())) {
    int arity = comp.at("arity").get<int>();
    if (arity < 1) throw io_error("component arity must be >= 1");
    SkewMultiMap m = f.make_component(arity);
    entries_into_map(comp.value("entries", json::array()), m,
                     "component arity " + std::to_string(arity), warnings);
    f.set_component(arity, std::move(m));
  }
  return f;
}

inline json intertwiner_to_json(const Intertwiner& f, const std::string& name,
                                const std::string& algebra_path) {
  using namespace detail_io;
  json out{{"kind", "intertwiner"},
           {"name", name},
           {"algebra", algebra_path},
           {"degree", f.degree()}};
  // Emit auxiliary space definitions for every non-algebra factor.
  std::map<std::string, SpaceRef> seen;
  auto shape_names = [&](const Shape& s) {
    json arr = json::array();
    for (const auto& sp : s) {
      if (sp.get() == f.algebra_space().get()) {
        arr.push_back("g");
      } else {
        arr.push_back(sp->name());
        seen.emplace(sp->name(), sp);
      }
    }
    return arr;
  };
  out["source"] = shape_names(f.source());
  out["target"] = shape_names(f.target());
  json spaces = json::array();
  for (const auto& [n, sp] : seen)
    spaces.push_back({{"name", n}, {"basis", space_to_json(*sp)}});
  out["spaces"] = spaces;
  json comps = json::array();
  for (int i = 1; i <= f.extent(); ++i)
    if (const SkewMultiMap* m = f.component(i))
      if (!m->is_zero())
        comps.push_back({{"arity", i}, {"entries", map_entries_to_json(*m)}});
  out["components"] = comps;
  return out;
}

// ---------------------------------------------------------------------------
// CE presentation export

inline json ce_presentation_to_json(const CEAlgebra& a,
                                    const std::string& algebra_name) {
  json out{{"kind", "ce_presentation"},
           {"algebra", algebra_name},
           {"word_cap", a.word_cap()}};
  json gens = json::array();
  for (std::uint32_t g = 0; g < a.space()->dim(); ++g)
    gens.push_back({{"label", a.theta_label(g)},
                    {"degree", a.theta_degree(g)},
                    {"dual_of", a.space()->label(g)}});
  out["generators"] = gens;
  json delta = json::array();
  for (std::uint32_t g = 0; g < a.space()->dim(); ++g) {
    json terms = json::array();
    for (const auto& [m, c] : a.delta_of_generator(g).terms()) {
      json word = json::array();
      for (auto t : m) word.push_back(a.theta_label(t));
      terms.push_back({{"word", word}, {"coeff", to_string(c)}});
    }
    delta.push_back({{"generator", a.theta_label(g)}, {"terms", terms}});
  }
  out["delta"] = delta;
  return out;
}

// ---------------------------------------------------------------------------
// File-level loading with cross-references

struct LoadedFile {
  std::string kind;
  json body;
  std::filesystem::path path;
  std::string digest;
};

inline LoadedFile load_json_file(const std::filesystem::path& path) {
  std::string bytes = read_file(path);
  LoadedFile f;
  f.body = detail_io::parse(bytes, path.string());
  f.kind = f.body.value("kind", "");
  f.path = path;
  f.digest = fnv1a_digest(bytes);
  return f;
}

/// Loads the algebra a file refers to (or the file itself when it is one).
inline LInfinityAlgebra load_algebra_for(const LoadedFile& f,
                                         std::vector<std::string>* warnings,
                                         std::string* algebra_digest) {
  if (f.kind == "linfty_algebra") {
    if (algebra_digest) *algebra_digest = f.digest;
    return algebra_from_json(f.body, warnings);
  }
  if (!f.body.contains("algebra"))
    throw io_error(f.path.string() + " does not reference an algebra file");
  std::filesystem::path apath =
      f.path.parent_path() / f.body["algebra"].get<std::string>();
  LoadedFile af = load_json_file(apath);
  if (af.kind != "linfty_algebra")
    throw io_error(apath.string() + " is not an algebra file");
  if (algebra_digest) *algebra_digest = af.digest;
  return algebra_from_json(af.body, warnings);
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace koszul
