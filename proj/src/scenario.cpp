#include "gcr/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>

namespace gcr::scenario {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ScenarioError(path + ": " + msg); }

void only(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
      fail(path + "." + k, "unknown field");
  }
}

const json& need(const json& j, const std::string& path, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

long long as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<int> int_list(const json& j, const std::string& path) {
  std::vector<int> out;
  const auto& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(static_cast<int>(as_int(a[i], path + "[" + std::to_string(i) + "]")));
  return out;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

fq::FieldPtr parse_field(const json& j, const std::string& path) {
  only(j, path, {"q", "modulus"});
  const long long q = as_int(need(j, path, "q"), path + ".q");
  if (q < 2 || q > 65536) fail(path + ".q", "field order out of range");
  long long p = 2;
  while (q % p) ++p;
  int k = 0;
  for (long long r = q; r > 1; r /= p) {
    if (r % p) fail(path + ".q", std::to_string(q) + " is not a prime power");
    ++k;
  }
  try {
    if (k == 1) {
      if (j.contains("modulus")) fail(path + ".modulus", "prime fields take no modulus");
      return fq::Field::prime(static_cast<std::uint32_t>(p));
    }
    if (!j.contains("modulus")) fail(path + ".modulus", "F_" + std::to_string(q) + " needs an irreducible modulus");
    std::vector<std::uint32_t> mod;
    for (int c : int_list(j["modulus"], path + ".modulus")) {
      if (c < 0 || c >= p) fail(path + ".modulus", "coefficients must lie in [0, p)");
      mod.push_back(static_cast<std::uint32_t>(c));
    }
    if (static_cast<int>(mod.size()) != k + 1)
      fail(path + ".modulus", "expected " + std::to_string(k + 1) + " coefficients (x^0 first) for degree " +
                                  std::to_string(k));
    return fq::Field::extension(static_cast<std::uint32_t>(p), mod);
  } catch (const fq::FieldError& e) {
    fail(path, e.what());
  }
}

ordered_json emit_field(const fq::FieldPtr& f) {
  ordered_json j;
  j["q"] = f->order();
  if (!f->is_prime()) j["modulus"] = f->modulus();
  return j;
}

model::ElementAction parse_action(const json& j, const std::string& path, const std::vector<rootdata::CartanType>& types) {
  model::ElementAction a;
  a.perm = int_list(need(j, path, "permutation"), path + ".permutation");
  if (a.perm.size() != types.size())
    fail(path + ".permutation", "expected one entry per component (" + std::to_string(types.size()) + ")");
  for (int x : a.perm)
    if (x < 0 || x >= static_cast<int>(types.size())) fail(path + ".permutation", "component index out of range");
  const auto& d = as_array(need(j, path, "diagram"), path + ".diagram");
  if (d.size() != types.size()) fail(path + ".diagram", "expected one diagram permutation per component");
  for (std::size_t i = 0; i < d.size(); ++i) {
    rootdata::DiagramAutomorphism da{int_list(d[i], at(path + ".diagram", i))};
    if (static_cast<int>(da.perm.size()) != types[i].rank)
      fail(at(path + ".diagram", i), "expected " + std::to_string(types[i].rank) + " entries for " + types[i].name());
    a.diag.push_back(std::move(da));
  }
  return a;
}

ordered_json emit_action(const model::ElementAction& a) {
  ordered_json j;
  j["permutation"] = a.perm;
  auto d = ordered_json::array();
  for (const auto& x : a.diag) d.push_back(x.perm);
  j["diagram"] = d;
  return j;
}

model::ComponentGroup parse_component_group(const json& j, const std::string& path,
                                            const std::vector<rootdata::CartanType>& types) {
  if (j.contains("generators")) {
    only(j, path, {"generators"});
    const auto& gs = as_array(j["generators"], path + ".generators");
    std::vector<model::ComponentGroup::Generator> gens;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const std::string gp = at(path + ".generators", i);
      only(gs[i], gp, {"name", "permutation", "diagram", "tag"});
      model::ComponentGroup::Generator g;
      g.name = as_string(need(gs[i], gp, "name"), gp + ".name");
      g.action = parse_action(gs[i], gp, types);
      if (gs[i].contains("tag")) g.tag = int_list(gs[i]["tag"], gp + ".tag");
      gens.push_back(std::move(g));
    }
    return model::ComponentGroup::from_generators(types, gens);
  }
  if (j.contains("elements")) {
    only(j, path, {"elements", "table", "actions"});
    std::vector<std::string> names;
    const auto& es = as_array(j["elements"], path + ".elements");
    for (std::size_t i = 0; i < es.size(); ++i) names.push_back(as_string(es[i], at(path + ".elements", i)));
    const auto& t = as_array(need(j, path, "table"), path + ".table");
    if (t.size() != names.size()) fail(path + ".table", "expected one row per element");
    std::vector<std::vector<int>> table;
    for (std::size_t i = 0; i < t.size(); ++i) {
      table.push_back(int_list(t[i], at(path + ".table", i)));
      if (table.back().size() != names.size()) fail(at(path + ".table", i), "expected one entry per element");
      for (int x : table.back())
        if (x < 0 || x >= static_cast<int>(names.size())) fail(at(path + ".table", i), "element index out of range");
    }
    const auto& as = as_array(need(j, path, "actions"), path + ".actions");
    if (as.size() != names.size()) fail(path + ".actions", "expected one action per element");
    std::vector<model::ElementAction> actions;
    for (std::size_t i = 0; i < as.size(); ++i) {
      only(as[i], at(path + ".actions", i), {"permutation", "diagram"});
      actions.push_back(parse_action(as[i], at(path + ".actions", i), types));
    }
    return model::ComponentGroup::from_table(types, std::move(names), std::move(table), std::move(actions));
  }
  only(j, path, {});
  return model::ComponentGroup::trivial(types);
}

ordered_json emit_component_group(const model::ComponentGroup& g) {
  ordered_json j;
  j["elements"] = g.names();
  j["table"] = g.table();
  auto acts = ordered_json::array();
  for (const auto& a : g.actions()) acts.push_back(emit_action(a));
  j["actions"] = acts;
  return j;
}

model::GroupShape parse_shape(const json& j, const std::string& path, int characteristic) {
  only(j, path, {"label", "radical_rank", "components", "component_group"});
  model::GroupShape g;
  g.characteristic = characteristic;
  if (j.contains("label")) g.label = as_string(j["label"], path + ".label");
  if (j.contains("radical_rank")) {
    g.radical_rank = static_cast<int>(as_int(j["radical_rank"], path + ".radical_rank"));
    if (g.radical_rank < 0) fail(path + ".radical_rank", "must be non-negative");
  }
  const auto& cs = as_array(need(j, path, "components"), path + ".components");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string cp = at(path + ".components", i);
    only(cs[i], cp, {"type", "isogeny"});
    model::SimpleComponent c;
    c.id = static_cast<int>(i);
    const std::string type = as_string(need(cs[i], cp, "type"), cp + ".type");
    try {
      c.type = parse_type(type);
    } catch (const std::exception& e) {
      fail(cp + ".type", e.what());
    }
    if (cs[i].contains("isogeny")) c.declared_isogeny = as_string(cs[i]["isogeny"], cp + ".isogeny");
    g.components.push_back(std::move(c));
  }
  g.component_group = parse_component_group(j.contains("component_group") ? j["component_group"] : json::object(),
                                            path + ".component_group", g.types());
  g.validate();
  return g;
}

ordered_json emit_shape(const model::GroupShape& g) {
  ordered_json j;
  j["label"] = g.label;
  j["radical_rank"] = g.radical_rank;
  auto cs = ordered_json::array();
  for (const auto& c : g.components) cs.push_back({{"type", c.type.name()}, {"isogeny", c.declared_isogeny}});
  j["components"] = cs;
  j["component_group"] = emit_component_group(g.component_group);
  return j;
}

model::Intersection parse_intersection(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "trivial") return model::Intersection::trivial();
    if (s == "opaque") return model::Intersection::opaque();
    fail(path, "expected \"trivial\", \"opaque\" or {\"label\": ...}");
  }
  only(j, path, {"label"});
  const std::string l = as_string(need(j, path, "label"), path + ".label");
  if (l.empty() || l == "1") fail(path + ".label", "reserved label");
  return model::Intersection::named(l);
}

ordered_json emit_intersection(const model::Intersection& x) {
  switch (x.kind) {
    case model::Intersection::Kind::Trivial: return "trivial";
    case model::Intersection::Kind::Opaque: return "opaque";
    case model::Intersection::Kind::Named: return {{"label", x.label}};
  }
  return "opaque";
}

std::vector<int> parse_image(const json& j, const std::string& path, const model::ComponentGroup& g) {
  auto lookup = [&](const json& name, const std::string& p) {
    const std::string s = as_string(name, p);
    try {
      return g.index_of(s);
    } catch (const model::ModelError&) {
      fail(p, "no component group element named '" + s + "'");
    }
  };
  if (j.is_object()) {
    only(j, path, {"generators"});
    const auto& gs = as_array(need(j, path, "generators"), path + ".generators");
    std::vector<int> gens;
    for (std::size_t i = 0; i < gs.size(); ++i) gens.push_back(lookup(gs[i], at(path + ".generators", i)));
    return g.closure(gens);
  }
  const auto& a = as_array(j, path);
  std::vector<int> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(lookup(a[i], at(path, i)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!g.is_subgroup(out)) throw model::ModelError("invariant violated at " + path + ": image is not a subgroup");
  return out;
}

ordered_json emit_image(const std::vector<int>& img, const model::ComponentGroup& g) {
  auto a = ordered_json::array();
  for (int c : img) a.push_back(g.name(c));
  return a;
}

model::FactTable parse_facts(const json& j, const std::string& path) {
  model::FactTable t;
  const auto& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string fp = at(path, i);
    only(a[i], fp, {"query", "answer", "reference"});
    model::Fact f;
    f.answer = as_bool(need(a[i], fp, "answer"), fp + ".answer");
    f.provenance = model::Provenance::Asserted;
    if (a[i].contains("reference")) f.reference = as_string(a[i]["reference"], fp + ".reference");
    try {
      t.insert(as_string(need(a[i], fp, "query"), fp + ".query"), f);
    } catch (const model::ModelError& e) {
      fail(fp, e.what());
    }
  }
  return t;
}

ordered_json emit_facts(const model::FactTable& t) {
  auto a = ordered_json::array();
  for (const auto& [q, f] : t.entries()) {
    ordered_json e;
    e["query"] = q;
    e["answer"] = f.answer;
    if (!f.reference.empty()) e["reference"] = f.reference;
    a.push_back(e);
  }
  return a;
}

std::map<std::string, model::ShapeFact> parse_shapes(const json& j, const std::string& path, int characteristic) {
  if (!j.is_object()) fail(path, "expected an object keyed by shape query");
  std::map<std::string, model::ShapeFact> out;
  for (const auto& [key, v] : j.items()) {
    const std::string sp = path + "." + key;
    only(v, sp, {"ambient", "image", "intersection"});
    model::ShapeFact s;
    s.shape = parse_shape(need(v, sp, "ambient"), sp + ".ambient", characteristic);
    const auto& img = as_array(need(v, sp, "image"), sp + ".image");
    for (std::size_t i = 0; i < img.size(); ++i) {
      s.image.push_back(as_string(img[i], at(sp + ".image", i)));
      try {
        s.shape.component_group.index_of(s.image.back());
      } catch (const model::ModelError&) {
        fail(at(sp + ".image", i), "no component group element named '" + s.image.back() + "'");
      }
    }
    if (v.contains("intersection")) s.intersection = parse_intersection(v["intersection"], sp + ".intersection");
    out.emplace(key, std::move(s));
  }
  return out;
}

ordered_json emit_shapes(const std::map<std::string, model::ShapeFact>& shapes) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, s] : shapes) {
    ordered_json e;
    e["ambient"] = emit_shape(s.shape);
    e["image"] = s.image;
    e["intersection"] = emit_intersection(s.intersection);
    j[k] = e;
  }
  return j;
}

model::SubgroupDescriptor parse_subgroup(const json& j, const std::string& path, const model::GroupShape& g,
                                         std::size_t cap) {
  const std::string kind = as_string(need(j, path, "kind"), path + ".kind");
  const std::string label = j.contains("label") ? as_string(j["label"], path + ".label") : "H";
  model::FactTable facts = j.contains("facts") ? parse_facts(j["facts"], path + ".facts") : model::FactTable{};
  auto shapes = j.contains("shapes") ? parse_shapes(j["shapes"], path + ".shapes", g.characteristic)
                                     : std::map<std::string, model::ShapeFact>{};
  if (kind == "abstract") {
    only(j, path, {"kind", "label", "image", "intersection", "facts", "shapes"});
    model::AbstractSubgroup a;
    a.label = label;
    const json& img = need(j, path, "image");
    if (!(img.is_string() && img.get<std::string>() == "opaque")) a.image = parse_image(img, path + ".image", g.component_group);
    a.intersection = parse_intersection(need(j, path, "intersection"), path + ".intersection");
    a.facts = std::move(facts);
    a.shapes = std::move(shapes);
    return a;
  }
  if (kind == "matrix") {
    only(j, path, {"kind", "label", "field", "generators", "facts", "shapes"});
    const auto field = parse_field(need(j, path, "field"), path + ".field");
    if (static_cast<int>(field->characteristic()) != g.characteristic)
      fail(path + ".field", "characteristic differs from the scenario characteristic");
    const auto& gs = as_array(need(j, path, "generators"), path + ".generators");
    std::vector<model::MatrixElement> gens;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const std::string gp = at(path + ".generators", i);
      only(gs[i], gp, {"component", "parts"});
      model::MatrixElement e;
      if (gs[i].contains("component")) {
        const std::string name = as_string(gs[i]["component"], gp + ".component");
        try {
          e.c = g.component_group.index_of(name);
        } catch (const model::ModelError&) {
          fail(gp + ".component", "no component group element named '" + name + "'");
        }
      }
      const auto& ps = as_array(need(gs[i], gp, "parts"), gp + ".parts");
      if (ps.size() != g.components.size())
        fail(gp + ".parts", "expected one matrix per simple component (" + std::to_string(g.components.size()) + ")");
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const std::string pp = at(gp + ".parts", k);
        const auto& a = as_array(ps[k], pp);
        std::vector<long long> entries;
        for (std::size_t r = 0; r < a.size(); ++r) entries.push_back(as_int(a[r], at(pp, r)));
        const int d = g.components[k].type.rank + 1;
        try {
          e.parts.push_back(fq::Matrix::from_ints(field, d, entries));
        } catch (const fq::FieldError& err) {
          fail(pp, err.what());
        }
      }
      gens.push_back(std::move(e));
    }
    return model::make_matrix_subgroup(g, label, field, std::move(gens), std::move(facts), std::move(shapes), cap);
  }
  fail(path + ".kind", "expected \"abstract\" or \"matrix\"");
}

std::vector<std::string> split_letters_digits(const std::string& s) {
  static const std::regex re("^([A-Ga-g])([0-9]+)$");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return {};
  return {m[1].str(), m[2].str()};
}

}  // namespace

rootdata::CartanType parse_type(const std::string& text) {
  const auto parts = split_letters_digits(text);
  if (parts.empty()) throw ScenarioError("'" + text + "' is not a Cartan type such as A1 or D4");
  return rootdata::CartanType::parse(parts[0], std::stoi(parts[1]));
}

Scenario parse_scenario(const json& doc) {
  const std::string root = "$";
  only(doc, root, {"version", "characteristic", "ambient", "subgroup", "options"});
  const long long version = as_int(need(doc, root, "version"), "$.version");
  if (version != kVersion) fail("$.version", "unsupported version " + std::to_string(version));
  const long long p = as_int(need(doc, root, "characteristic"), "$.characteristic");
  if (p != 0 && !fq::is_prime_number(static_cast<std::uint64_t>(std::max(0LL, p))))
    fail("$.characteristic", "must be 0 or a prime");

  Scenario s;
  if (doc.contains("options")) {
    const auto& o = doc["options"];
    only(o, "$.options", {"max_group_order", "max_spin", "max_algebra_dim", "second_reduction", "trace_format"});
    auto positive = [&](const char* key) {
      const long long v = as_int(o[key], std::string("$.options.") + key);
      if (v <= 0) fail(std::string("$.options.") + key, "must be positive");
      return static_cast<std::size_t>(v);
    };
    if (o.contains("max_group_order")) s.config.bounds.max_group_order = positive("max_group_order");
    if (o.contains("max_spin")) s.config.bounds.max_spin = positive("max_spin");
    if (o.contains("max_algebra_dim")) s.config.bounds.max_algebra_dim = positive("max_algebra_dim");
    if (o.contains("second_reduction"))
      s.config.second_reduction = as_bool(o["second_reduction"], "$.options.second_reduction");
    if (o.contains("trace_format")) {
      s.trace_format = as_string(o["trace_format"], "$.options.trace_format");
      if (s.trace_format != "text" && s.trace_format != "json") fail("$.options.trace_format", "expected text or json");
    }
  }
  s.pair.ambient = parse_shape(need(doc, root, "ambient"), "$.ambient", static_cast<int>(p));
  s.pair.subgroup = parse_subgroup(need(doc, root, "subgroup"), "$.subgroup", s.pair.ambient,
                                   s.config.bounds.max_group_order);
  return s;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError(path.string() + ": invalid JSON: " + e.what());
  }
}

Scenario parse_scenario_file(const std::filesystem::path& path) { return parse_scenario(read_json_file(path)); }

ordered_json emit_scenario(const Scenario& s) {
  ordered_json j;
  j["version"] = kVersion;
  j["characteristic"] = s.pair.ambient.characteristic;
  j["ambient"] = emit_shape(s.pair.ambient);
  const auto& cg = s.pair.ambient.component_group;
  ordered_json sub;
  if (const auto* a = std::get_if<model::AbstractSubgroup>(&s.pair.subgroup)) {
    sub["kind"] = "abstract";
    sub["label"] = a->label;
    sub["image"] = a->image ? emit_image(*a->image, cg) : ordered_json("opaque");
    sub["intersection"] = emit_intersection(a->intersection);
    sub["facts"] = emit_facts(a->facts);
    sub["shapes"] = emit_shapes(a->shapes);
  } else {
    const auto& m = std::get<model::MatrixSubgroup>(s.pair.subgroup);
    sub["kind"] = "matrix";
    sub["label"] = m.label;
    sub["field"] = emit_field(m.field);
    auto gens = ordered_json::array();
    for (const auto& g : m.generators) {
      ordered_json e;
      e["component"] = cg.name(g.c);
      auto parts = ordered_json::array();
      for (const auto& x : g.parts) parts.push_back(x.to_ints());
      e["parts"] = parts;
      gens.push_back(e);
    }
    sub["generators"] = gens;
    sub["facts"] = emit_facts(m.facts);
    sub["shapes"] = emit_shapes(m.shapes);
  }
  j["subgroup"] = sub;
  j["options"] = {{"max_group_order", s.config.bounds.max_group_order},
                  {"max_spin", s.config.bounds.max_spin},
                  {"max_algebra_dim", s.config.bounds.max_algebra_dim},
                  {"second_reduction", s.config.second_reduction},
                  {"trace_format", s.trace_format}};
  return j;
}

MatrixFile parse_matrix_file(const json& doc) {
  only(doc, "$", {"q", "n", "modulus", "generators"});
  json fj = {{"q", need(doc, "$", "q")}};
  if (doc.contains("modulus")) fj["modulus"] = doc["modulus"];
  MatrixFile m;
  m.field = parse_field(fj, "$");
  m.n = static_cast<int>(as_int(need(doc, "$", "n"), "$.n"));
  if (m.n < 1 || m.n > 64) fail("$.n", "dimension out of range");
  const auto& gs = as_array(need(doc, "$", "generators"), "$.generators");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string gp = at("$.generators", i);
    std::vector<long long> entries;
    const auto& a = as_array(gs[i], gp);
    for (std::size_t r = 0; r < a.size(); ++r) entries.push_back(as_int(a[r], at(gp, r)));
    try {
      m.generators.push_back(fq::Matrix::from_ints(m.field, m.n, entries));
    } catch (const fq::FieldError& e) {
      fail(gp, e.what());
    }
    if (!m.generators.back().invertible()) fail(gp, "generator is not invertible");
  }
  return m;
}

MatrixFile parse_matrix_file(const std::filesystem::path& path) { return parse_matrix_file(read_json_file(path)); }

namespace demo {

namespace {

ordered_json d4_ambient() {
  ordered_json sigma = {{"name", "sigma"}, {"permutation", {0}}, {"diagram", {{2, 1, 3, 0}}}};
  ordered_json tau = {{"name", "tau"}, {"permutation", {0}}, {"diagram", {{2, 1, 0, 3}}}};
  ordered_json a;
  a["label"] = "G";
  a["radical_rank"] = 0;
  a["components"] = {{{"type", "D4"}, {"isogeny", "adjoint"}}};
  a["component_group"] = {{"generators", {sigma, tau}}};
  return a;
}

std::vector<int> mobius(int q, int a, int b, int c, int d) {
  // Point 0 is infinity, point x+1 is x.
  auto inv = [q](int x) {
    for (int y = 1; y < q; ++y)
      if (x * y % q == 1) return y;
    return 0;
  };
  std::vector<int> perm(q + 1);
  perm[0] = c == 0 ? 0 : 1 + a * inv(c) % q;
  for (int x = 0; x < q; ++x) {
    const int den = (c * x + d) % q;
    perm[x + 1] = den == 0 ? 0 : 1 + (a * x + b) % q * inv(den) % q;
  }
  return perm;
}

int primitive_root(int q) {
  for (int g = 1; g < q; ++g) {
    int x = 1, order = 0;
    do {
      x = x * g % q;
      ++order;
    } while (x != 1);
    if (order == q - 1) return g;
  }
  return 1;
}

}  // namespace

ordered_json triality() {
  ordered_json s;
  s["version"] = kVersion;
  s["characteristic"] = 3;
  s["ambient"] = d4_ambient();
  ordered_json sub;
  sub["kind"] = "abstract";
  sub["label"] = "H";
  sub["image"] = {{"generators", {"sigma"}}};
  sub["intersection"] = {{"label", "K"}};
  sub["facts"] = {
      {{"query", "cr[K | G0]"}, {"answer", true}, {"reference", "K = C_D4(sigma) of type G2 centralizes a cyclic group"}},
      {{"query", "trivial[K]"}, {"answer", false}, {"reference", "K has type G2"}},
      {{"query", "cr[C_M0(H/K) | M0]"},
       {"answer", true},
       {"reference", "K adjoint, so C_M0(sigma) = 1 with M = <sigma> C_D4(K)"}}};
  s["subgroup"] = sub;
  return s;
}

ordered_json wreath(int q) {
  if (q < 2 || !fq::is_prime_number(static_cast<std::uint64_t>(q)) || q > 31)
    throw ScenarioError("wreath demo needs a prime q <= 31");
  const int g = primitive_root(q);
  struct Gen {
    std::string name;
    int a, b, c, d;
  };
  std::vector<Gen> gens{{"t", 1, 1, 0, 1}, {"w", 0, 1, 1, 0}};
  if (g != 1) gens.insert(gens.begin() + 1, Gen{"d", g, 0, 0, 1});

  ordered_json comps = ordered_json::array();
  for (int i = 0; i <= q; ++i) comps.push_back({{"type", "A1"}, {"isogeny", "adjoint"}});
  ordered_json cg = ordered_json::array();
  ordered_json hgens = ordered_json::array();
  for (const auto& x : gens) {
    ordered_json diag = ordered_json::array();
    for (int i = 0; i <= q; ++i) diag.push_back({0});
    cg.push_back({{"name", x.name}, {"permutation", mobius(q, x.a, x.b, x.c, x.d)}, {"diagram", diag}});
    ordered_json parts = ordered_json::array();
    for (int i = 0; i <= q; ++i) parts.push_back({x.a, x.b, x.c, x.d});
    hgens.push_back({{"component", x.name}, {"parts", parts}});
  }
  ordered_json s;
  s["version"] = kVersion;
  s["characteristic"] = q;
  s["ambient"] = {{"label", "G"},
                  {"radical_rank", 0},
                  {"components", comps},
                  {"component_group", {{"generators", cg}}}};
  ordered_json sub;
  sub["kind"] = "matrix";
  sub["label"] = "H";
  sub["field"] = {{"q", q}};
  sub["generators"] = hgens;
  sub["facts"] = {{{"query", "cr[H_0' cap G_0'0 | G_0'0]"},
                   {"answer", false},
                   {"reference", "B(q) lies in a Borel subgroup of PGL2 and in none of its Levi subgroups"}}};
  s["subgroup"] = sub;
  return s;
}

ordered_json missing_facts() {
  ordered_json s;
  s["version"] = kVersion;
  s["characteristic"] = 3;
  s["ambient"] = d4_ambient();
  s["subgroup"] = {{"kind", "abstract"},
                   {"label", "H"},
                   {"image", {{"generators", {"sigma"}}}},
                   {"intersection", "trivial"},
                   {"facts", ordered_json::array()}};
  return s;
}

}  // namespace demo

}  // namespace gcr::scenario
