#include "gcr/groupmodel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "gcr/matgroup.hpp"

namespace gcr::model {

namespace {

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_permutation(const std::vector<int>& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int x : p) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

ElementAction compose(const ElementAction& a, const ElementAction& b) {
  ElementAction out;
  const std::size_t n = b.perm.size();
  out.perm.resize(n);
  out.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.perm[i] = a.perm[b.perm[i]];
    out.diag[i] = a.diag[b.perm[i]].compose(b.diag[i]);
  }
  return out;
}

ElementAction trivial_action(const std::vector<CartanType>& types) {
  ElementAction a;
  a.perm = identity_perm(static_cast<int>(types.size()));
  for (const auto& t : types) a.diag.push_back(DiagramAutomorphism::identity(t.rank));
  return a;
}

std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

const rootdata::IntMatrix& cached_cartan(const CartanType& t) {
  static std::map<std::pair<char, int>, rootdata::IntMatrix> cache;
  const auto key = std::make_pair(static_cast<char>(t.family), t.rank);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, rootdata::cartan_matrix(t)).first;
  return it->second;
}

std::string with_suffix(const std::string& label, const std::string& suffix) { return label + suffix; }

Intersection rename(const Intersection& x, const std::string& suffix) {
  if (x.kind != Intersection::Kind::Named) return x;
  return Intersection::named(x.label + suffix);
}

fq::Matrix antidiagonal_form(const fq::FieldPtr& f, int n) {
  fq::Matrix j(f, n, n);
  for (int i = 0; i < n; ++i) j.at(i, n - 1 - i) = (i % 2 == 0) ? f->one() : f->neg(f->one());
  return j;
}

int degree_of(const CartanType& t) {
  if (t.family != rootdata::Family::A)
    throw ModelError("matrix subgroups need type A components; found " + t.name());
  return t.rank + 1;
}

}  // namespace

bool ElementAction::is_trivial() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i) || !diag[i].is_identity()) return false;
  return true;
}

// ---------------------------------------------------------------------------

ComponentGroup ComponentGroup::trivial(const std::vector<CartanType>& types) {
  ComponentGroup g;
  g.components_ = static_cast<int>(types.size());
  g.names_ = {"1"};
  g.table_ = {{0}};
  g.actions_ = {trivial_action(types)};
  g.compute_inverses();
  return g;
}

ComponentGroup ComponentGroup::from_generators(const std::vector<CartanType>& types, const std::vector<Generator>& gens,
                                               std::size_t cap) {
  const int n = static_cast<int>(types.size());
  std::size_t tag_len = 0;
  for (const auto& g : gens) tag_len = std::max(tag_len, g.tag.size());
  struct Full {
    std::vector<int> tag;
    ElementAction action;
    bool operator<(const Full& o) const {
      if (tag != o.tag) return tag < o.tag;
      if (action.perm != o.action.perm) return action.perm < o.action.perm;
      return action.diag < o.action.diag;
    }
  };
  std::vector<Full> gen_full;
  std::set<std::string> seen_names;
  for (const auto& g : gens) {
    if (g.name.empty() || g.name == "1" || g.name.find('*') != std::string::npos)
      throw ModelError("component group generator name '" + g.name + "' is reserved or empty");
    if (!seen_names.insert(g.name).second) throw ModelError("duplicate component group generator '" + g.name + "'");
    if (!is_permutation(g.action.perm, n))
      throw ModelError("generator '" + g.name + "': permutation is not a permutation of the components");
    if (static_cast<int>(g.action.diag.size()) != n)
      throw ModelError("generator '" + g.name + "': needs one diagram automorphism per component");
    for (int i = 0; i < n; ++i) {
      const CartanType& src = types[i];
      const CartanType& dst = types[g.action.perm[i]];
      if (!(src == dst))
        throw ModelError("generator '" + g.name + "' maps component " + std::to_string(i) + " of type " + src.name() +
                         " to a component of type " + dst.name());
      if (!is_permutation(g.action.diag[i].perm, src.rank) || !g.action.diag[i].preserves(cached_cartan(src)))
        throw ModelError("generator '" + g.name + "': diagram automorphism on component " + std::to_string(i) +
                         " does not preserve the Cartan matrix");
    }
    std::vector<int> tag = g.tag.empty() ? identity_perm(static_cast<int>(tag_len)) : g.tag;
    if (!is_permutation(tag, static_cast<int>(tag_len)))
      throw ModelError("generator '" + g.name + "': tag is not a permutation of a common length");
    gen_full.push_back({tag, g.action});
  }

  std::map<Full, int> index;
  std::vector<Full> elems{{identity_perm(static_cast<int>(tag_len)), trivial_action(types)}};
  std::vector<std::string> names{"1"};
  index.emplace(elems[0], 0);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Full x{compose_perm(elems[head].tag, gen_full[k].tag), compose(elems[head].action, gen_full[k].action)};
      if (const auto it = index.find(x); it != index.end()) {
        if (head == 0)
          throw ModelError("generator '" + gens[k].name + "' coincides with '" + names[it->second] +
                           "'; give it a distinguishing tag or drop it");
        continue;
      }
      if (elems.size() >= cap) throw ModelError("component group exceeds " + std::to_string(cap) + " elements");
      index.emplace(x, static_cast<int>(elems.size()));
      names.push_back(head == 0 ? gens[k].name : names[head] + "*" + gens[k].name);
      elems.push_back(std::move(x));
    }
  }
  const int order = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      Full x{compose_perm(elems[a].tag, elems[b].tag), compose(elems[a].action, elems[b].action)};
      table[a][b] = index.at(x);
    }
  std::vector<ElementAction> actions;
  for (const auto& e : elems) actions.push_back(e.action);
  return from_table(types, std::move(names), std::move(table), std::move(actions));
}

ComponentGroup ComponentGroup::from_table(const std::vector<CartanType>& types, std::vector<std::string> names,
                                          std::vector<std::vector<int>> table, std::vector<ElementAction> actions) {
  ComponentGroup g;
  g.components_ = static_cast<int>(types.size());
  g.names_ = std::move(names);
  g.table_ = std::move(table);
  g.actions_ = std::move(actions);
  g.validate(types);
  g.compute_inverses();
  return g;
}

void ComponentGroup::validate(const std::vector<CartanType>& types) const {
  const int order = static_cast<int>(names_.size());
  const int n = components_;
  if (order == 0) throw ModelError("component group is empty");
  if (static_cast<int>(table_.size()) != order || static_cast<int>(actions_.size()) != order)
    throw ModelError("component group table and actions must have one entry per element");
  if (std::set<std::string>(names_.begin(), names_.end()).size() != names_.size())
    throw ModelError("component group element names must be distinct");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != order) throw ModelError("component group table is not square");
    if (!is_permutation(row, order)) throw ModelError("invariant violated: composition table rows must be permutations");
  }
  for (int b = 0; b < order; ++b) {
    std::vector<int> col(order);
    for (int a = 0; a < order; ++a) col[a] = table_[a][b];
    if (!is_permutation(col, order)) throw ModelError("invariant violated: composition table columns must be permutations");
  }
  for (int a = 0; a < order; ++a)
    if (table_[0][a] != a || table_[a][0] != a)
      throw ModelError("invariant violated: element 0 must be the identity of the composition table");
  auto assoc = [&](int a, int b, int c) {
    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
      throw ModelError("invariant violated: composition table is not associative");
  };
  if (static_cast<long>(order) * order * order <= 2'000'000) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c) assoc(a, b, c);
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> d(0, order - 1);
    for (int t = 0; t < 200000; ++t) assoc(d(rng), d(rng), d(rng));
  }
  for (int g = 0; g < order; ++g) {
    const ElementAction& act = actions_[g];
    if (!is_permutation(act.perm, n) || static_cast<int>(act.diag.size()) != n)
      throw ModelError("element '" + names_[g] + "': action must permute all " + std::to_string(n) + " components");
    for (int i = 0; i < n; ++i) {
      if (!(types[i] == types[act.perm[i]]))
        throw ModelError("invariant violated: element '" + names_[g] + "' maps a component of type " + types[i].name() +
                         " to one of type " + types[act.perm[i]].name());
      if (!is_permutation(act.diag[i].perm, types[i].rank) || !act.diag[i].preserves(cached_cartan(types[i])))
        throw ModelError("invariant violated: element '" + names_[g] + "' carries a non-diagram automorphism");
    }
  }
  if (!actions_[0].is_trivial()) throw ModelError("invariant violated: the identity must act trivially");
  auto hom = [&](int a, int b) {
    if (!(actions_[table_[a][b]] == compose(actions_[a], actions_[b])))
      throw ModelError("invariant violated: action is not a homomorphism (elements '" + names_[a] + "', '" + names_[b] +
                       "')");
  };
  if (static_cast<long>(order) * order <= 4'000'000) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b) hom(a, b);
  } else {
    std::mt19937 rng(54321);
    std::uniform_int_distribution<int> d(0, order - 1);
    for (int t = 0; t < 200000; ++t) hom(d(rng), d(rng));
  }
}

void ComponentGroup::compute_inverses() {
  inverse_.assign(order(), -1);
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      if (table_[a][b] == 0) inverse_[a] = b;
}

int ComponentGroup::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ModelError("unknown component group element '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

std::vector<int> ComponentGroup::kernel() const {
  std::vector<int> k;
  for (int g = 0; g < order(); ++g)
    if (actions_[g].is_trivial()) k.push_back(g);
  return k;
}

std::vector<int> ComponentGroup::closure(const std::vector<int>& gens) const {
  std::vector<bool> in(order(), false);
  std::vector<int> out{0};
  in[0] = true;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (int g : gens) {
      const int x = table_[out[head]][g];
      if (!in[x]) {
        in[x] = true;
        out.push_back(x);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool ComponentGroup::is_subgroup(const std::vector<int>& elements) const {
  std::vector<bool> in(order(), false);
  for (int x : elements) {
    if (x < 0 || x >= order()) return false;
    in[x] = true;
  }
  if (elements.empty() || !in[0]) return false;
  for (int a : elements)
    for (int b : elements)
      if (!in[table_[a][b]]) return false;
  return true;
}

bool ComponentGroup::is_abelian(const std::vector<int>& subgroup) const {
  for (int a : subgroup)
    for (int b : subgroup)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

bool ComponentGroup::is_cyclic(const std::vector<int>& subgroup) const {
  for (int g : subgroup) {
    std::size_t k = 1;
    for (int x = g; x != 0; x = table_[x][g]) ++k;
    if (k == subgroup.size()) return true;
  }
  return false;
}

std::vector<std::vector<int>> ComponentGroup::orbits(const std::vector<int>& subgroup) const {
  std::vector<int> owner(components_, -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < components_; ++i) {
    if (owner[i] >= 0) continue;
    std::set<int> orbit;
    for (int g : subgroup) orbit.insert(actions_[g].perm[i]);
    for (int j : orbit) owner[j] = static_cast<int>(out.size());
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

std::vector<int> ComponentGroup::stabilizer(const std::vector<int>& subgroup, int component) const {
  std::vector<int> out;
  for (int g : subgroup)
    if (actions_[g].perm[component] == component) out.push_back(g);
  return out;
}

ComponentGroup ComponentGroup::restrict_to(const std::vector<int>& subgroup, int component,
                                           const std::vector<CartanType>& types, std::vector<int>* index) const {
  std::vector<int> sorted = subgroup;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> map(order(), -1);
  for (std::size_t k = 0; k < sorted.size(); ++k) map[sorted[k]] = static_cast<int>(k);
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;
  std::vector<ElementAction> actions;
  for (int g : sorted) {
    if (actions_[g].perm[component] != component) throw ModelError("restriction needs a component stabilizer");
    names.push_back(names_[g]);
    std::vector<int> row;
    for (int h : sorted) row.push_back(map[table_[g][h]]);
    table.push_back(std::move(row));
    actions.push_back({{0}, {actions_[g].diag[component]}});
  }
  if (index) *index = map;
  return from_table({types[component]}, std::move(names), std::move(table), std::move(actions));
}

ComponentGroup ComponentGroup::quotient_by_kernel(std::vector<int>* coset) const {
  const std::vector<int> k = kernel();
  std::vector<int> rep_of(order(), -1);
  std::vector<int> reps;
  for (int g = 0; g < order(); ++g) {
    if (rep_of[g] >= 0) continue;
    for (int x : k) rep_of[table_[g][x]] = g;
    reps.push_back(g);
  }
  std::vector<int> map(order());
  std::map<int, int> rep_index;
  for (std::size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = static_cast<int>(i);
  for (int g = 0; g < order(); ++g) map[g] = rep_index.at(rep_of[g]);
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;
  std::vector<ElementAction> actions;
  for (int a : reps) {
    names.push_back(names_[a]);
    std::vector<int> row;
    for (int b : reps) row.push_back(map[table_[a][b]]);
    table.push_back(std::move(row));
    actions.push_back(actions_[a]);
  }
  if (coset) *coset = map;
  ComponentGroup g;
  g.components_ = components_;
  g.names_ = std::move(names);
  g.table_ = std::move(table);
  g.actions_ = std::move(actions);
  g.compute_inverses();
  return g;
}

// ---------------------------------------------------------------------------

std::vector<CartanType> GroupShape::types() const {
  std::vector<CartanType> t;
  for (const auto& c : components) t.push_back(c.type);
  return t;
}

long GroupShape::dimension() const {
  long d = radical_rank;
  for (const auto& c : components)
    d += 2 * static_cast<long>(rootdata::RootSystem::classical_positive_count(c.type)) + c.type.rank;
  return d;
}

void GroupShape::validate() const {
  if (characteristic < 0 || (characteristic > 0 && !fq::is_prime_number(characteristic)))
    throw ModelError("characteristic must be 0 or a prime, got " + std::to_string(characteristic));
  if (radical_rank < 0) throw ModelError("radical rank must be non-negative");
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].id != static_cast<int>(i)) throw ModelError("components must be numbered 0, 1, ... in order");
  if (component_group.num_components() != static_cast<int>(components.size()))
    throw ModelError("component group acts on " + std::to_string(component_group.num_components()) +
                     " components but the shape has " + std::to_string(components.size()));
}

int out_order(const CartanType& type) {
  static std::map<std::pair<char, int>, int> cache;
  const auto key = std::make_pair(static_cast<char>(type.family), type.rank);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, static_cast<int>(rootdata::diagram_automorphism_group(type).size())).first;
  return it->second;
}

// ---------------------------------------------------------------------------

void FactTable::insert(const std::string& query, Fact fact) {
  const auto it = facts_.find(query);
  if (it != facts_.end()) {
    if (it->second.answer != fact.answer) throw ModelError("contradictory facts for '" + query + "'");
    return;
  }
  facts_.emplace(query, std::move(fact));
}

std::optional<Fact> FactTable::lookup(const std::string& query) const {
  const auto it = facts_.find(query);
  if (it == facts_.end()) return std::nullopt;
  return it->second;
}

std::optional<Fact> asserted_oracle(const FactTable& facts, const std::string& query) { return facts.lookup(query); }

// ---------------------------------------------------------------------------

std::size_t MatrixElementHash::operator()(const MatrixElement& e) const {
  std::size_t h = std::hash<int>()(e.c);
  for (const auto& m : e.parts) h = h * 1099511628211ull ^ m.hash();
  return h;
}

bool operator==(const MatrixSubgroup& a, const MatrixSubgroup& b) {
  if (a.label != b.label || !(a.facts == b.facts) || !(a.shapes == b.shapes)) return false;
  if (!a.field || !b.field || !a.field->same_as(*b.field)) return false;
  if (a.elements.size() != b.elements.size()) return false;
  std::unordered_map<MatrixElement, int, MatrixElementHash> count;
  for (const auto& e : a.elements) ++count[e];
  for (const auto& e : b.elements)
    if (--count[e] < 0) return false;
  return true;
}

fq::Matrix transport(const DiagramAutomorphism& d, const fq::Matrix& x) {
  if (d.is_identity()) return x;
  const int n = x.rows();
  for (int i = 0; i < n - 1; ++i)
    if (d.perm[i] != n - 2 - i) throw ModelError("matrix realization supports only the type A diagram reversal");
  const fq::Matrix j = antidiagonal_form(x.field(), n);
  return (j * x.inverse().transpose() * j.inverse()).projective_normal();
}

MatrixElement multiply(const GroupShape& g, const MatrixElement& a, const MatrixElement& b) {
  const ComponentGroup& cg = g.component_group;
  const ElementAction& act = cg.action(a.c);
  MatrixElement out;
  out.c = cg.mul(a.c, b.c);
  std::vector<fq::Matrix> moved(b.parts.size());
  for (std::size_t j = 0; j < b.parts.size(); ++j) moved[act.perm[j]] = transport(act.diag[j], b.parts[j]);
  out.parts.reserve(a.parts.size());
  for (std::size_t i = 0; i < a.parts.size(); ++i) out.parts.push_back((a.parts[i] * moved[i]).projective_normal());
  return out;
}

MatrixElement identity_element(const GroupShape& g, const fq::FieldPtr& field) {
  MatrixElement e;
  for (const auto& c : g.components) e.parts.push_back(fq::Matrix::identity(field, degree_of(c.type)));
  return e;
}

SubgroupDescriptor make_matrix_subgroup(const GroupShape& g, std::string label, fq::FieldPtr field,
                                        std::vector<MatrixElement> generators, FactTable facts,
                                        std::map<std::string, ShapeFact> shapes, std::size_t cap) {
  if (!field) throw ModelError("matrix subgroup needs a field");
  if (g.characteristic != static_cast<int>(field->characteristic()))
    throw ModelError("field characteristic " + std::to_string(field->characteristic()) +
                     " differs from the group characteristic " + std::to_string(g.characteristic));
  for (auto& gen : generators) {
    if (gen.c < 0 || gen.c >= g.component_group.order()) throw ModelError("generator component element out of range");
    if (gen.parts.size() != g.components.size())
      throw ModelError("generator needs one matrix per simple component (" + std::to_string(g.components.size()) + ")");
    for (std::size_t i = 0; i < gen.parts.size(); ++i) {
      const int d = degree_of(g.components[i].type);
      fq::Matrix& m = gen.parts[i];
      if (!m.field()->same_as(*field)) throw ModelError("generator matrix over the wrong field");
      if (m.rows() != d || m.cols() != d)
        throw ModelError("component " + std::to_string(i) + " of type " + g.components[i].type.name() + " needs " +
                         std::to_string(d) + "x" + std::to_string(d) + " matrices");
      if (!m.invertible()) throw ModelError("generator matrix " + m.str() + " is not invertible");
      m = m.projective_normal();
    }
  }
  const MatrixElement id = identity_element(g, field);
  auto mul = [&g](const MatrixElement& a, const MatrixElement& b) { return multiply(g, a, b); };
  auto closure = fq::close_under<MatrixElement, MatrixElementHash>(generators, id, mul, cap);
  if (!closure.complete) {
    AbstractSubgroup a;
    a.label = std::move(label);
    std::vector<int> cs;
    for (const auto& gen : generators) cs.push_back(gen.c);
    a.image = g.component_group.closure(cs);
    a.intersection = Intersection::opaque();
    a.facts = std::move(facts);
    a.shapes = std::move(shapes);
    return a;
  }
  MatrixSubgroup m;
  m.label = std::move(label);
  m.field = std::move(field);
  m.generators = std::move(generators);
  m.elements = std::move(closure.elements);
  m.facts = std::move(facts);
  m.shapes = std::move(shapes);
  return m;
}

// ---------------------------------------------------------------------------

const std::string& subgroup_label(const Pair& pair) {
  return std::visit([](const auto& s) -> const std::string& { return s.label; }, pair.subgroup);
}

const FactTable& facts_of(const Pair& pair) {
  return std::visit([](const auto& s) -> const FactTable& { return s.facts; }, pair.subgroup);
}

const std::map<std::string, ShapeFact>& shapes_of(const Pair& pair) {
  return std::visit([](const auto& s) -> const std::map<std::string, ShapeFact>& { return s.shapes; }, pair.subgroup);
}

std::optional<std::vector<int>> image_of(const Pair& pair) {
  if (const auto* a = std::get_if<AbstractSubgroup>(&pair.subgroup)) return a->image;
  const auto& m = std::get<MatrixSubgroup>(pair.subgroup);
  std::set<int> cs;
  for (const auto& e : m.elements) cs.insert(e.c);
  return std::vector<int>(cs.begin(), cs.end());
}

std::string intersection_label(const Pair& pair) {
  if (const auto* a = std::get_if<AbstractSubgroup>(&pair.subgroup)) {
    if (a->intersection.kind == Intersection::Kind::Trivial) return "1";
    if (a->intersection.kind == Intersection::Kind::Named) return a->intersection.label;
  }
  return subgroup_label(pair) + " cap " + pair.ambient.label + "0";
}

namespace query {

std::string intersection_cr(const Pair& p) {
  return "cr[" + intersection_label(p) + " | " + p.ambient.label + "0]";
}
std::string intersection_trivial(const Pair& p) { return "trivial[" + intersection_label(p) + "]"; }
std::string centralizer_reductive(const Pair& p) {
  return "reductive[C_" + p.ambient.label + "0(" + subgroup_label(p) + ")]";
}
std::string quotient_centralizer_cr(const Pair& p) {
  return "cr[C_M0(" + subgroup_label(p) + "/" + intersection_label(p) + ") | M0]";
}
std::string identity_component_reductive(const Pair& p) { return "reductive[" + subgroup_label(p) + "0]"; }
std::string cyclic(const Pair& p) { return "cyclic[" + subgroup_label(p) + "]"; }
std::string reductive(const Pair& p) { return "reductive[" + subgroup_label(p) + "]"; }
std::string centralizer_cr(const Pair& p) {
  return "cr[C_" + p.ambient.label + "0(" + subgroup_label(p) + ") | " + p.ambient.label + "0]";
}
std::string collapse_shape(const Pair& p) { return "C_" + p.ambient.label + "0(" + intersection_label(p) + ")"; }
std::string double_centralizer_shape(const Pair& p) {
  return "C_" + p.ambient.label + "0(C_" + p.ambient.label + "0(" + subgroup_label(p) + "))";
}

}  // namespace query

// ---------------------------------------------------------------------------

std::optional<std::vector<OrbitStabilizer>> compute_orbit_stabilizers(const Pair& pair) {
  const auto image = image_of(pair);
  if (!image) return std::nullopt;
  const ComponentGroup& cg = pair.ambient.component_group;
  std::vector<OrbitStabilizer> out;
  for (auto& orbit : cg.orbits(*image)) {
    OrbitStabilizer o;
    o.representative = orbit.front();
    o.stabilizer = cg.stabilizer(*image, o.representative);
    o.orbit = std::move(orbit);
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<Pair> op2_decompose(const Pair& pair) {
  const auto orbits = compute_orbit_stabilizers(pair);
  if (!orbits) throw ModelError("O2 needs the image of " + subgroup_label(pair) + " in the component group");
  const GroupShape& g = pair.ambient;
  const auto types = g.types();
  std::vector<Pair> out;
  for (const auto& o : *orbits) {
    const int i = o.representative;
    const std::string suffix = "_" + std::to_string(i);
    GroupShape shape;
    shape.label = with_suffix(g.label, suffix);
    shape.characteristic = g.characteristic;
    shape.radical_rank = 0;
    shape.components = {SimpleComponent{0, g.components[i].type, g.components[i].declared_isogeny}};
    std::vector<int> index;
    shape.component_group = g.component_group.restrict_to(o.stabilizer, i, types, &index);

    if (const auto* a = std::get_if<AbstractSubgroup>(&pair.subgroup)) {
      AbstractSubgroup s = *a;
      s.label = with_suffix(a->label, suffix);
      std::vector<int> img;
      for (int c : o.stabilizer) img.push_back(index[c]);
      std::sort(img.begin(), img.end());
      s.image = std::move(img);
      s.intersection = rename(a->intersection, suffix);
      out.push_back({std::move(shape), std::move(s)});
    } else {
      const auto& m = std::get<MatrixSubgroup>(pair.subgroup);
      MatrixSubgroup s;
      s.label = with_suffix(m.label, suffix);
      s.field = m.field;
      s.facts = m.facts;
      s.shapes = m.shapes;
      std::unordered_map<MatrixElement, int, MatrixElementHash> seen;
      for (const auto& e : m.elements) {
        if (g.component_group.action(e.c).perm[i] != i) continue;
        MatrixElement x{index[e.c], {e.parts[i]}};
        if (seen.emplace(x, 0).second) s.elements.push_back(std::move(x));
      }
      s.generators = s.elements;
      out.push_back({std::move(shape), std::move(s)});
    }
  }
  return out;
}

Pair op1_quotient_by_centralizer(const Pair& pair) {
  const GroupShape& g = pair.ambient;
  if (g.centralizer_trivial()) return pair;
  GroupShape shape;
  shape.label = with_suffix(g.label, "'");
  shape.characteristic = g.characteristic;
  shape.radical_rank = 0;
  shape.components = g.components;
  std::vector<int> coset;
  shape.component_group = g.component_group.quotient_by_kernel(&coset);
  const std::vector<int> kernel = g.component_group.kernel();

  if (const auto* a = std::get_if<AbstractSubgroup>(&pair.subgroup)) {
    AbstractSubgroup s = *a;
    s.label = with_suffix(a->label, "'");
    if (a->image) {
      std::set<int> img;
      for (int c : *a->image) img.insert(coset[c]);
      s.image = std::vector<int>(img.begin(), img.end());
      std::size_t meet = 0;
      for (int c : *a->image) meet += std::find(kernel.begin(), kernel.end(), c) != kernel.end();
      s.intersection = meet == 1 ? rename(a->intersection, "'") : Intersection::opaque();
    } else {
      s.intersection = Intersection::opaque();
    }
    return {std::move(shape), std::move(s)};
  }
  const auto& m = std::get<MatrixSubgroup>(pair.subgroup);
  MatrixSubgroup s;
  s.label = with_suffix(m.label, "'");
  s.field = m.field;
  s.facts = m.facts;
  s.shapes = m.shapes;
  std::unordered_map<MatrixElement, int, MatrixElementHash> seen;
  for (const auto& e : m.elements) {
    MatrixElement x{coset[e.c], e.parts};
    if (seen.emplace(x, 0).second) s.elements.push_back(std::move(x));
  }
  s.generators = s.elements;
  return {std::move(shape), std::move(s)};
}

namespace {

std::vector<int> image_indices(const ShapeFact& shape) {
  std::vector<int> img;
  for (const auto& name : shape.image) img.push_back(shape.shape.component_group.index_of(name));
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  if (!shape.shape.component_group.is_subgroup(img))
    throw ModelError("invariant violated: asserted image is not closed under the composition table");
  return img;
}

}  // namespace

Pair op3_collapse(const Pair& pair, const Fact& intersection_cr, const ShapeFact& shape) {
  if (!intersection_cr.answer)
    throw ModelError("O3 requires " + intersection_label(pair) + " to be " + pair.ambient.label + "0-cr");
  if (shape.shape.characteristic != pair.ambient.characteristic)
    throw ModelError("shape of " + query::collapse_shape(pair) + " has the wrong characteristic");
  shape.shape.validate();
  const auto old_image = image_of(pair);
  if (!old_image) throw ModelError("O3 needs the image of " + subgroup_label(pair));
  std::vector<int> img = image_indices(shape);
  if (img.size() != old_image->size())
    throw ModelError("shape of " + query::collapse_shape(pair) + ": image order " + std::to_string(img.size()) +
                     " differs from |H/(H cap G0)| = " + std::to_string(old_image->size()));
  if (shape.shape.dimension() > pair.ambient.dimension())
    throw ModelError("shape of " + query::collapse_shape(pair) + " is larger than the ambient group");
  AbstractSubgroup s;
  s.label = subgroup_label(pair) + "/" + intersection_label(pair);
  s.image = std::move(img);
  s.intersection = Intersection::trivial();
  s.facts = facts_of(pair);
  s.shapes = shapes_of(pair);
  return {shape.shape, std::move(s)};
}

Pair second_reduction(const Pair& pair, const Fact& centralizer_cr, const ShapeFact& shape) {
  if (!centralizer_cr.answer)
    throw ModelError("second reduction requires C_" + pair.ambient.label + "0(" + subgroup_label(pair) + ") to be cr");
  if (shape.shape.characteristic != pair.ambient.characteristic)
    throw ModelError("shape of " + query::double_centralizer_shape(pair) + " has the wrong characteristic");
  shape.shape.validate();
  if (shape.shape.dimension() > pair.ambient.dimension())
    throw ModelError("shape of " + query::double_centralizer_shape(pair) + " is larger than the ambient group");
  AbstractSubgroup s;
  s.label = subgroup_label(pair);
  s.image = image_indices(shape);
  s.intersection = shape.intersection;
  s.facts = facts_of(pair);
  s.shapes = shapes_of(pair);
  return {shape.shape, std::move(s)};
}

}  // namespace gcr::model
