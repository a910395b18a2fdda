#pragma once

// Possibly non-connected reductive groups G = C |x (S G_1 ... G_n) described
// by shape (radical rank, adjoint simple components, finite component group
// acting by permutations and pinned diagram automorphisms), subgroups of
// them, and the structural reductions O1, O2, O3.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gcr/fq.hpp"
#include "gcr/rootdata.hpp"

namespace gcr::model {

using rootdata::CartanType;
using rootdata::DiagramAutomorphism;

/// Malformed pair or violated structural invariant.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ElementAction {
  std::vector<int> perm;                    // component i -> perm[i]
  std::vector<DiagramAutomorphism> diag;    // G_i -> G_perm[i]
  bool is_trivial() const;
  bool operator==(const ElementAction&) const = default;
};

/// Finite group with its action on the simple components. Element 0 is the
/// identity; table(a, b) is a∘b (b acts first).
class ComponentGroup {
 public:
  struct Generator {
    std::string name;
    ElementAction action;
    std::vector<int> tag;  // optional faithful permutation, for generators acting alike
  };

  ComponentGroup() = default;
  static ComponentGroup trivial(const std::vector<CartanType>& types);
  static ComponentGroup from_generators(const std::vector<CartanType>& types, const std::vector<Generator>& gens,
                                        std::size_t cap = 100000);
  static ComponentGroup from_table(const std::vector<CartanType>& types, std::vector<std::string> names,
                                   std::vector<std::vector<int>> table, std::vector<ElementAction> actions);

  int order() const { return static_cast<int>(names_.size()); }
  int num_components() const { return components_; }
  const std::string& name(int g) const { return names_.at(g); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // throws ModelError
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const ElementAction& action(int g) const { return actions_.at(g); }
  const std::vector<ElementAction>& actions() const { return actions_; }

  /// Elements acting trivially on G^0.
  std::vector<int> kernel() const;
  bool faithful() const { return kernel().size() == 1; }
  /// Subgroup generated by the given elements, sorted.
  std::vector<int> closure(const std::vector<int>& gens) const;
  bool is_subgroup(const std::vector<int>& elements) const;
  bool is_abelian(const std::vector<int>& subgroup) const;
  bool is_cyclic(const std::vector<int>& subgroup) const;
  /// Orbits on component indices of a subgroup, each sorted, ordered by least element.
  std::vector<std::vector<int>> orbits(const std::vector<int>& subgroup) const;
  std::vector<int> stabilizer(const std::vector<int>& subgroup, int component) const;

  /// A subgroup fixing `component`, acting on that component alone. `index`
  /// receives old -> new indices (-1 outside the subgroup).
  ComponentGroup restrict_to(const std::vector<int>& subgroup, int component, const std::vector<CartanType>& types,
                             std::vector<int>* index) const;
  /// Quotient by the action kernel; `coset` receives old -> new indices.
  ComponentGroup quotient_by_kernel(std::vector<int>* coset) const;

  bool operator==(const ComponentGroup&) const = default;

 private:
  void validate(const std::vector<CartanType>& types) const;
  void compute_inverses();

  int components_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<ElementAction> actions_;
  std::vector<int> inverse_;
};

struct SimpleComponent {
  int id = 0;
  CartanType type;
  std::string declared_isogeny = "adjoint";  // informational; treated as adjoint
  bool operator==(const SimpleComponent&) const = default;
};

struct GroupShape {
  std::string label = "G";
  int characteristic = 0;
  int radical_rank = 0;
  std::vector<SimpleComponent> components;
  ComponentGroup component_group;

  std::vector<CartanType> types() const;
  /// C_G(G^0) = 1: no central torus and a faithful component group action.
  bool centralizer_trivial() const { return radical_rank == 0 && component_group.faithful(); }
  bool identity_component_simple() const { return radical_rank == 0 && components.size() == 1; }
  long dimension() const;
  /// Checks types, indices and the component group against each other.
  void validate() const;
  bool operator==(const GroupShape&) const = default;
};

// ---------------------------------------------------------------------------

enum class Provenance { Asserted, Computed };

struct Fact {
  bool answer = false;
  Provenance provenance = Provenance::Asserted;
  std::string reference;
  bool operator==(const Fact&) const = default;
};

/// Answers to connected-case questions keyed by query text.
class FactTable {
 public:
  /// Rejects a contradicting duplicate.
  void insert(const std::string& query, Fact fact);
  std::optional<Fact> lookup(const std::string& query) const;
  bool erase(const std::string& query) { return facts_.erase(query) > 0; }
  std::size_t size() const { return facts_.size(); }
  const std::map<std::string, Fact>& entries() const { return facts_; }
  bool operator==(const FactTable&) const = default;

 private:
  std::map<std::string, Fact> facts_;
};

/// Table lookup; empty when the query is absent.
std::optional<Fact> asserted_oracle(const FactTable& facts, const std::string& query);

struct Intersection {
  enum class Kind { Trivial, Opaque, Named };
  Kind kind = Kind::Trivial;
  std::string label;
  static Intersection trivial() { return {Kind::Trivial, ""}; }
  static Intersection opaque() { return {Kind::Opaque, ""}; }
  static Intersection named(std::string l) { return {Kind::Named, std::move(l)}; }
  bool operator==(const Intersection&) const = default;
};

/// Asserted description of a new ambient group (for O3 and the second
/// reduction): its shape and how the subgroup sits inside it.
struct ShapeFact {
  GroupShape shape;
  std::vector<std::string> image;  // element names in shape.component_group
  Intersection intersection;
  bool operator==(const ShapeFact&) const = default;
};

struct AbstractSubgroup {
  std::string label = "H";
  std::optional<std::vector<int>> image;  // sorted subgroup of the component group; empty = opaque
  Intersection intersection;
  FactTable facts;
  std::map<std::string, ShapeFact> shapes;
  bool operator==(const AbstractSubgroup&) const = default;
};

/// (component group element, projective parts on each simple component).
struct MatrixElement {
  int c = 0;
  std::vector<fq::Matrix> parts;
  bool operator==(const MatrixElement& o) const { return c == o.c && parts == o.parts; }
};

struct MatrixElementHash {
  std::size_t operator()(const MatrixElement& e) const;
};

/// A finite subgroup with explicit elements; simple components must be of
/// type A_m, realized as PGL_{m+1} over F_q.
struct MatrixSubgroup {
  std::string label = "H";
  fq::FieldPtr field;
  std::vector<MatrixElement> generators;
  std::vector<MatrixElement> elements;  // identity first
  FactTable facts;
  std::map<std::string, ShapeFact> shapes;
};

bool operator==(const MatrixSubgroup& a, const MatrixSubgroup& b);

using SubgroupDescriptor = std::variant<AbstractSubgroup, MatrixSubgroup>;

struct Pair {
  GroupShape ambient;
  SubgroupDescriptor subgroup;
  bool operator==(const Pair&) const = default;
};

/// Multiplication of pair elements: (c,s)(c',s') = (cc', s · c(s')).
MatrixElement multiply(const GroupShape& g, const MatrixElement& a, const MatrixElement& b);
MatrixElement identity_element(const GroupShape& g, const fq::FieldPtr& field);
/// Image of a part under the automorphism G_i -> G_j given by a diagram automorphism.
fq::Matrix transport(const DiagramAutomorphism& d, const fq::Matrix& x);

/// Enumerates the generated group. Exceeding the cap yields an abstract
/// descriptor with the computable data (image) and an opaque intersection.
SubgroupDescriptor make_matrix_subgroup(const GroupShape& g, std::string label, fq::FieldPtr field,
                                        std::vector<MatrixElement> generators, FactTable facts,
                                        std::map<std::string, ShapeFact> shapes, std::size_t cap);

// ---------------------------------------------------------------------------
// Reading a pair.

const std::string& subgroup_label(const Pair& pair);
const FactTable& facts_of(const Pair& pair);
const std::map<std::string, ShapeFact>& shapes_of(const Pair& pair);
/// Image of H in the component group; empty when opaque.
std::optional<std::vector<int>> image_of(const Pair& pair);
/// Name of H ∩ G^0 used in queries ("1" when trivial).
std::string intersection_label(const Pair& pair);

/// Query texts.
namespace query {
std::string intersection_cr(const Pair& p);          // cr[K | G0]
std::string intersection_trivial(const Pair& p);     // trivial[K]
std::string centralizer_reductive(const Pair& p);    // reductive[C_G0(H)]
std::string quotient_centralizer_cr(const Pair& p);  // cr[C_M0(H/K) | M0]
std::string identity_component_reductive(const Pair& p);  // reductive[H0]
std::string cyclic(const Pair& p);                   // cyclic[H]
std::string reductive(const Pair& p);                // reductive[H]
std::string centralizer_cr(const Pair& p);           // cr[C_G0(H) | G0]
std::string collapse_shape(const Pair& p);           // C_G0(K)
std::string double_centralizer_shape(const Pair& p); // C_G0(C_G0(H))
}  // namespace query

// ---------------------------------------------------------------------------
// Operations.

struct OrbitStabilizer {
  std::vector<int> orbit;
  int representative = 0;
  std::vector<int> stabilizer;  // indices into the component group
};

/// Orbits of the image of H on component indices with the stabilizer of
/// each least representative. Empty when the image is opaque.
std::optional<std::vector<OrbitStabilizer>> compute_orbit_stabilizers(const Pair& pair);

/// Quotient by C_G(G^0). Returns the pair unchanged when already trivial.
Pair op1_quotient_by_centralizer(const Pair& pair);
/// One pair per H-orbit on the components, at the least representative.
std::vector<Pair> op2_decompose(const Pair& pair);
/// (H/(H∩G^0), H C_G0(H∩G^0)/(H∩G^0)) from the asserted shape. Requires
/// a positive cr[K | G0] fact and the shape entry; throws ModelError otherwise.
Pair op3_collapse(const Pair& pair, const Fact& intersection_cr, const ShapeFact& shape);
/// (H, H C_G0(C_G0(H))) from the asserted shape.
Pair second_reduction(const Pair& pair, const Fact& centralizer_cr, const ShapeFact& shape);

/// Order of the image, |Out| of the simple type, etc.
int out_order(const CartanType& type);

}  // namespace gcr::model
