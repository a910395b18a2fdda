#pragma once

// Integer combinatorics of simple root systems: Cartan matrices, positive
// roots by closure, cocharacter pairings, R-parabolic root partitions,
// Dynkin diagram automorphisms and the D4 triality folding onto G2.
//
// Roots are coefficient vectors in the simple-root basis. Cocharacters are
// coordinate vectors in the fundamental-coweight basis, so <alpha_i, lambda>
// is coordinate i and every pairing is an integer dot product.
//
// Simple roots follow Bourbaki numbering (0-based here). For D4 the trivalent
// node is index 1; the three outer nodes are 0, 2, 3.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcr::rootdata {

class RootDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct CartanType {
  Family family = Family::A;
  int rank = 1;

  /// Validates the rank for the family; D3 is rewritten to A3.
  static CartanType make(Family family, int rank);
  static CartanType parse(const std::string& family, int rank);

  std::string name() const;  // "D4", "A1", ...
  bool operator==(const CartanType&) const = default;
};

Family parse_family(const std::string& s);

using Root = std::vector<int>;
using IntMatrix = std::vector<std::vector<int>>;

/// A[i][j] = <alpha_i^vee, alpha_j>.
IntMatrix cartan_matrix(const CartanType& type);

struct Cocharacter {
  std::vector<int> coords;

  static Cocharacter zero(int rank) { return {std::vector<int>(rank, 0)}; }
  static Cocharacter fundamental(int rank, int index);
  Cocharacter operator-() const;
  bool operator==(const Cocharacter&) const = default;
};

class RootSystem {
 public:
  explicit RootSystem(CartanType type);

  const CartanType& type() const { return type_; }
  int rank() const { return type_.rank; }
  const IntMatrix& cartan() const { return cartan_; }
  /// Sorted by height, then lexicographically.
  const std::vector<Root>& positive_roots() const { return positive_; }
  /// Positive roots followed by their negatives.
  std::vector<Root> all_roots() const;
  const std::vector<std::string>& simple_root_names() const { return names_; }

  bool is_root(const Root& r) const;
  Root highest_root() const { return positive_.back(); }
  /// Number of positive roots predicted by the classical formula.
  static std::size_t classical_positive_count(const CartanType& type);
  /// Dimension of the adjoint group: 2 |Phi+| + rank.
  int dimension() const { return 2 * static_cast<int>(positive_.size()) + rank(); }

 private:
  CartanType type_;
  IntMatrix cartan_;
  std::vector<Root> positive_;
  std::vector<std::string> names_;
};

RootSystem build_root_system(const CartanType& type);

int pairing(const Root& root, const Cocharacter& cochar);

struct ParabolicData {
  std::vector<Root> levi_roots;       // <alpha, lambda> = 0, both signs
  std::vector<Root> unipotent_roots;  // <alpha, lambda> > 0
  Cocharacter cochar;
};

ParabolicData parabolic_data(const RootSystem& system, const Cocharacter& cochar);

struct DiagramAutomorphism {
  std::vector<int> perm;  // simple root i -> perm[i]

  static DiagramAutomorphism identity(int rank);
  bool is_identity() const;
  DiagramAutomorphism compose(const DiagramAutomorphism& inner) const;  // this o inner
  DiagramAutomorphism inverse() const;
  bool preserves(const IntMatrix& cartan) const;
  bool operator==(const DiagramAutomorphism&) const = default;
  auto operator<=>(const DiagramAutomorphism&) const = default;
};

/// All Cartan-preserving permutations of the simple roots, identity first.
std::vector<DiagramAutomorphism> diagram_automorphism_group(const CartanType& type);

// ---------------------------------------------------------------------------
// D4 triality and the folded G2 system.

struct FoldedG2Data {
  /// Orbits of D4 simple roots folded onto each G2 simple root.
  std::vector<std::vector<int>> tilde_simple_roots;
  IntMatrix tilde_cartan;
  Cocharacter tilde_lambda;
  std::vector<Root> tilde_positive_roots;
};

/// The order-3 automorphism cycling the outer nodes of D4 (0 -> 2 -> 3 -> 0).
DiagramAutomorphism d4_triality();

/// Restriction of a D4 root to the triality-fixed torus, in (alpha~, beta~)
/// coordinates.
Root fold_d4_root(const Root& d4_root);

FoldedG2Data fold_d4_triality();

struct LimitVerdict {
  int pairing = 0;
  bool exists = false;        // lim lambda(a) sigma u lambda(a)^-1 exists
  bool unipotent_collapses = false;  // the limit equals sigma
};

/// Limit of lambda(a) sigma u_eps(c) lambda(a)^-1 as a -> 0 for sigma fixing
/// lambda: exists iff <eps, lambda> >= 0, equals sigma iff > 0.
LimitVerdict triality_limit(const Root& eps, const Cocharacter& lambda);
/// eps = alpha+beta+gamma+2 delta, lambda = fundamental coweight of delta.
LimitVerdict triality_limit_check();

struct M2Dimensions {
  int reductive_part = 0;     // <U_a~, U_-a~>
  int unipotent_radical = 0;  // R_u(P_lambda~)
  int total = 0;
};

M2Dimensions m2_structure_check();

}  // namespace gcr::rootdata
