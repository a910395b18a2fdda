#pragma once

// Computable answers to connected-case questions for finite subgroups of
// GL_n(F_q): semisimplicity of the natural module (complete reducibility in
// GL_n) and reductivity of the centralizer (the unit group of the commutant
// algebra, reductive iff the commutant has zero Jacobson radical).
//
// Finite fields are perfect, so socles and Jacobson radicals computed over
// F_q are stable under extension to the algebraic closure.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcr/fq.hpp"
#include "gcr/linalg.hpp"

namespace gcr::oracles {

using fq::FieldPtr;
using fq::Matrix;
using fq::Subspace;
using fq::Vec;

/// Raised when a runtime postcondition of the radical computation fails.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct OracleBounds {
  std::size_t max_spin = 1'000'000;        // q^n limit for exhaustive spinning
  std::size_t max_group_order = 200'000;   // closure cap
  std::size_t max_algebra_dim = 4096;      // dim over F_p for radical computations
};

/// H acting on V = F_q^n through its generators.
class ModuleDescriptor {
 public:
  explicit ModuleDescriptor(std::vector<Matrix> generators);
  ModuleDescriptor(FieldPtr field, int dim, std::vector<Matrix> generators);

  const FieldPtr& field() const { return field_; }
  int dim() const { return dim_; }
  const std::vector<Matrix>& generators() const { return gens_; }
  /// Action of H on the subspace (basis expressed in its own coordinates).
  ModuleDescriptor restricted_to(const Subspace& invariant) const;

 private:
  FieldPtr field_;
  int dim_ = 0;
  std::vector<Matrix> gens_;
};

/// Smallest H-invariant subspace containing v.
Subspace spin(const Vec& v, const std::vector<Matrix>& gens);
Subspace spin(const Vec& v, const ModuleDescriptor& module);

struct SocleResult {
  std::optional<Subspace> socle;  // empty when the bounds were exceeded
  std::string method;              // "spin" or "radical"
};

/// Sum of the containment-minimal spins of all projective points.
Subspace socle_by_spinning(const ModuleDescriptor& module);
/// {v : J v = 0} for J the radical of the enveloping algebra.
Subspace socle_by_radical(const ModuleDescriptor& module);
SocleResult socle(const ModuleDescriptor& module, const OracleBounds& bounds = {});

/// V semisimple; empty when undecidable within bounds.
std::optional<bool> is_glncr(const ModuleDescriptor& module, const OracleBounds& bounds = {});

/// A subalgebra of M_n(F_q) given by a basis.
struct EndoAlgebra {
  FieldPtr field;
  int n = 0;
  std::vector<Matrix> basis;
  int dim() const { return static_cast<int>(basis.size()); }
  Subspace span() const;
  bool contains(const Matrix& m) const;
};

/// All X with X g = g X for every generator.
EndoAlgebra centralizer_algebra(const ModuleDescriptor& module);
/// The F_q-span of all products of generators (including the identity).
EndoAlgebra enveloping_algebra(const ModuleDescriptor& module);

/// Basis of the Jacobson radical, by the iterated trace-form method over the
/// prime field. Ideal, nilpotence and semisimple-quotient postconditions are
/// asserted on every call (InternalError on failure).
std::vector<Matrix> algebra_radical(const EndoAlgebra& algebra);

/// The radical computation without postcondition checks.
std::vector<Matrix> algebra_radical_unchecked(const EndoAlgebra& algebra);

struct CentralizerReport {
  int commutant_dim = 0;
  int radical_dim = 0;
  bool reductive = false;
  std::string method;  // "radical" or "coprime order"
};

/// Reductivity of C_{GL_n}(H). With a known group order prime to p the
/// commutant is semisimple and the radical computation is skipped.
CentralizerReport centralizer_report(const ModuleDescriptor& module,
                                     std::optional<std::size_t> group_order = std::nullopt);
bool centralizer_is_reductive(const ModuleDescriptor& module,
                              std::optional<std::size_t> group_order = std::nullopt);

}  // namespace gcr::oracles
