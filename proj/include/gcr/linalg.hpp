#pragma once

// Exact linear algebra over F_q: echelonized subspaces and null spaces.

#include <optional>
#include <vector>

#include "gcr/fq.hpp"

namespace gcr::fq {

/// A subspace of F_q^n held as a reduced row echelon basis.
class Subspace {
 public:
  Subspace(FieldPtr field, int ambient_dim);
  static Subspace span(FieldPtr field, int ambient_dim, const std::vector<Vec>& vectors);
  static Subspace whole(FieldPtr field, int ambient_dim);

  int dim() const { return static_cast<int>(basis_.size()); }
  int ambient_dim() const { return n_; }
  const std::vector<Vec>& basis() const { return basis_; }
  const FieldPtr& field() const { return field_; }

  /// Remainder of v after elimination against the basis (zero iff v is inside).
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Adds v; returns true when the dimension grew.
  bool insert(const Vec& v);
  Subspace sum(const Subspace& other) const;

  bool operator==(const Subspace& other) const { return n_ == other.n_ && basis_ == other.basis_; }
  bool operator<(const Subspace& other) const { return basis_ < other.basis_; }

 private:
  FieldPtr field_;
  int n_ = 0;
  std::vector<Vec> basis_;   // RREF rows, sorted by pivot
  std::vector<int> pivots_;
};

/// Solves x = sum_i y_i b_i for a fixed linearly independent family b_i.
class Coordinates {
 public:
  Coordinates(FieldPtr field, const std::vector<Vec>& basis);
  /// Empty when x is outside the span.
  std::optional<Vec> solve(const Vec& x) const;
  int size() const { return m_; }

 private:
  FieldPtr field_;
  int m_ = 0, len_ = 0;
  std::vector<Vec> rows_;        // RREF of the basis
  std::vector<Vec> transforms_;  // rows_[r] = sum_i transforms_[r][i] b_i
  std::vector<int> pivots_;
};

/// Basis of {x : A x = 0} for an r x c matrix given as rows.
std::vector<Vec> null_space(const FieldPtr& field, const std::vector<Vec>& rows, int cols);

bool is_zero(const Vec& v);
/// Scales v so its first nonzero coordinate is 1.
Vec normalize(const FieldPtr& field, Vec v);

/// Flatten/unflatten square matrices as vectors of length n^2.
Vec flatten(const Matrix& m);
Matrix unflatten(const FieldPtr& field, int n, const Vec& v);

}  // namespace gcr::fq
