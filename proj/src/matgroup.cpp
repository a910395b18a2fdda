#include "gcr/matgroup.hpp"

namespace gcr::fq {

GroupEnumeration enumerate_group(const std::vector<Matrix>& gens, std::size_t cap, bool projective) {
  if (gens.empty()) throw FieldError("enumerate_group needs at least one generator");
  const FieldPtr& field = gens.front().field();
  const int n = gens.front().rows();
  std::vector<Matrix> normalized;
  for (const Matrix& g : gens) {
    if (g.rows() != n || !g.square()) throw FieldError("generators must be square of equal size");
    if (!g.invertible()) throw FieldError("generator " + g.str() + " is not invertible");
    normalized.push_back(projective ? g.projective_normal() : g);
  }
  auto mul = [projective](const Matrix& a, const Matrix& b) {
    Matrix c = a * b;
    return projective ? c.projective_normal() : c;
  };
  auto closure = close_under<Matrix, MatrixHash>(normalized, Matrix::identity(field, n), mul, cap);
  return {std::move(closure.elements), closure.complete};
}

std::size_t element_order(const Matrix& g, bool projective) {
  const Matrix start = projective ? g.projective_normal() : g;
  const Matrix id = Matrix::identity(g.field(), g.rows());
  Matrix x = start;
  std::size_t k = 1;
  while (!(x == id)) {
    x = x * start;
    if (projective) x = x.projective_normal();
    ++k;
  }
  return k;
}

Matrix power(const Matrix& g, std::uint64_t e, bool projective) {
  Matrix result = Matrix::identity(g.field(), g.rows());
  Matrix base = projective ? g.projective_normal() : g;
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    if (projective) {
      result = result.projective_normal();
      base = base.projective_normal();
    }
    e >>= 1;
  }
  return result;
}

bool is_cyclic(const std::vector<Matrix>& gens, const GroupEnumeration& group, bool projective) {
  if (!group.complete) throw FieldError("is_cyclic needs a complete enumeration");
  auto eq = [projective](const Matrix& a, const Matrix& b) {
    return projective ? a.projective_normal() == b.projective_normal() : a == b;
  };
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!eq(gens[i] * gens[j], gens[j] * gens[i])) return false;
  std::size_t n = group.order();
  const Matrix id = Matrix::identity(group.elements.front().field(), group.elements.front().rows());
  for (std::size_t r = 2; r <= n; ++r) {
    if (n % r != 0) continue;
    while (n % r == 0) n /= r;
    std::size_t solutions = 0;
    for (const Matrix& x : group.elements) solutions += power(x, r, projective) == id;
    if (solutions != r) return false;
  }
  return true;
}

}  // namespace gcr::fq
