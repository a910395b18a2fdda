#include "gcr/linalg.hpp"

#include <algorithm>

namespace gcr::fq {

Subspace::Subspace(FieldPtr field, int ambient_dim) : field_(std::move(field)), n_(ambient_dim) {}

Subspace Subspace::span(FieldPtr field, int ambient_dim, const std::vector<Vec>& vectors) {
  Subspace s(std::move(field), ambient_dim);
  for (const Vec& v : vectors) s.insert(v);
  return s;
}

Subspace Subspace::whole(FieldPtr field, int ambient_dim) {
  Subspace s(field, ambient_dim);
  for (int i = 0; i < ambient_dim; ++i) {
    Vec e(ambient_dim, 0);
    e[i] = 1;
    s.insert(e);
  }
  return s;
}

Vec Subspace::reduce(Vec v) const {
  const Field& f = *field_;
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const Elem c = v[pivots_[r]];
    if (c == 0) continue;
    const Vec& b = basis_[r];
    for (int j = pivots_[r]; j < n_; ++j)
      if (b[j] != 0) v[j] = f.sub(v[j], f.mul(c, b[j]));
  }
  return v;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [this](const Vec& v) { return contains(v); });
}

bool Subspace::insert(const Vec& v) {
  if (static_cast<int>(v.size()) != n_) throw FieldError("subspace vector has the wrong length");
  Vec w = reduce(v);
  int piv = 0;
  while (piv < n_ && w[piv] == 0) ++piv;
  if (piv == n_) return false;
  const Field& f = *field_;
  const Elem s = f.inv(w[piv]);
  for (auto& e : w) e = f.mul(e, s);
  // Clear the new pivot column from the existing rows to stay reduced.
  for (auto& b : basis_) {
    const Elem c = b[piv];
    if (c == 0) continue;
    for (int j = piv; j < n_; ++j)
      if (w[j] != 0) b[j] = f.sub(b[j], f.mul(c, w[j]));
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, piv);
  basis_.insert(basis_.begin() + pos, std::move(w));
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  Subspace s = *this;
  for (const Vec& v : other.basis_) s.insert(v);
  return s;
}

std::vector<Vec> null_space(const FieldPtr& field, const std::vector<Vec>& rows, int cols) {
  const Field& f = *field;
  std::vector<Vec> a = rows;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(a.size()); ++c) {
    int piv = r;
    while (piv < static_cast<int>(a.size()) && a[piv][c] == 0) ++piv;
    if (piv == static_cast<int>(a.size())) continue;
    std::swap(a[piv], a[r]);
    const Elem s = f.inv(a[r][c]);
    for (auto& e : a[r]) e = f.mul(e, s);
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Elem factor = a[i][c];
      for (int j = c; j < cols; ++j)
        if (a[r][j] != 0) a[i][j] = f.sub(a[i][j], f.mul(factor, a[r][j]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec x(cols, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = f.neg(a[i][free]);
    basis.push_back(std::move(x));
  }
  return basis;
}

Coordinates::Coordinates(FieldPtr field, const std::vector<Vec>& basis)
    : field_(std::move(field)), m_(static_cast<int>(basis.size())) {
  len_ = basis.empty() ? 0 : static_cast<int>(basis.front().size());
  const Field& f = *field_;
  std::vector<Vec> rows = basis;
  std::vector<Vec> tr(m_, Vec(m_, 0));
  for (int i = 0; i < m_; ++i) tr[i][i] = 1;
  int r = 0;
  for (int c = 0; c < len_ && r < m_; ++c) {
    int piv = r;
    while (piv < m_ && rows[piv][c] == 0) ++piv;
    if (piv == m_) continue;
    std::swap(rows[piv], rows[r]);
    std::swap(tr[piv], tr[r]);
    const Elem s = f.inv(rows[r][c]);
    for (auto& e : rows[r]) e = f.mul(e, s);
    for (auto& e : tr[r]) e = f.mul(e, s);
    for (int i = 0; i < m_; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Elem factor = rows[i][c];
      for (int j = 0; j < len_; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
      for (int j = 0; j < m_; ++j) tr[i][j] = f.sub(tr[i][j], f.mul(factor, tr[r][j]));
    }
    pivots_.push_back(c);
    ++r;
  }
  if (r != m_) throw FieldError("coordinate basis is linearly dependent");
  rows_ = std::move(rows);
  transforms_ = std::move(tr);
}

std::optional<Vec> Coordinates::solve(const Vec& x) const {
  const Field& f = *field_;
  Vec rest = x;
  Vec y(m_, 0);
  for (int r = 0; r < m_; ++r) {
    const Elem c = rest[pivots_[r]];
    if (c == 0) continue;
    for (int j = 0; j < len_; ++j)
      if (rows_[r][j] != 0) rest[j] = f.sub(rest[j], f.mul(c, rows_[r][j]));
    for (int i = 0; i < m_; ++i) y[i] = f.add(y[i], f.mul(c, transforms_[r][i]));
  }
  if (!is_zero(rest)) return std::nullopt;
  return y;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

Vec normalize(const FieldPtr& field, Vec v) {
  for (Elem e : v)
    if (e != 0) {
      const Elem s = field->inv(e);
      for (auto& x : v) x = field->mul(x, s);
      break;
    }
  return v;
}

Vec flatten(const Matrix& m) { return m.entries(); }

Matrix unflatten(const FieldPtr& field, int n, const Vec& v) { return Matrix(field, n, n, v); }

}  // namespace gcr::fq
