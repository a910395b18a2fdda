#include "gcr/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gcr::oracles {

using fq::Coordinates;
using fq::Elem;
using fq::Field;

namespace {

Subspace matrix_span(const FieldPtr& field, int n, const std::vector<Matrix>& ms) {
  Subspace s(field, n * n);
  for (const Matrix& m : ms) s.insert(fq::flatten(m));
  return s;
}

std::vector<Matrix> basis_matrices(const FieldPtr& field, int n, const Subspace& s) {
  std::vector<Matrix> out;
  for (const Vec& v : s.basis()) out.push_back(fq::unflatten(field, n, v));
  return out;
}

// --- prime-field restriction of scalars -------------------------------------

// Matrix of multiplication by e on F_q = F_p^k, basis 1, x, ..., x^{k-1}.
std::vector<std::vector<std::uint32_t>> mult_block(const Field& f, Elem e) {
  const std::uint32_t k = f.degree();
  std::vector<std::vector<std::uint32_t>> block(k, std::vector<std::uint32_t>(k, 0));
  Elem basis_elem = 1;  // x^t
  const Elem x = f.characteristic();  // digit 1 set: the element x
  for (std::uint32_t t = 0; t < k; ++t) {
    const auto col = f.digits(f.mul(e, basis_elem));
    for (std::uint32_t r = 0; r < k; ++r) block[r][t] = col[r];
    basis_elem = f.mul(basis_elem, x);
  }
  return block;
}

Matrix to_prime_field(const Matrix& m, const FieldPtr& prime) {
  const Field& f = *m.field();
  const int k = static_cast<int>(f.degree());
  Matrix out(prime, m.rows() * k, m.cols() * k);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const auto block = mult_block(f, m.at(i, j));
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) out.at(i * k + r, j * k + c) = block[r][c];
    }
  return out;
}

Matrix from_prime_field(const Matrix& m, const FieldPtr& field) {
  const int k = static_cast<int>(field->degree());
  const int n = m.rows() / k;
  Matrix out(field, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<std::uint32_t> d(k);
      for (int r = 0; r < k; ++r) d[r] = m.at(i * k + r, j * k);  // image of 1
      out.at(i, j) = field->from_digits(d);
    }
  return out;
}

// --- trace-form iteration over F_p -------------------------------------------

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::vector<u64> lift_mul(const std::vector<u64>& a, const std::vector<u64>& b, int n, u64 mod) {
  std::vector<u64> c(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const u64 aik = a[i * n + k];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j) c[i * n + j] = static_cast<u64>((u128(aik) * b[k * n + j] + c[i * n + j]) % mod);
    }
  return c;
}

// g_i(x) = Tr(x~^{p^i}) / p^i mod p for the standard lift x~ of x.
Elem trace_form(const Matrix& x, u64 p, int level) {
  const int n = x.rows();
  u64 pi = 1;
  for (int t = 0; t < level; ++t) pi *= p;
  const u64 mod = pi * p;
  std::vector<u64> base(x.entries().begin(), x.entries().end());
  std::vector<u64> result(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) result[i * n + i] = 1;
  for (u64 e = pi; e; e >>= 1) {
    if (e & 1) result = lift_mul(result, base, n, mod);
    if (e > 1) base = lift_mul(base, base, n, mod);
  }
  u64 tr = 0;
  for (int i = 0; i < n; ++i) tr = (tr + result[i * n + i]) % mod;
  if (tr % pi != 0) throw InternalError("trace form is not divisible by p^i on the current ideal");
  return static_cast<Elem>((tr / pi) % p);
}

std::vector<Matrix> radical_prime_field(const std::vector<Matrix>& algebra) {
  if (algebra.empty()) return {};
  const FieldPtr& field = algebra.front().field();
  const u64 p = field->characteristic();
  const int n = algebra.front().rows();
  int levels = 0;
  for (u64 pp = p; pp <= static_cast<u64>(n); pp *= p) ++levels;

  std::vector<Matrix> ideal = algebra;
  for (int level = 0; level <= levels && !ideal.empty(); ++level) {
    std::vector<Vec> rows;
    rows.reserve(algebra.size());
    for (const Matrix& b : algebra) {
      Vec row(ideal.size());
      for (std::size_t k = 0; k < ideal.size(); ++k) row[k] = trace_form(ideal[k] * b, p, level);
      rows.push_back(std::move(row));
    }
    const auto kernel = fq::null_space(field, rows, static_cast<int>(ideal.size()));
    std::vector<Matrix> next;
    for (const Vec& y : kernel) {
      Matrix m(field, n, n);
      for (std::size_t k = 0; k < ideal.size(); ++k)
        if (y[k] != 0) m = m + ideal[k].scaled(y[k]);
      next.push_back(std::move(m));
    }
    ideal = basis_matrices(field, n, matrix_span(field, n, next));
  }
  return ideal;
}

// Left regular representation of A/J on itself.
EndoAlgebra quotient_regular_representation(const EndoAlgebra& a, const std::vector<Matrix>& radical) {
  const FieldPtr& f = a.field;
  const int n = a.n;
  Subspace j_span = matrix_span(f, n, radical);
  std::vector<Vec> complement;
  Subspace grow = j_span;
  for (const Matrix& b : a.basis) {
    const Vec v = fq::flatten(b);
    if (grow.insert(v)) complement.push_back(v);
  }
  std::vector<Vec> full;
  for (const Matrix& r : radical) full.push_back(fq::flatten(r));
  const int jdim = static_cast<int>(full.size());
  full.insert(full.end(), complement.begin(), complement.end());
  const Coordinates coords(f, full);
  const int r = static_cast<int>(complement.size());
  EndoAlgebra out{f, r, {}};
  for (int s = 0; s < r; ++s) {
    Matrix left(f, r, r);
    const Matrix cs = fq::unflatten(f, n, complement[s]);
    for (int t = 0; t < r; ++t) {
      const auto y = coords.solve(fq::flatten(cs * fq::unflatten(f, n, complement[t])));
      if (!y) throw InternalError("algebra is not closed under multiplication");
      for (int u = 0; u < r; ++u) left.at(u, t) = (*y)[jdim + u];
    }
    out.basis.push_back(std::move(left));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

ModuleDescriptor::ModuleDescriptor(std::vector<Matrix> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw fq::FieldError("a module needs at least one generator (use the identity)");
  field_ = gens_.front().field();
  dim_ = gens_.front().rows();
  for (const Matrix& g : gens_)
    if (!g.square() || g.rows() != dim_ || !g.invertible())
      throw fq::FieldError("module generators must be invertible " + std::to_string(dim_) + "x" + std::to_string(dim_) +
                           " matrices");
}

ModuleDescriptor::ModuleDescriptor(FieldPtr field, int dim, std::vector<Matrix> generators)
    : field_(std::move(field)), dim_(dim), gens_(std::move(generators)) {
  if (gens_.empty()) gens_.push_back(Matrix::identity(field_, dim_));
  for (const Matrix& g : gens_)
    if (!g.square() || g.rows() != dim_) throw fq::FieldError("module generator has the wrong size");
}

ModuleDescriptor ModuleDescriptor::restricted_to(const Subspace& invariant) const {
  const int d = invariant.dim();
  const Coordinates coords(field_, invariant.basis());
  std::vector<Matrix> gens;
  for (const Matrix& g : gens_) {
    Matrix r(field_, d, d);
    for (int j = 0; j < d; ++j) {
      const auto y = coords.solve(g.apply(invariant.basis()[j]));
      if (!y) throw fq::FieldError("subspace is not invariant under the module generators");
      for (int i = 0; i < d; ++i) r.at(i, j) = (*y)[i];
    }
    gens.push_back(std::move(r));
  }
  return ModuleDescriptor(field_, d, std::move(gens));
}

Subspace spin(const Vec& v, const std::vector<Matrix>& gens) {
  if (gens.empty()) throw fq::FieldError("spin needs generators");
  const FieldPtr& field = gens.front().field();
  Subspace s(field, static_cast<int>(v.size()));
  if (!s.insert(v)) return s;
  std::vector<Vec> frontier{v};
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    for (const Matrix& g : gens) {
      Vec w = g.apply(frontier[head]);
      if (s.insert(w)) frontier.push_back(std::move(w));
    }
  }
  return s;
}

Subspace spin(const Vec& v, const ModuleDescriptor& module) { return spin(v, module.generators()); }

Subspace socle_by_spinning(const ModuleDescriptor& module) {
  const FieldPtr& f = module.field();
  const int n = module.dim();
  const std::uint32_t q = f->order();
  std::set<Subspace> spins;
  // Projective points: first nonzero coordinate equal to 1.
  for (int lead = 0; lead < n; ++lead) {
    Vec v(n, 0);
    v[lead] = 1;
    while (true) {
      spins.insert(spin(v, module));
      int pos = n - 1;
      while (pos > lead && v[pos] == q - 1) v[pos--] = 0;
      if (pos == lead) break;
      ++v[pos];
    }
  }
  std::vector<Subspace> ordered(spins.begin(), spins.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  std::vector<Subspace> minimal;
  for (const Subspace& w : ordered) {
    const bool has_smaller = std::any_of(minimal.begin(), minimal.end(),
                                         [&](const Subspace& m) { return m.dim() < w.dim() && w.contains(m); });
    if (!has_smaller) minimal.push_back(w);
  }
  Subspace socle(f, n);
  for (const Subspace& m : minimal) socle = socle.sum(m);
  return socle;
}

Subspace socle_by_radical(const ModuleDescriptor& module) {
  const auto radical = algebra_radical(enveloping_algebra(module));
  std::vector<Vec> rows;
  for (const Matrix& j : radical)
    for (int i = 0; i < j.rows(); ++i) rows.emplace_back(j.entries().begin() + i * j.cols(),
                                                         j.entries().begin() + (i + 1) * j.cols());
  return Subspace::span(module.field(), module.dim(), fq::null_space(module.field(), rows, module.dim()));
}

SocleResult socle(const ModuleDescriptor& module, const OracleBounds& bounds) {
  double points = 1.0;
  for (int i = 0; i < module.dim(); ++i) points *= module.field()->order();
  if (points <= static_cast<double>(bounds.max_spin)) return {socle_by_spinning(module), "spin"};
  const double algebra_dim = double(module.dim()) * module.dim() * module.field()->degree();
  if (algebra_dim <= static_cast<double>(bounds.max_algebra_dim)) return {socle_by_radical(module), "radical"};
  return {std::nullopt, "bounds exceeded"};
}

std::optional<bool> is_glncr(const ModuleDescriptor& module, const OracleBounds& bounds) {
  const SocleResult s = socle(module, bounds);
  if (!s.socle) return std::nullopt;
  return s.socle->dim() == module.dim();
}

Subspace EndoAlgebra::span() const { return matrix_span(field, n, basis); }

bool EndoAlgebra::contains(const Matrix& m) const { return span().contains(fq::flatten(m)); }

EndoAlgebra centralizer_algebra(const ModuleDescriptor& module) {
  const FieldPtr& f = module.field();
  const int n = module.dim();
  const int nn = n * n;
  std::vector<Vec> rows;
  for (const Matrix& g : module.generators()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Vec row(nn, 0);
        // (X g)_{ij} - (g X)_{ij}
        for (int k = 0; k < n; ++k) {
          row[i * n + k] = f->add(row[i * n + k], g.at(k, j));
          row[k * n + j] = f->sub(row[k * n + j], g.at(i, k));
        }
        rows.push_back(std::move(row));
      }
  }
  EndoAlgebra a{f, n, {}};
  const auto kernel = fq::null_space(f, rows, nn);
  a.basis = basis_matrices(f, n, Subspace::span(f, nn, kernel));
  return a;
}

EndoAlgebra enveloping_algebra(const ModuleDescriptor& module) {
  const FieldPtr& f = module.field();
  const int n = module.dim();
  Subspace s(f, n * n);
  std::vector<Matrix> frontier{Matrix::identity(f, n)};
  s.insert(fq::flatten(frontier.front()));
  for (std::size_t head = 0; head < frontier.size(); ++head)
    for (const Matrix& g : module.generators()) {
      Matrix m = frontier[head] * g;
      if (s.insert(fq::flatten(m))) frontier.push_back(std::move(m));
    }
  return {f, n, basis_matrices(f, n, s)};
}

std::vector<Matrix> algebra_radical_unchecked(const EndoAlgebra& algebra) {
  const FieldPtr& f = algebra.field;
  if (algebra.basis.empty()) return {};
  if (f->is_prime()) return radical_prime_field(algebra.basis);
  // Restrict scalars to F_p: J(A) does not depend on the ground field.
  const FieldPtr prime = Field::prime(f->characteristic());
  std::vector<Matrix> over_p;
  const Elem x = f->characteristic();
  for (const Matrix& b : algebra.basis) {
    Elem power = 1;
    for (std::uint32_t t = 0; t < f->degree(); ++t) {
      over_p.push_back(to_prime_field(b.scaled(power), prime));
      power = f->mul(power, x);
    }
  }
  std::vector<Matrix> back;
  for (const Matrix& m : radical_prime_field(over_p)) back.push_back(from_prime_field(m, f));
  return basis_matrices(f, algebra.n, matrix_span(f, algebra.n, back));
}

std::vector<Matrix> algebra_radical(const EndoAlgebra& algebra) {
  const FieldPtr& f = algebra.field;
  const int n = algebra.n;
  auto radical = algebra_radical_unchecked(algebra);
  const Subspace j_span = matrix_span(f, n, radical);
  if (static_cast<int>(radical.size()) != j_span.dim()) throw InternalError("radical basis is dependent");
  const Subspace a_span = algebra.span();
  for (const Matrix& j : radical) {
    if (!a_span.contains(fq::flatten(j))) throw InternalError("radical is not inside the algebra");
    for (const Matrix& b : algebra.basis)
      if (!j_span.contains(fq::flatten(j * b)) || !j_span.contains(fq::flatten(b * j)))
        throw InternalError("radical is not a two-sided ideal");
  }
  // J^k = 0 for some k <= dim J + 1.
  std::vector<Matrix> power = radical;
  for (int k = 1; !power.empty(); ++k) {
    if (k > static_cast<int>(radical.size()) + 1) throw InternalError("radical is not nilpotent");
    std::vector<Matrix> next;
    for (const Matrix& a : power)
      for (const Matrix& b : radical) next.push_back(a * b);
    power = basis_matrices(f, n, matrix_span(f, n, next));
  }
  if (!radical.empty() && static_cast<int>(radical.size()) < algebra.dim()) {
    const EndoAlgebra quotient = quotient_regular_representation(algebra, radical);
    if (!algebra_radical_unchecked(quotient).empty()) throw InternalError("quotient by the radical is not semisimple");
  }
  return radical;
}

CentralizerReport centralizer_report(const ModuleDescriptor& module, std::optional<std::size_t> group_order) {
  CentralizerReport report;
  const EndoAlgebra commutant = centralizer_algebra(module);
  report.commutant_dim = commutant.dim();
  if (group_order && std::gcd(*group_order, static_cast<std::size_t>(module.field()->characteristic())) == 1) {
    report.method = "coprime order";
    report.radical_dim = 0;
  } else {
    report.method = "radical";
    report.radical_dim = static_cast<int>(algebra_radical(commutant).size());
  }
  report.reductive = report.radical_dim == 0;
  return report;
}

bool centralizer_is_reductive(const ModuleDescriptor& module, std::optional<std::size_t> group_order) {
  return centralizer_report(module, group_order).reductive;
}

}  // namespace gcr::oracles
