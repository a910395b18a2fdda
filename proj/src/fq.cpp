#include "gcr/fq.hpp"

#include <sstream>

namespace gcr::fq {

namespace {

constexpr std::uint32_t kMaxExtensionOrder = 1u << 16;

using Poly = std::vector<std::uint32_t>;

// Product of two residues modulo the monic modulus, all over F_p.
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
  const std::size_t k = mod.size() - 1;
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  for (std::size_t d = prod.size(); d-- > k;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * mod[i]) % p;
  }
  return Poly(prod.begin(), prod.begin() + k);
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), modulus_(std::move(modulus)) {
  k_ = static_cast<std::uint32_t>(modulus_.size() - 1);
  q_ = 1;
  for (std::uint32_t i = 0; i < k_; ++i) q_ *= p_;
}

FieldPtr Field::prime(std::uint32_t p) {
  if (!is_prime_number(p) || p >= (1u << 31)) throw FieldError("field characteristic " + std::to_string(p) + " is not a supported prime");
  return FieldPtr(new Field(p, {0, 1}));
}

FieldPtr Field::extension(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  if (!is_prime_number(p)) throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2 || modulus.back() != 1) throw FieldError("field modulus must be monic of degree >= 1");
  if (modulus.size() == 2) return prime(p);
  for (auto c : modulus)
    if (c >= p) throw FieldError("field modulus coefficients must lie in [0, p)");
  std::uint64_t q = 1;
  for (std::size_t i = 1; i < modulus.size(); ++i) {
    q *= p;
    if (q > kMaxExtensionOrder) throw FieldError("extension field order exceeds 65536");
  }
  auto field = std::shared_ptr<Field>(new Field(p, modulus));
  // Find a generator of the multiplicative group; none exists when the
  // modulus is reducible, since then the residue ring is not a field.
  const std::uint32_t qq = field->q_;
  for (Elem g = 2; g < qq; ++g) {
    std::vector<Elem> exp(qq - 1);
    std::vector<std::uint32_t> log(qq, 0);
    std::vector<bool> hit(qq, false);
    Poly cur(field->k_, 0);
    cur[0] = 1;
    const Poly gp = field->digits(g);
    bool ok = true;
    for (std::uint32_t e = 0; e + 1 < qq; ++e) {
      const Elem x = field->from_digits(cur);
      if (x == 0 || hit[x]) {
        ok = false;
        break;
      }
      hit[x] = true;
      exp[e] = x;
      log[x] = e;
      cur = poly_mulmod(cur, gp, field->modulus_, p);
    }
    if (ok) {
      field->exp_ = std::move(exp);
      field->log_ = std::move(log);
      return field;
    }
  }
  throw FieldError("field modulus is not irreducible over F_" + std::to_string(p));
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (k_ > 1) {
    os << " = F_" << p_ << "[x]/(";
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (modulus_[i] != 1 || i == 0) os << modulus_[i];
      if (i >= 1) os << "x";
      if (i > 1) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> d(k_, 0);
  for (std::uint32_t i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem Field::from_digits(const std::vector<std::uint32_t>& d) const {
  Elem a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i];
  return a;
}

Elem Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Field::add(Elem a, Elem b) const {
  if (k_ == 1) {
    const std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Elem Field::neg(Elem a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const Elem d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>((std::uint64_t(a) * b) % p_);
  if (a == 0 || b == 0) return 0;
  return exp_[(std::uint64_t(log_[a]) + log_[b]) % (q_ - 1)];
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("inverse of zero");
  if (k_ == 1) return pow(a, p_ - 2);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem result = one();
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------

Matrix::Matrix(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

Matrix::Matrix(FieldPtr field, int rows, int cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(rows) * cols) throw FieldError("matrix entry count does not match shape");
  for (Elem e : a_)
    if (e >= field_->order()) throw FieldError("matrix entry outside the field");
}

Matrix Matrix::identity(FieldPtr field, int n) {
  Matrix m(std::move(field), n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_ints(FieldPtr field, int n, const std::vector<long long>& row_major) {
  if (row_major.size() != static_cast<std::size_t>(n) * n)
    throw FieldError("expected " + std::to_string(n * n) + " matrix entries, got " + std::to_string(row_major.size()));
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < row_major.size(); ++i) {
    const long long v = row_major[i];
    // Prime fields reduce integers; extension fields take encoded elements.
    if (field->is_prime()) m.a_[i] = field->from_int(v);
    else {
      if (v < 0 || v >= field->order()) throw FieldError("extension field entries must be encoded in [0, q)");
      m.a_[i] = static_cast<Elem>(v);
    }
  }
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<long long>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<long long> flat;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw FieldError("matrix rows must form a square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return from_ints(std::move(field), n, flat);
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw FieldError("matrix product shape mismatch");
  const Field& f = *field_;
  Matrix out(field_, rows_, rhs.cols_);
  if (f.is_prime()) {
    const std::uint64_t p = f.characteristic();
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < rhs.cols_; ++j) {
        std::uint64_t s = 0;
        for (int k = 0; k < cols_; ++k) s = (s + std::uint64_t(at(i, k)) * rhs.at(k, j)) % p;
        out.at(i, j) = static_cast<Elem>(s);
      }
    return out;
  }
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rhs.cols_; ++j) {
      Elem s = 0;
      for (int k = 0; k < cols_; ++k) s = f.add(s, f.mul(at(i, k), rhs.at(k, j)));
      out.at(i, j) = s;
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw FieldError("matrix sum shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->add(a_[i], rhs.a_[i]);
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw FieldError("matrix difference shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->sub(a_[i], rhs.a_[i]);
  return out;
}

Matrix Matrix::scaled(Elem c) const {
  Matrix out = *this;
  for (auto& e : out.a_) e = field_->mul(e, c);
  return out;
}

Vec Matrix::apply(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw FieldError("matrix-vector shape mismatch");
  const Field& f = *field_;
  Vec out(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    Elem s = 0;
    for (int k = 0; k < cols_; ++k) s = f.add(s, f.mul(at(i, k), v[k]));
    out[i] = s;
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Matrix Matrix::inverse() const {
  if (!square()) throw FieldError("inverse of a non-square matrix");
  const Field& f = *field_;
  const int n = rows_;
  Matrix a = *this;
  Matrix inv = identity(field_, n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && a.at(piv, c) == 0) ++piv;
    if (piv == n) throw FieldError("matrix is singular");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(c, j));
        std::swap(inv.at(piv, j), inv.at(c, j));
      }
    const Elem s = f.inv(a.at(c, c));
    for (int j = 0; j < n; ++j) {
      a.at(c, j) = f.mul(a.at(c, j), s);
      inv.at(c, j) = f.mul(inv.at(c, j), s);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a.at(r, c) == 0) continue;
      const Elem factor = a.at(r, c);
      for (int j = 0; j < n; ++j) {
        a.at(r, j) = f.sub(a.at(r, j), f.mul(factor, a.at(c, j)));
        inv.at(r, j) = f.sub(inv.at(r, j), f.mul(factor, inv.at(c, j)));
      }
    }
  }
  return inv;
}

int Matrix::rank() const {
  const Field& f = *field_;
  Matrix a = *this;
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    int piv = rank;
    while (piv < rows_ && a.at(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    for (int j = 0; j < cols_; ++j) std::swap(a.at(piv, j), a.at(rank, j));
    const Elem s = f.inv(a.at(rank, c));
    for (int r = rank + 1; r < rows_; ++r) {
      if (a.at(r, c) == 0) continue;
      const Elem factor = f.mul(a.at(r, c), s);
      for (int j = c; j < cols_; ++j) a.at(r, j) = f.sub(a.at(r, j), f.mul(factor, a.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

bool Matrix::invertible() const { return square() && rank() == rows_; }

bool Matrix::is_zero() const {
  for (Elem e : a_)
    if (e != 0) return false;
  return true;
}

bool Matrix::is_identity() const { return square() && *this == identity(field_, rows_); }

Elem Matrix::trace() const {
  Elem s = 0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) s = field_->add(s, at(i, i));
  return s;
}

Matrix Matrix::projective_normal() const {
  for (Elem e : a_)
    if (e != 0) return scaled(field_->inv(e));
  return *this;
}

std::size_t Matrix::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (Elem e : a_) h = (h ^ e) * 1099511628211ull;
  return h;
}

std::vector<long long> Matrix::to_ints() const { return {a_.begin(), a_.end()}; }

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << ",";
    os << "[";
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace gcr::fq
