#pragma once

// Finite fields F_q and dense matrices over them.
//
// Elements are encoded as integers 0..q-1: for a prime field the residue,
// for F_{p^k} = F_p[x]/(f) the base-p digits are the polynomial coefficients
// (digit i is the coefficient of x^i).

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcr::fq {

using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static FieldPtr prime(std::uint32_t p);
  /// F_p[x]/(modulus); modulus is monic, coefficients listed from x^0 up.
  static FieldPtr extension(std::uint32_t p, const std::vector<std::uint32_t>& modulus);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  bool is_prime() const { return k_ == 1; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::string describe() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  /// Frobenius x -> x^p.
  Elem frobenius(Elem a) const { return pow(a, p_); }

  /// Coordinates of a over F_p (length degree()).
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;

  bool same_as(const Field& other) const { return p_ == other.p_ && modulus_ == other.modulus_; }

 private:
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t p_ = 2, k_ = 1, q_ = 2;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;       // extension fields only
  std::vector<std::uint32_t> log_;
};

bool is_prime_number(std::uint64_t n);

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, int rows, int cols);
  Matrix(FieldPtr field, int rows, int cols, std::vector<Elem> entries);

  static Matrix identity(FieldPtr field, int n);
  /// Square matrix from row-major integers (reduced into the field).
  static Matrix from_ints(FieldPtr field, int n, const std::vector<long long>& row_major);
  static Matrix from_rows(FieldPtr field, const std::vector<std::vector<long long>>& rows);

  const FieldPtr& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  Elem& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const std::vector<Elem>& entries() const { return a_; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(Elem c) const;
  Vec apply(const Vec& v) const;
  Matrix transpose() const;
  /// Throws FieldError when singular.
  Matrix inverse() const;
  bool invertible() const;
  int rank() const;
  bool is_zero() const;
  bool is_identity() const;
  Elem trace() const;

  /// Representative of the class modulo nonzero scalars: the first nonzero
  /// entry is scaled to 1.
  Matrix projective_normal() const;

  bool operator==(const Matrix& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_; }
  bool operator<(const Matrix& rhs) const { return a_ < rhs.a_; }
  std::size_t hash() const;

  std::vector<long long> to_ints() const;
  std::string str() const;

 private:
  FieldPtr field_;
  int rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const { return m.hash(); }
};

}  // namespace gcr::fq
