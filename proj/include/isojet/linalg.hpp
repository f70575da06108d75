#pragma once

// Dense exact linear algebra. Pivots are always the first nonzero entry in
// column order, so every echelon form is reproducible.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "isojet/scalar.hpp"

namespace isojet {

using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols);
  static Matrix identity(FieldSpec field, std::size_t n);
  static Matrix from_rows(FieldSpec field, const std::vector<Vector>& rows, std::size_t cols);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Vector row(std::size_t r) const;

  Matrix operator*(const Matrix& b) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Vector apply(const Vector& v) const;
  Matrix transpose() const;

  /// Reduced row echelon form in place; returns the pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  Scalar determinant() const;
  /// Throws NotAUnit when singular.
  Matrix inverse() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldSpec field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

/// A linear subspace of k^n held as a reduced row echelon basis.
class Subspace {
 public:
  Subspace(FieldSpec field, std::size_t ambient);  // {0}
  static Subspace span(FieldSpec field, std::size_t ambient, const std::vector<Vector>& generators);
  static Subspace full(FieldSpec field, std::size_t ambient);

  const FieldSpec& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Remainder of v after eliminating the pivot coordinates.
  Vector reduce(const Vector& v) const;
  bool contains(const Vector& v) const;
  bool contains(const Subspace& v) const;
  Subspace sum(const Subspace& v) const;
  Subspace intersect(const Subspace& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  FieldSpec field_;
  std::size_t ambient_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

struct Solution {
  Vector x;
  Subspace kernel;
};

/// y with y*A = 0 and y*b != 0; first nonzero entry normalized to 1.
struct Infeasible {
  Vector certificate;
};

using SolveResult = std::variant<Solution, Infeasible>;

SolveResult solve_linear(const Matrix& a, const Vector& b);
Subspace kernel(const Matrix& a);

Scalar dot(const Vector& a, const Vector& b);
Vector zero_vector(const FieldSpec& f, std::size_t n);
bool is_zero_vector(const Vector& v);

}  // namespace isojet
