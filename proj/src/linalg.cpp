#include "isojet/linalg.hpp"

#include <utility>

namespace isojet {

namespace {

// Gauss-Jordan on the first `limit` columns; row operations touch all columns.
std::vector<std::size_t> rref_limited(std::vector<Vector>& rows, std::size_t limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Vector& piv = rows[r];
    if (!piv[c].is_one()) {
      const Scalar inv = piv[c].inverse();
      for (std::size_t k = c; k < piv.size(); ++k)
        if (!piv[k].is_zero()) piv[k] *= inv;
    }
    // Columns left of c are zero in the pivot row.
    std::vector<std::size_t> nz;
    for (std::size_t k = c; k < piv.size(); ++k)
      if (!piv[k].is_zero()) nz.push_back(k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Scalar factor = rows[i][c];
      for (std::size_t k : nz) rows[i][k] -= factor * piv[k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product of unequal lengths");
  if (a.empty()) return Scalar();
  Scalar s = Scalar::zero(a[0].field());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

Vector zero_vector(const FieldSpec& f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

bool is_zero_vector(const Vector& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

// ------------------------------------------------------------------- Matrix

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(FieldSpec field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_rows(FieldSpec field, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
  Matrix out(field_, rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += a * b(k, j);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum shape");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference shape");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape");
  Vector out = zero_vector(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero() && !(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

std::vector<std::size_t> Matrix::rref() {
  std::vector<Vector> rs;
  rs.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) rs.push_back(row(r));
  auto piv = rref_limited(rs, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = rs[r][c];
  return piv;
}

std::size_t Matrix::rank() const {
  Matrix copy = *this;
  return copy.rref().size();
}

Scalar Matrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  std::vector<Vector> rs;
  for (std::size_t r = 0; r < rows_; ++r) rs.push_back(row(r));
  Scalar det = Scalar::one(field_);
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t sel = c;
    while (sel < rows_ && rs[sel][c].is_zero()) ++sel;
    if (sel == rows_) return Scalar::zero(field_);
    if (sel != c) {
      std::swap(rs[c], rs[sel]);
      det = -det;
    }
    det *= rs[c][c];
    const Scalar inv = rs[c][c].inverse();
    for (std::size_t i = c + 1; i < rows_; ++i) {
      if (rs[i][c].is_zero()) continue;
      const Scalar factor = rs[i][c] * inv;
      for (std::size_t k = c; k < cols_; ++k) rs[i][k] -= factor * rs[c][k];
    }
  }
  return det;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = rows_;
  std::vector<Vector> rs;
  for (std::size_t r = 0; r < n; ++r) {
    Vector v = row(r);
    v.resize(2 * n, Scalar::zero(field_));
    v[n + r] = Scalar::one(field_);
    rs.push_back(std::move(v));
  }
  auto piv = rref_limited(rs, n);
  if (piv.size() != n) throw Error(ErrorKind::NotAUnit, "matrix is singular");
  Matrix out(field_, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = rs[r][n + c];
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ----------------------------------------------------------------- Subspace

Subspace::Subspace(FieldSpec field, std::size_t ambient) : field_(field), ambient_(ambient) {}

Subspace Subspace::span(FieldSpec field, std::size_t ambient, const std::vector<Vector>& generators) {
  std::vector<Vector> rows;
  for (const auto& g : generators) {
    if (g.size() != ambient) throw Error(ErrorKind::DimensionMismatch, "generator length differs from ambient dimension");
    if (!is_zero_vector(g)) rows.push_back(g);
  }
  Subspace s(field, ambient);
  s.pivots_ = rref_limited(rows, ambient);
  rows.resize(s.pivots_.size());
  s.basis_ = std::move(rows);
  return s;
}

Subspace Subspace::full(FieldSpec field, std::size_t ambient) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < ambient; ++i) {
    Vector e = zero_vector(field, ambient);
    e[i] = Scalar::one(field);
    gens.push_back(std::move(e));
  }
  return span(field, ambient, gens);
}

Vector Subspace::reduce(const Vector& v) const {
  if (v.size() != ambient_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from ambient dimension");
  Vector out = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if (out[p].is_zero()) continue;
    const Scalar factor = out[p];
    for (std::size_t k = p; k < ambient_; ++k)
      if (!basis_[i][k].is_zero()) out[k] -= factor * basis_[i][k];
  }
  return out;
}

bool Subspace::contains(const Vector& v) const { return is_zero_vector(reduce(v)); }

bool Subspace::contains(const Subspace& v) const {
  if (v.ambient_ != ambient_) throw Error(ErrorKind::DimensionMismatch, "subspaces in different ambient spaces");
  for (const auto& b : v.basis_)
    if (!contains(b)) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& v) const {
  if (v.ambient_ != ambient_) throw Error(ErrorKind::DimensionMismatch, "subspaces in different ambient spaces");
  std::vector<Vector> gens = basis_;
  gens.insert(gens.end(), v.basis_.begin(), v.basis_.end());
  return span(field_, ambient_, gens);
}

Subspace Subspace::intersect(const Subspace& v) const {
  if (v.ambient_ != ambient_) throw Error(ErrorKind::DimensionMismatch, "subspaces in different ambient spaces");
  // Zassenhaus: rows (u|u) and (w|0); rows with zero left half span U ∩ W.
  std::vector<Vector> rows;
  for (const auto& u : basis_) {
    Vector r = u;
    r.insert(r.end(), u.begin(), u.end());
    rows.push_back(std::move(r));
  }
  for (const auto& w : v.basis_) {
    Vector r = w;
    r.resize(2 * ambient_, Scalar::zero(field_));
    rows.push_back(std::move(r));
  }
  rref_limited(rows, 2 * ambient_);
  std::vector<Vector> gens;
  for (const auto& r : rows) {
    bool left_zero = true;
    for (std::size_t k = 0; k < ambient_ && left_zero; ++k) left_zero = r[k].is_zero();
    if (!left_zero) continue;
    gens.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(ambient_), r.end());
  }
  return span(field_, ambient_, gens);
}

// ------------------------------------------------------------------ solving

SolveResult solve_linear(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side length differs from row count");
  const FieldSpec& f = a.field();
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<Vector> rows;
  rows.reserve(m);
  for (std::size_t r = 0; r < m; ++r) {
    Vector v = a.row(r);
    v.push_back(b[r]);
    rows.push_back(std::move(v));
  }
  auto piv = rref_limited(rows, n + 1);
  if (!piv.empty() && piv.back() == n) {
    // Redo with the row transform attached to extract a left null vector.
    std::vector<Vector> aug;
    for (std::size_t r = 0; r < m; ++r) {
      Vector v = a.row(r);
      v.push_back(b[r]);
      v.resize(n + 1 + m, Scalar::zero(f));
      v[n + 1 + r] = Scalar::one(f);
      aug.push_back(std::move(v));
    }
    auto p2 = rref_limited(aug, n + 1);
    const Vector& row = aug[p2.size() - 1];
    Vector y(row.begin() + static_cast<std::ptrdiff_t>(n + 1), row.end());
    for (const auto& s : y) {
      if (s.is_zero()) continue;
      const Scalar inv = s.inverse();
      for (auto& t : y) t *= inv;
      break;
    }
    return Infeasible{std::move(y)};
  }
  Vector x = zero_vector(f, n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    x[piv[i]] = rows[i][n];
    is_pivot[piv[i]] = true;
  }
  std::vector<Vector> gens;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    Vector k = zero_vector(f, n);
    k[c] = Scalar::one(f);
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (!rows[i][c].is_zero()) k[piv[i]] = -rows[i][c];
    gens.push_back(std::move(k));
  }
  return Solution{std::move(x), Subspace::span(f, n, gens)};
}

Subspace kernel(const Matrix& a) {
  auto res = solve_linear(a, zero_vector(a.field(), a.rows()));
  return std::get<Solution>(res).kernel;
}

}  // namespace isojet
