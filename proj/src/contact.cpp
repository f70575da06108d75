#include "isojet/contact.hpp"

#include "isojet/error.hpp"

namespace isojet {

namespace {

void check_square(const PolyMatrix& m, std::size_t n, const char* what) {
  if (m.size() != n) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has the wrong number of rows");
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " is not square");
}

const RingSpec& matrix_spec(const PolyMatrix& m) {
  if (m.empty() || m[0].empty()) throw Error(ErrorKind::DimensionMismatch, "empty polynomial matrix");
  return m[0][0].spec();
}

std::vector<TruncPoly> coordinates(const RingSpec& spec) {
  std::vector<TruncPoly> out;
  for (std::size_t i = 0; i < spec.nvars(); ++i) out.push_back(TruncPoly::variable(spec, i));
  return out;
}

}  // namespace

PolyMatrix poly_identity(const RingSpec& spec, std::size_t n) {
  return lift_matrix(spec, Matrix::identity(spec.field(), n));
}

PolyMatrix lift_matrix(const RingSpec& spec, const Matrix& c) {
  PolyMatrix out(c.rows(), std::vector<TruncPoly>(c.cols(), TruncPoly(spec)));
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) out[i][j] = TruncPoly::constant(spec, c(i, j));
  return out;
}

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  const RingSpec& spec = matrix_spec(a);
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  for (const auto& row : a)
    if (row.size() != k) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes differ");
  PolyMatrix out(n, std::vector<TruncPoly>(m, TruncPoly(spec)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

PolyMatrix poly_add(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes differ");
  PolyMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes differ");
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
  }
  return out;
}

Matrix constant_part(const PolyMatrix& m, const FieldSpec& field) {
  Matrix out(field, m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j].constant_term();
  return out;
}

std::vector<TruncPoly> poly_apply(const PolyMatrix& m, const std::vector<TruncPoly>& f) {
  if (f.empty()) return {};
  std::vector<TruncPoly> out(m.size(), TruncPoly(f[0].spec()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != f.size()) throw Error(ErrorKind::DimensionMismatch, "matrix and system sizes differ");
    for (std::size_t j = 0; j < f.size(); ++j)
      if (!m[i][j].is_zero() && !f[j].is_zero()) out[i] += m[i][j] * f[j];
  }
  return out;
}

PolyMatrix poly_compose(const PolyMatrix& m, std::span<const TruncPoly> phi) {
  PolyMatrix out = m;
  for (auto& row : out)
    for (auto& e : row) e = compose(e, phi);
  return out;
}

PolyMatrix poly_inverse(const PolyMatrix& m) {
  const RingSpec& spec = matrix_spec(m);
  check_square(m, m.size(), "matrix");
  const Matrix m0 = constant_part(m, spec.field());
  if (m0.determinant().is_zero()) throw Error(ErrorKind::NotAUnit, "matrix is not invertible at the origin");
  const PolyMatrix inv0 = lift_matrix(spec, m0.inverse());
  // m = m0 (1 + t) with t = m0^{-1} (m - m0) nilpotent of order beta + 1.
  PolyMatrix t = poly_mul(inv0, m);
  for (std::size_t i = 0; i < t.size(); ++i) t[i][i] -= TruncPoly::constant(spec, Scalar::one(spec.field()));
  for (auto& row : t)
    for (auto& e : row) e = -e;
  PolyMatrix sum = poly_identity(spec, m.size()), power = sum;
  for (unsigned k = 1; k <= spec.beta(); ++k) {
    power = poly_mul(power, t);
    sum = poly_add(sum, power);
  }
  return poly_mul(sum, inv0);
}

Matrix linear_part(std::span<const TruncPoly> phi, const RingSpec& spec) {
  Matrix out(spec.field(), phi.size(), spec.nvars());
  if (spec.beta() == 0) return out;
  for (std::size_t i = 0; i < phi.size(); ++i)
    for (std::size_t j = 0; j < spec.nvars(); ++j) out(i, j) = phi[i].coeff(1 + j);
  return out;
}

ContactElement::ContactElement(RingSpec spec, PolyMatrix m, std::vector<TruncPoly> phi)
    : spec_(std::move(spec)), m_(std::move(m)), phi_(std::move(phi)) {}

ContactElement ContactElement::identity(const RingSpec& spec, std::size_t n) {
  return ContactElement(spec, poly_identity(spec, n), coordinates(spec));
}

void ContactElement::validate() const {
  if (phi_.size() != spec_.nvars())
    throw Error(ErrorKind::InvalidElement, "phi must have one entry per variable");
  for (const auto& row : m_)
    if (row.size() != m_.size()) throw Error(ErrorKind::InvalidElement, "M must be square");
  for (const auto& row : m_)
    for (const auto& e : row)
      if (e.spec() != spec_) throw Error(ErrorKind::SpecMismatch, "entry of M lives in another ring");
  for (std::size_t i = 0; i < phi_.size(); ++i) {
    if (phi_[i].spec() != spec_) throw Error(ErrorKind::SpecMismatch, "entry of phi lives in another ring");
    if (!phi_[i].constant_term().is_zero())
      throw Error(ErrorKind::InvalidElement, "phi_" + std::to_string(i + 1) + " does not vanish at the origin");
  }
  if (!m_.empty() && constant_part(m_, spec_.field()).determinant().is_zero())
    throw Error(ErrorKind::NotAUnit, "det M(0) = 0");
  if (spec_.beta() >= 1 && linear_part(phi_, spec_).determinant().is_zero())
    throw Error(ErrorKind::SingularJacobian, "det(d phi_i / d x_j)(0) = 0");
}

bool ContactElement::is_valid() const {
  try {
    validate();
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool operator==(const ContactElement& a, const ContactElement& b) {
  return a.spec_ == b.spec_ && a.m_ == b.m_ && a.phi_ == b.phi_;
}

PolySystem act(const ContactElement& g, const PolySystem& f) {
  if (g.spec() != f.spec()) throw Error(ErrorKind::SpecMismatch, "contact element and system live in different rings");
  if (g.n() != f.size()) throw Error(ErrorKind::SpecMismatch, "contact element and system have different sizes");
  std::vector<TruncPoly> pulled;
  for (const auto& e : f.entries()) pulled.push_back(compose(e, g.phi()));
  return PolySystem(f.spec(), poly_apply(g.matrix(), pulled));
}

ContactElement group_mul(const ContactElement& g2, const ContactElement& g1) {
  if (g2.spec() != g1.spec() || g2.n() != g1.n())
    throw Error(ErrorKind::SpecMismatch, "contact elements of different groups");
  std::vector<TruncPoly> phi;
  for (const auto& p : g1.phi()) phi.push_back(compose(p, g2.phi()));
  const PolyMatrix m = g2.n() == 0 ? PolyMatrix{} : poly_mul(g2.matrix(), poly_compose(g1.matrix(), g2.phi()));
  return ContactElement(g2.spec(), m, std::move(phi));
}

std::vector<TruncPoly> invert_automorphism(std::span<const TruncPoly> phi, const RingSpec& spec) {
  const std::size_t n = spec.nvars();
  if (phi.size() != n) throw Error(ErrorKind::InvalidElement, "phi must have one entry per variable");
  for (const auto& p : phi)
    if (!p.constant_term().is_zero()) throw Error(ErrorKind::InvalidElement, "phi does not vanish at the origin");
  const auto x = coordinates(spec);
  if (spec.beta() == 0) return x;
  const Matrix l = linear_part(phi, spec);
  if (l.determinant().is_zero()) throw Error(ErrorKind::SingularJacobian, "det(d phi_i / d x_j)(0) = 0");
  const Matrix linv = l.inverse();
  auto mix = [&](const std::vector<TruncPoly>& v) {
    std::vector<TruncPoly> out(n, TruncPoly(spec));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!linv(i, j).is_zero()) out[i] += v[j].scale(linv(i, j));
    return out;
  };
  // psi agrees with phi^{-1} through degree d - 1 at the start of each step.
  std::vector<TruncPoly> psi = mix(x);
  for (unsigned d = 2; d <= spec.beta(); ++d) {
    std::vector<TruncPoly> residual;
    for (std::size_t i = 0; i < n; ++i) residual.push_back((compose(phi[i], psi) - x[i]).homogeneous_part(d));
    const auto delta = mix(residual);
    for (std::size_t i = 0; i < n; ++i) psi[i] -= delta[i];
  }
  return psi;
}

ContactElement invert(const ContactElement& g) {
  const RingSpec& spec = g.spec();
  if (!g.matrix().empty() && constant_part(g.matrix(), spec.field()).determinant().is_zero())
    throw Error(ErrorKind::NotAUnit, "det M(0) = 0");
  auto psi = invert_automorphism(g.phi(), spec);
  const PolyMatrix m = g.n() == 0 ? PolyMatrix{} : poly_inverse(poly_compose(g.matrix(), psi));
  return ContactElement(spec, m, std::move(psi));
}

Matrix mather_complement(const Matrix& a, const Matrix& b) {
  const FieldSpec& field = b.field();
  const std::size_t n = b.rows();
  if (b.cols() != n || a.rows() != n || a.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "mather_complement needs square matrices of equal size");
  const auto ker = kernel(b).basis();
  const std::size_t r = n - ker.size();

  auto unit = [&](std::size_t i) {
    Vector e = zero_vector(field, n);
    e[i] = Scalar::one(field);
    return e;
  };
  // Greedy completion of `base` by standard vectors to a basis of k^n.
  auto complete = [&](const std::vector<Vector>& base) {
    Subspace s = Subspace::span(field, n, base);
    std::vector<Vector> extra;
    for (std::size_t i = 0; i < n && s.dim() < n; ++i) {
      const Vector e = unit(i);
      if (s.contains(e)) continue;
      extra.push_back(e);
      s = s.sum(Subspace::span(field, n, {e}));
    }
    return extra;
  };

  // Columns e_1..e_r complete ker B; e_{r+1}..e_n span ker B.
  std::vector<Vector> basis = complete(ker);
  basis.insert(basis.end(), ker.begin(), ker.end());
  std::vector<Vector> image;
  for (std::size_t i = 0; i < r; ++i) image.push_back(b.apply(basis[i]));
  const std::vector<Vector> eprime = complete(image);

  Matrix e(field, n, n), target(field, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      e(i, j) = basis[j][i];
      if (j >= r) target(i, j) = eprime[j - r][i];
    }
  const Matrix c = target * e.inverse();
  const Matrix d = c * (Matrix::identity(field, n) - a * b) + b;
  if (d.determinant().is_zero()) throw Error(ErrorKind::PreconditionFailed, "internal: Mather complement is singular");
  return c;
}

ContactElement witness_from_cofactors(const PolySystem& f, const Vector& a, const PolyMatrix& A, const PolyMatrix& B,
                                      std::span<const TruncPoly> phi) {
  const RingSpec& spec = f.spec();
  const std::size_t n = f.size();
  check_square(A, n, "A");
  check_square(B, n, "B");
  const PolySystem shifted = taylor_shift(f, a);
  std::vector<TruncPoly> pulled;
  for (const auto& e : f.entries()) pulled.push_back(compose(e, phi));

  const auto lhs_a = poly_apply(A, pulled);
  for (std::size_t i = 0; i < n; ++i)
    if (lhs_a[i] != shifted[i])
      throw Error(ErrorKind::PreconditionFailed, "(A (f o phi))_" + std::to_string(i + 1) + " = " +
                                                      lhs_a[i].to_string() + " but f(x+a)_" + std::to_string(i + 1) +
                                                      " = " + shifted[i].to_string());
  const auto lhs_b = poly_apply(B, shifted.entries());
  for (std::size_t i = 0; i < n; ++i)
    if (lhs_b[i] != pulled[i])
      throw Error(ErrorKind::PreconditionFailed, "(B f(x+a))_" + std::to_string(i + 1) + " = " +
                                                      lhs_b[i].to_string() + " but (f o phi)_" + std::to_string(i + 1) +
                                                      " = " + pulled[i].to_string());

  const Matrix c = mather_complement(constant_part(A, spec.field()), constant_part(B, spec.field()));
  PolyMatrix one_minus_ab = poly_mul(A, B);
  for (auto& row : one_minus_ab)
    for (auto& e : row) e = -e;
  for (std::size_t i = 0; i < n; ++i) one_minus_ab[i][i] += TruncPoly::constant(spec, Scalar::one(spec.field()));
  const PolyMatrix d = poly_add(poly_mul(lift_matrix(spec, c), one_minus_ab), B);
  ContactElement out(spec, d, std::vector<TruncPoly>(phi.begin(), phi.end()));
  out.validate();
  return out;
}

ContactElement orbit_witness(const ContactElement& w) {
  return ContactElement(w.spec(), w.n() == 0 ? PolyMatrix{} : poly_inverse(w.matrix()), w.phi());
}

WitnessCheck check_equivalence_witness(const PolySystem& f, const Vector& a1, const Vector& a2,
                                       const ContactElement& g) {
  if (!f.vanishes_at(a1)) throw Error(ErrorKind::PointNotOnVariety, "f does not vanish at the first point");
  if (!f.vanishes_at(a2)) throw Error(ErrorKind::PointNotOnVariety, "f does not vanish at the second point");
  if (g.spec() != f.spec() || g.n() != f.size())
    throw Error(ErrorKind::SpecMismatch, "witness and system live in different rings");
  try {
    g.validate();
  } catch (const Error& e) {
    return {false, std::string("invalid contact element: ") + e.what()};
  }
  const PolySystem moved = act(g, taylor_shift(f, a1));
  const PolySystem target = taylor_shift(f, a2);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (moved[i] != target[i])
      return {false, "entry " + std::to_string(i + 1) + ": got " + moved[i].to_string() + ", expected " +
                         target[i].to_string()};
  return {true, {}};
}

bool verify_equivalence_witness(const PolySystem& f, const Vector& a1, const Vector& a2, const ContactElement& g) {
  return check_equivalence_witness(f, a1, a2, g).ok;
}

}  // namespace isojet
