#pragma once

// The truncated contact group K_beta = GL_n(O) x| Aut(O) acting on n-tuples
// of elements of O = O_{N,beta} by (M, phi) . f = M * (f o phi).

#include <string>
#include <vector>

#include "isojet/linalg.hpp"
#include "isojet/trunc.hpp"

namespace isojet {

/// n x n matrix over O, row-major.
using PolyMatrix = std::vector<std::vector<TruncPoly>>;

PolyMatrix poly_identity(const RingSpec& spec, std::size_t n);
PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_add(const PolyMatrix& a, const PolyMatrix& b);
/// Constant matrix embedded in O.
PolyMatrix lift_matrix(const RingSpec& spec, const Matrix& c);
/// Value at the origin.
Matrix constant_part(const PolyMatrix& m, const FieldSpec& field);
/// M * f.
std::vector<TruncPoly> poly_apply(const PolyMatrix& m, const std::vector<TruncPoly>& f);
/// Entrywise m o phi.
PolyMatrix poly_compose(const PolyMatrix& m, std::span<const TruncPoly> phi);
/// Inverse of a matrix over O; throws NotAUnit when det M(0) = 0.
PolyMatrix poly_inverse(const PolyMatrix& m);

/// (d phi_i / d x_j)(0).
Matrix linear_part(std::span<const TruncPoly> phi, const RingSpec& spec);

class ContactElement {
 public:
  /// No validity check; see `validate`.
  ContactElement(RingSpec spec, PolyMatrix m, std::vector<TruncPoly> phi);

  static ContactElement identity(const RingSpec& spec, std::size_t n);

  const RingSpec& spec() const { return spec_; }
  std::size_t n() const { return m_.size(); }
  const PolyMatrix& matrix() const { return m_; }
  const std::vector<TruncPoly>& phi() const { return phi_; }

  /// Throws InvalidElement (shape, phi(0) != 0), NotAUnit or SingularJacobian.
  void validate() const;
  bool is_valid() const;

  friend bool operator==(const ContactElement& a, const ContactElement& b);

 private:
  RingSpec spec_;
  PolyMatrix m_;
  std::vector<TruncPoly> phi_;
};

/// M * (f o phi).
PolySystem act(const ContactElement& g, const PolySystem& f);

/// (M2 * (M1 o phi2), phi1 o phi2); act(group_mul(g2, g1), f) = act(g2, act(g1, f)).
ContactElement group_mul(const ContactElement& g2, const ContactElement& g1);

/// Two-sided inverse, built degree by degree.
ContactElement invert(const ContactElement& g);

/// phi^{-1} alone; throws SingularJacobian.
std::vector<TruncPoly> invert_automorphism(std::span<const TruncPoly> phi, const RingSpec& spec);

/// C with det(C(1 - AB) + B) != 0. C kills a complement of ker B and maps a
/// basis of ker B onto a complement of im B.
Matrix mather_complement(const Matrix& a, const Matrix& b);

/// D = C(1 - AB) + B with C = mather_complement(A(0), B(0)). Given
/// A (f o phi) = f(x+a) and B f(x+a) = f o phi, returns (D, phi), where D is a
/// unit and D f(x+a) = f o phi. The element carrying f to f(x+a) is
/// (D^{-1}, phi); see `orbit_witness`.
ContactElement witness_from_cofactors(const PolySystem& f, const Vector& a, const PolyMatrix& A,
                                      const PolyMatrix& B, std::span<const TruncPoly> phi);

/// (D, phi) -> (D^{-1}, phi).
ContactElement orbit_witness(const ContactElement& cofactor_witness);

struct WitnessCheck {
  bool ok;
  /// Empty when ok; otherwise the first failing condition.
  std::string reason;
};

/// act(g, f(x + a1)) == f(x + a2) exactly. Throws PointNotOnVariety.
WitnessCheck check_equivalence_witness(const PolySystem& f, const Vector& a1, const Vector& a2,
                                       const ContactElement& g);
bool verify_equivalence_witness(const PolySystem& f, const Vector& a1, const Vector& a2, const ContactElement& g);

}  // namespace isojet
