#pragma once

// Logarithmic derivations d = sum g_j d/dx_j with d(f_i) = sum_l H_il f_l,
// inseparability certificates, and flow straightening in characteristic 0.

#include <variant>
#include <vector>

#include "isojet/contact.hpp"
#include "isojet/linalg.hpp"
#include "isojet/trunc.hpp"

namespace isojet {

struct Derivation {
  RingSpec spec;
  std::vector<TruncPoly> g;
  /// n x n; empty when the derivation is not attached to a system.
  PolyMatrix h;

  /// sum_j g_j du/dx_j.
  TruncPoly apply(const TruncPoly& u) const;
  /// Some g_j(0) != 0.
  bool is_regular() const;
};

/// sum_j g_j df_i/dx_j - sum_l H_il f_l, truncated to degrees < bound.
std::vector<TruncPoly> attachment_residual(const PolySystem& f, const Derivation& d, unsigned bound);

/// The attachment identity holds in degrees < bound.
bool is_attached(const PolySystem& f, const Derivation& d, unsigned bound);

/// The linear system behind solve_log_derivation: rows are the coefficients
/// of x^m in equation i for deg m < beta_work, listed by (i, m). With D the
/// number of monomials of degree < beta_work, the unknowns are the
/// coefficients of g_j at monomials 1..D-1 (block j), then of H_il at
/// monomials 0..D-1 (block i * n + l).
struct LogDerSystem {
  Matrix a;
  Vector b;
  /// Row r describes (equation, monomial index).
  std::vector<std::pair<std::size_t, std::size_t>> rows;
};

LogDerSystem log_derivation_system(const PolySystem& f, const Vector& v, unsigned beta_work);

using LogDerResult = std::variant<Derivation, Infeasible>;

/// g_j(0) = v_j; the identity is imposed in degrees < beta_work.
/// Requires beta_work <= beta (PreconditionFailed).
LogDerResult solve_log_derivation(const PolySystem& f, const Vector& v, unsigned beta_work);

/// {v : solve_log_derivation(f, v, beta_work) is feasible}.
Subspace solvable_directions(const PolySystem& f, unsigned beta_work);

struct InseparabilityCertificate {
  PolySystem f;
  Vector a;
  ContactElement witness;
  /// a scaled so its first nonzero entry is 1.
  Vector direction;
  unsigned beta_work;
  /// y with y^T A = 0 and y . b != 0 for log_derivation_system(f, direction).
  Vector certificate;
};

/// Throws InvalidArgument (a = 0), WitnessInvalid or DerivationFeasible.
InseparabilityCertificate inseparability_certificate(const PolySystem& f, const Vector& a, const ContactElement& g,
                                                     unsigned beta_work);

/// Re-checks both halves of a certificate.
bool check_certificate(const InseparabilityCertificate& c);

struct SplitResult {
  /// Automorphism with psi^* d = d/dx_j in degrees < beta - 1.
  std::vector<TruncPoly> psi;
  std::size_t j;
  /// U (f o psi); free of x_j in degrees < beta.
  PolySystem residual;
  /// Unit matrix U.
  PolyMatrix multipliers;
};

/// Characteristic 0 only (CharPNotSupported). Throws NotRegular,
/// PreconditionFailed when d is not attached to f in degrees < beta, and
/// StraightenFailed if a final check does not hold.
SplitResult straighten_and_split(const PolySystem& f, const Derivation& d);

/// The checks performed before straighten_and_split returns.
bool check_split(const PolySystem& f, const Derivation& d, const SplitResult& s);

}  // namespace isojet
