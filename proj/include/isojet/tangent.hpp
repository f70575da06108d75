#pragma once

// Orbit tangent spaces, contact-invariant fingerprints and the j-invariant of
// a binary quartic tangent cone.

#include <string>
#include <vector>

#include "isojet/linalg.hpp"
#include "isojet/trunc.hpp"

namespace isojet {

/// T_f in O_{N,beta}^n, with coordinate i * dim + mono for component i.
/// Spanned by x^a E_il f (all a) and x^a df/dx_j (|a| >= 1).
Subspace orbit_tangent_space(const PolySystem& f);

struct Fingerprint {
  std::string field;
  std::uint64_t characteristic = 0;
  unsigned beta = 0;
  /// Degrees of the minimal generators of the ideal of lowest-degree forms
  /// of (f), ascending; equals (ord f) for a single nonzero equation.
  std::vector<unsigned> orders;
  /// hilbert[d] = dim O^n / (T_f + m^{d+1} O^n); non-decreasing.
  std::vector<std::size_t> hilbert;
  /// hilbert[beta].
  std::size_t codim = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const PolySystem& f);

/// Lowest-degree homogeneous part; throws ZeroInput for f = 0.
TruncPoly tangent_cone(const TruncPoly& f);

/// A point (a : b) of P^1.
struct ProjectivePoint {
  Scalar a, b;
};

/// The four zeros of a binary quartic form in x_1, x_2, ordered
/// deterministically. Throws RepeatedRoots or RootsNotInField.
std::vector<ProjectivePoint> quartic_roots(const TruncPoly& q);

/// (p1, p2; p3, p4) = [13][24] / ([14][23]) with [ij] = a_i b_j - a_j b_i.
Scalar cross_ratio(const ProjectivePoint& p1, const ProjectivePoint& p2, const ProjectivePoint& p3,
                   const ProjectivePoint& p4);

/// 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2); l must avoid 0 and 1.
Scalar j_of_lambda(const Scalar& lambda);

/// j-invariant of the four zeros of q.
Scalar quartic_j_invariant(const TruncPoly& q);

}  // namespace isojet
