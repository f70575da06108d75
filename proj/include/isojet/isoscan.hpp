#pragma once

// Point scans of V(f) grouped by contact fingerprint, and an exhaustive
// contact-orbit oracle for tiny jet spaces.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "isojet/contact.hpp"
#include "isojet/tangent.hpp"

namespace isojet {

/// Every point of F_q^N.
struct FiniteDomain {};

/// Rationals a/b with 1 <= b <= max_denominator and lower <= a/b <= upper in
/// each coordinate.
struct RationalBox {
  long lower = 0;
  long upper = 0;
  long max_denominator = 1;
};

using ScanDomain = std::variant<FiniteDomain, RationalBox>;

inline constexpr std::uint64_t default_domain_cap = 1000000;

/// Zeros of f in the domain, lexicographic in the field order. f must hold
/// exact polynomials. Throws DomainTooLarge when the domain has more than
/// `cap` points.
std::vector<Vector> enumerate_points(const PolySystem& f, const ScanDomain& domain,
                                     std::uint64_t cap = default_domain_cap);

/// 2 * (total degree of f), at least 1.
unsigned default_scan_beta(const PolySystem& f);

struct PointReport {
  Vector point;
  Fingerprint fingerprint;
  /// Rank of the Jacobian matrix at the point; smooth iff rank == n.
  std::size_t jacobian_rank = 0;
  bool smooth = false;
  /// Set when the tangent cone at the point is a binary quartic form in the
  /// first two variables with four distinct zeros in the field.
  std::optional<Scalar> j_invariant;
  /// "ok", or why no j-invariant exists at this point.
  std::string j_status;
};

struct ScanReport {
  PolySystem f;
  /// Points in canonical order.
  std::vector<PointReport> points;
  /// Indices into `points`; blocks are the fibers of the fingerprint map,
  /// ordered by first member.
  std::vector<std::vector<std::size_t>> classes;
};

/// Fingerprint of taylor_shift(f, a) for every a. Throws PointNotOnVariety.
/// Points are processed on up to `threads` workers; the report does not
/// depend on the thread count.
ScanReport classify(const PolySystem& f, const std::vector<Vector>& points, unsigned threads = 0);

/// Some valid g0 with act(g0, f) == g, found by running through every
/// automorphism of O_{N,beta} and solving for the unit. Requires a prime
/// field with q <= 3, N <= 2, n = 1, beta <= 2; throws SearchSpaceTooLarge
/// otherwise.
std::optional<ContactElement> brute_force_witness(const PolySystem& f, const PolySystem& g);
bool brute_force_equiv(const PolySystem& f, const PolySystem& g);
/// Whether brute_force_witness accepts this ring and system size.
bool brute_force_feasible(const RingSpec& spec, std::size_t n);

enum class EquivalenceTier { witnessed, exhaustive, candidate, not_equivalent };

std::string tier_name(EquivalenceTier tier);

struct EquivalenceAssessment {
  EquivalenceTier tier;
  std::optional<ContactElement> witness;
  unsigned beta;
  /// Why the tier was chosen.
  std::string basis;
};

/// Best available statement about f ~ g at beta. A supplied witness that
/// checks gives `witnessed`; distinct fingerprints or a failed exhaustive
/// search give `not_equivalent`; otherwise `exhaustive` or `candidate`.
EquivalenceAssessment assess_equivalence(const PolySystem& f, const PolySystem& g,
                                         const std::optional<ContactElement>& witness = std::nullopt);

}  // namespace isojet
