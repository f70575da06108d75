#pragma once

// The truncated polynomial ring O_{N,beta} = k[x_1..x_N]/(x)^{beta+1}.
//
// Monomials of total degree <= beta are indexed in graded-lexicographic
// order: degree ascending, and within one degree x_1 > x_2 > ... > x_N
// lexicographically. Every coordinate vector in the library uses this order.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "isojet/linalg.hpp"
#include "isojet/scalar.hpp"

namespace isojet {

struct RingData;

class RingSpec {
 public:
  /// Variables default to x, y, z, w for N <= 4 and x1..xN otherwise.
  RingSpec(std::size_t nvars, unsigned beta, FieldSpec field, std::vector<std::string> names = {});

  std::size_t nvars() const;
  unsigned beta() const;
  const FieldSpec& field() const;
  const std::vector<std::string>& var_names() const;

  /// Number of monomials, binom(N + beta, N).
  std::size_t dim() const;
  std::span<const std::uint16_t> exponents(std::size_t mono) const;
  unsigned degree(std::size_t mono) const;
  /// First index of degree d; degree_start(beta + 1) == dim().
  std::size_t degree_start(unsigned d) const;
  /// -1 when the exponent vector is not a monomial of this ring.
  long index_of(std::span<const std::uint16_t> exps) const;
  /// Index of the product, or -1 when its degree exceeds beta.
  long mul_index(std::size_t a, std::size_t b) const;
  /// Index of x_var^e (e <= beta).
  std::size_t var_power(std::size_t var, unsigned e) const;
  std::string monomial_string(std::size_t mono) const;

  /// Same variables and field, different truncation order.
  RingSpec with_beta(unsigned beta) const;

  friend bool operator==(const RingSpec& a, const RingSpec& b);
  friend bool operator!=(const RingSpec& a, const RingSpec& b) { return !(a == b); }

 private:
  std::shared_ptr<const RingData> d_;
};

struct Term {
  std::uint32_t mono;
  Scalar coef;
};

/// Element of O_{N,beta}: sparse nonzero terms sorted by monomial index.
///
/// `truncated()` records that nonzero terms above degree beta were
/// discarded while producing the value, so it no longer equals an exact
/// polynomial. Equality ignores the flag.
class TruncPoly {
 public:
  explicit TruncPoly(RingSpec spec);

  static TruncPoly constant(const RingSpec& spec, const Scalar& c);
  static TruncPoly variable(const RingSpec& spec, std::size_t var);
  static TruncPoly monomial(const RingSpec& spec, std::size_t mono, const Scalar& c);
  /// Build from (monomial index, coefficient) pairs; zeros are dropped.
  static TruncPoly from_dense(const RingSpec& spec, const Vector& coeffs);

  const RingSpec& spec() const { return spec_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool truncated() const { return truncated_; }
  void mark_truncated(bool t = true) { truncated_ = t; }

  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(std::size_t mono) const;
  Scalar constant_term() const { return coeff(0); }
  /// Lowest degree with a nonzero coefficient; beta + 1 for zero.
  unsigned order() const;
  /// Highest degree with a nonzero coefficient; 0 for zero.
  unsigned degree() const;
  Vector dense() const;

  TruncPoly operator+(const TruncPoly& b) const;
  TruncPoly operator-(const TruncPoly& b) const;
  TruncPoly operator*(const TruncPoly& b) const;
  TruncPoly operator-() const;
  TruncPoly scale(const Scalar& c) const;
  TruncPoly& operator+=(const TruncPoly& b) { return *this = *this + b; }
  TruncPoly& operator-=(const TruncPoly& b) { return *this = *this - b; }
  TruncPoly& operator*=(const TruncPoly& b) { return *this = *this * b; }

  /// Formal partial derivative. Degree-beta information of the result is
  /// absent, so callers budget beta one higher than the degree they read.
  TruncPoly derivative(std::size_t var) const;
  /// Hasse derivative D^alpha: x^g -> prod binom(g_i, alpha_i) x^(g - alpha).
  TruncPoly hasse_derivative(std::span<const std::uint16_t> alpha) const;
  /// Homogeneous component of degree d.
  TruncPoly homogeneous_part(unsigned d) const;
  /// Terms of degree <= d.
  TruncPoly jet(unsigned d) const;
  /// The same coefficients in a ring with another truncation order;
  /// terms above the new beta are dropped.
  TruncPoly change_beta(const RingSpec& target) const;
  /// Substitute x_var = 0.
  TruncPoly restrict_zero(std::size_t var) const;
  /// Coefficient of x_var^e viewed as a polynomial in the other variables.
  TruncPoly var_coefficient(std::size_t var, unsigned e) const;
  /// Exact evaluation at a point (the value as a polynomial).
  Scalar evaluate(const Vector& point) const;

  bool is_unit() const { return !constant_term().is_zero(); }
  /// g with f * g = 1; throws NotAUnit when f(0) = 0.
  TruncPoly inverse() const;

  std::string to_string() const;

  friend bool operator==(const TruncPoly& a, const TruncPoly& b);
  friend bool operator!=(const TruncPoly& a, const TruncPoly& b) { return !(a == b); }

 private:
  RingSpec spec_;
  std::vector<Term> terms_;
  bool truncated_ = false;
};

/// f(phi_1, ..., phi_N) truncated at beta. Each phi_i must vanish at the
/// origin unless `allow_constant_term` is set, in which case f is treated as
/// the exact polynomial it represents.
TruncPoly compose(const TruncPoly& f, std::span<const TruncPoly> phi, bool allow_constant_term = false);

/// The tuple f = (f_1, ..., f_n).
class PolySystem {
 public:
  PolySystem(RingSpec spec, std::vector<TruncPoly> entries);

  const RingSpec& spec() const { return spec_; }
  std::size_t size() const { return entries_.size(); }
  const TruncPoly& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<TruncPoly>& entries() const { return entries_; }
  bool truncated() const;

  PolySystem change_beta(const RingSpec& target) const;
  bool vanishes_at(const Vector& point) const;

  friend bool operator==(const PolySystem& a, const PolySystem& b) {
    return a.spec_ == b.spec_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const PolySystem& a, const PolySystem& b) { return !(a == b); }

 private:
  RingSpec spec_;
  std::vector<TruncPoly> entries_;
};

/// f(x + a), exact. Throws TruncationUnsafe if an entry is not a known exact
/// polynomial of degree <= beta.
PolySystem taylor_shift(const PolySystem& f, const Vector& point);

enum class SpanWeights { plain, maximal_ideal };

/// k-span of { x^alpha * f_i } in monomial coordinates of O_{N,beta};
/// `maximal_ideal` restricts to |alpha| >= 1.
Subspace ideal_span(const PolySystem& f, SpanWeights weights = SpanWeights::plain);

/// Vector of a polynomial in monomial coordinates and back.
Vector to_coords(const TruncPoly& p);
TruncPoly from_coords(const RingSpec& spec, const Vector& v);

}  // namespace isojet
