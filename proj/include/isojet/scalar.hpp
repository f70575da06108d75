#pragma once

// Exact scalars over Q and F_{p^m}.

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "isojet/error.hpp"

namespace isojet {

struct FieldData;

/// Handle to an interned base field. Two handles compare equal iff they
/// name the same field (same characteristic and modulus).
class FieldSpec {
 public:
  FieldSpec();  // Q

  static FieldSpec rationals();
  static FieldSpec prime(std::uint32_t p);
  /// F_{p^m} with modulus given by its coefficients, lowest degree first;
  /// the modulus must be monic of degree m and irreducible over F_p.
  static FieldSpec extension(std::uint32_t p, std::vector<std::uint32_t> modulus);
  /// `Q`, `F7`, `F4[g^2+g+1]`, or a built-in `F4`, `F8`, `F9`, `F25`, `F27`.
  static FieldSpec parse(std::string_view text);

  bool is_finite() const;
  std::uint32_t characteristic() const;  // 0 for Q
  std::uint32_t degree() const;          // m
  std::uint64_t order() const;           // p^m; 0 for Q
  const std::vector<std::uint32_t>& modulus() const;
  std::string name() const;

  const FieldData* data() const { return data_; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.data_ == b.data_; }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return a.data_ != b.data_; }

 private:
  explicit FieldSpec(const FieldData* d) : data_(d) {}
  const FieldData* data_;
};

/// Immutable exact field element. Finite-field elements are stored as the
/// base-p encoding of their residue polynomial in the generator g.
class Scalar {
 public:
  Scalar();  // rational zero

  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar from_int(const FieldSpec& f, long v);
  static Scalar from_mpz(const FieldSpec& f, const mpz_class& v);
  static Scalar from_rational(const FieldSpec& f, const mpq_class& v);
  /// Finite fields only: the element with canonical index i in [0, q).
  static Scalar from_index(const FieldSpec& f, std::uint64_t i);
  /// The generator g of F_{p^m} (m > 1).
  static Scalar generator(const FieldSpec& f);
  /// `p/q` or an integer over Q; an integer residue or a polynomial in `g`
  /// over a finite field.
  static Scalar parse(const FieldSpec& f, std::string_view text);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  std::uint64_t index() const;      // finite fields only
  const mpq_class& rational() const;  // Q only

  Scalar operator+(const Scalar& b) const;
  Scalar operator-(const Scalar& b) const;
  Scalar operator*(const Scalar& b) const;
  Scalar operator/(const Scalar& b) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;
  /// Unique s with s^p = a; Frobenius is bijective on F_{p^m}.
  Scalar pth_root() const;

  std::string to_string() const;
  /// True when to_string() needs parentheses as a polynomial coefficient.
  bool is_compound() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  /// Total order: residue index on finite fields, numeric value on Q.
  friend bool operator<(const Scalar& a, const Scalar& b);

 private:
  Scalar(FieldSpec f, std::uint64_t r) : field_(f), value_(r) {}
  Scalar(FieldSpec f, mpq_class q) : field_(f), value_(std::move(q)) {}
  void check_same(const Scalar& b) const;

  FieldSpec field_;
  std::variant<std::uint64_t, mpq_class> value_;
};

/// All elements of a finite field in canonical order.
std::vector<Scalar> field_elements(const FieldSpec& f);

bool is_prime(std::uint64_t n);

}  // namespace isojet
