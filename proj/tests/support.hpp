#pragma once

// Seeded random generators shared by the property tests.

#include <cstdlib>
#include <random>
#include <string>

#include "isojet/contact.hpp"
#include "isojet/parse.hpp"
#include "isojet/trunc.hpp"

namespace isojet::testing {

inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("ISOJET_SEED")) return std::stoull(s);
  return 20240611ULL;
}

class Gen {
 public:
  explicit Gen(std::uint64_t salt = 0) : rng_(test_seed() ^ (salt * 0x9E3779B97F4A7C15ULL)) {}

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Scalar scalar(const FieldSpec& f) {
    if (f.is_finite()) return Scalar::from_index(f, uniform(0, f.order() - 1));
    const long num = static_cast<long>(uniform(0, 14)) - 7;
    const long den = static_cast<long>(uniform(1, 4));
    return Scalar::from_rational(f, mpq_class(num, den));
  }

  Scalar nonzero(const FieldSpec& f) {
    for (;;) {
      Scalar s = scalar(f);
      if (!s.is_zero()) return s;
    }
  }

  /// Sparse random element; `min_order` forces terms of degree >= min_order.
  TruncPoly poly(const RingSpec& spec, unsigned min_order = 0, double density = 0.4) {
    Vector v = zero_vector(spec.field(), spec.dim());
    for (std::size_t i = spec.degree_start(min_order); i < spec.dim(); ++i)
      if (coin(density)) v[i] = scalar(spec.field());
    return TruncPoly::from_dense(spec, v);
  }

  TruncPoly unit(const RingSpec& spec) {
    return poly(spec, 1) + TruncPoly::constant(spec, nonzero(spec.field()));
  }

  Vector vector(const FieldSpec& f, std::size_t n) {
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(scalar(f));
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Unit matrix plus an automorphism with invertible linear part.
inline ContactElement random_element(Gen& gen, const RingSpec& r, std::size_t n) {
  const FieldSpec& f = r.field();
  Matrix m0(f, n, n), l(f, r.nvars(), r.nvars());
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m0(i, j) = gen.scalar(f);
  } while (m0.determinant().is_zero());
  do {
    for (std::size_t i = 0; i < r.nvars(); ++i)
      for (std::size_t j = 0; j < r.nvars(); ++j) l(i, j) = gen.scalar(f);
  } while (l.determinant().is_zero());
  PolyMatrix m = lift_matrix(r, m0);
  for (auto& row : m)
    for (auto& e : row) e += gen.poly(r, 1, 0.3);
  std::vector<TruncPoly> phi;
  for (std::size_t i = 0; i < r.nvars(); ++i) {
    TruncPoly p = gen.poly(r, 2, 0.3);
    for (std::size_t j = 0; j < r.nvars(); ++j) p += TruncPoly::variable(r, j).scale(l(i, j));
    phi.push_back(p);
  }
  return ContactElement(r, m, phi);
}

inline PolySystem random_system(Gen& gen, const RingSpec& r, std::size_t n, unsigned min_order = 0) {
  std::vector<TruncPoly> es;
  for (std::size_t i = 0; i < n; ++i) es.push_back(gen.poly(r, min_order, 0.4));
  return PolySystem(r, es);
}

inline TruncPoly P(const RingSpec& spec, const std::string& text) { return parse_poly(text, spec); }

}  // namespace isojet::testing
