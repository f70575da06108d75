#include "isojet/tangent.hpp"

#include <algorithm>

#include "isojet/error.hpp"

namespace isojet {

namespace {

// Generators of T_f, each as n component polynomials.
std::vector<std::vector<TruncPoly>> tangent_generators(const PolySystem& f) {
  const RingSpec& spec = f.spec();
  const std::size_t n = f.size();
  std::vector<std::vector<TruncPoly>> gens;
  const TruncPoly zero(spec);
  for (std::size_t mono = 0; mono < spec.dim(); ++mono) {
    const TruncPoly xa = TruncPoly::monomial(spec, mono, Scalar::one(spec.field()));
    for (std::size_t l = 0; l < n; ++l) {
      const TruncPoly m = xa * f[l];
      if (m.is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<TruncPoly> g(n, zero);
        g[i] = m;
        gens.push_back(std::move(g));
      }
    }
  }
  for (std::size_t j = 0; j < spec.nvars(); ++j) {
    std::vector<TruncPoly> df;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      df.push_back(f[i].derivative(j));
      any = any || !df.back().is_zero();
    }
    if (!any) continue;
    for (std::size_t mono = spec.degree_start(1); mono < spec.dim(); ++mono) {
      const TruncPoly xa = TruncPoly::monomial(spec, mono, Scalar::one(spec.field()));
      std::vector<TruncPoly> g;
      bool nonzero = false;
      for (std::size_t i = 0; i < n; ++i) {
        g.push_back(xa * df[i]);
        nonzero = nonzero || !g.back().is_zero();
      }
      if (nonzero) gens.push_back(std::move(g));
    }
  }
  return gens;
}

// Coordinates of the degree-k slice of v.
Vector degree_slice(const RingSpec& spec, const Vector& v, unsigned k) {
  return Vector(v.begin() + static_cast<long>(spec.degree_start(k)), v.begin() + static_cast<long>(spec.degree_start(k + 1)));
}

std::vector<unsigned> generator_degrees(const PolySystem& f) {
  const RingSpec& spec = f.spec();
  const Subspace ideal = ideal_span(f);
  // Rows of the echelon basis with pivot in degree k carry a basis of the
  // degree-k lowest forms.
  std::vector<std::vector<TruncPoly>> forms(spec.beta() + 1);
  for (std::size_t r = 0; r < ideal.dim(); ++r) {
    const unsigned k = spec.degree(ideal.pivots()[r]);
    forms[k].push_back(from_coords(spec, ideal.basis()[r]).homogeneous_part(k));
  }
  std::vector<unsigned> out;
  for (unsigned k = 0; k <= spec.beta(); ++k) {
    std::size_t inherited = 0;
    if (k > 0 && !forms[k - 1].empty()) {
      std::vector<Vector> prods;
      for (const auto& g : forms[k - 1])
        for (std::size_t j = 0; j < spec.nvars(); ++j)
          prods.push_back(degree_slice(spec, to_coords(g * TruncPoly::variable(spec, j)), k));
      inherited = Subspace::span(spec.field(), spec.degree_start(k + 1) - spec.degree_start(k), prods).dim();
    }
    for (std::size_t c = inherited; c < forms[k].size(); ++c) out.push_back(k);
  }
  return out;
}

}  // namespace

Subspace orbit_tangent_space(const PolySystem& f) {
  const RingSpec& spec = f.spec();
  const std::size_t dim = spec.dim(), n = f.size();
  std::vector<Vector> rows;
  for (const auto& g : tangent_generators(f)) {
    Vector v = zero_vector(spec.field(), n * dim);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& t : g[i].terms()) v[i * dim + t.mono] = t.coef;
    rows.push_back(std::move(v));
  }
  return Subspace::span(spec.field(), n * dim, rows);
}

Fingerprint fingerprint(const PolySystem& f) {
  const RingSpec& spec = f.spec();
  const std::size_t dim = spec.dim(), n = f.size();
  // Columns ordered by (degree, component, monomial): the echelon pivots of
  // T_f among the first columns count the image of T_f modulo m^{d+1}.
  std::vector<std::size_t> column(n * dim);
  std::size_t next = 0;
  for (unsigned d = 0; d <= spec.beta(); ++d)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t mono = spec.degree_start(d); mono < spec.degree_start(d + 1); ++mono)
        column[i * dim + mono] = next++;
  std::vector<Vector> rows;
  for (const auto& g : tangent_generators(f)) {
    Vector v = zero_vector(spec.field(), n * dim);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& t : g[i].terms()) v[column[i * dim + t.mono]] = t.coef;
    rows.push_back(std::move(v));
  }
  const Subspace t = Subspace::span(spec.field(), n * dim, rows);

  Fingerprint fp;
  fp.field = spec.field().name();
  fp.characteristic = spec.field().characteristic();
  fp.beta = spec.beta();
  fp.orders = generator_degrees(f);
  std::size_t pivot = 0;
  for (unsigned d = 0; d <= spec.beta(); ++d) {
    const std::size_t bound = n * spec.degree_start(d + 1);
    while (pivot < t.dim() && t.pivots()[pivot] < bound) ++pivot;
    fp.hilbert.push_back(bound - pivot);
  }
  fp.codim = fp.hilbert.back();
  return fp;
}

TruncPoly tangent_cone(const TruncPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroInput, "the tangent cone of 0 is undefined");
  return f.homogeneous_part(f.order());
}

namespace {

// Univariate polynomials, lowest coefficient first, no trailing zeros.
using Uni = std::vector<Scalar>;

void trim(Uni& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Uni uni_mod(Uni a, const Uni& b) {
  trim(a);
  const Scalar lead_inv = b.back().inverse();
  while (a.size() >= b.size()) {
    const Scalar c = a.back() * lead_inv;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return a;
}

std::size_t gcd_degree(Uni a, Uni b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Uni r = uni_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

Scalar uni_eval(const Uni& p, const Scalar& t) {
  Scalar acc = Scalar::zero(t.field());
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<mpz_class> divisors(mpz_class v) {
  if (v < 0) v = -v;
  if (v > mpz_class("1000000000000"))
    throw Error(ErrorKind::NotSupported, "coefficients too large for rational root search");
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  return out;
}

// Zeros of a squarefree univariate p with p(0) != 0.
std::vector<Scalar> rational_roots(const Uni& p) {
  const FieldSpec& f = p[0].field();
  mpz_class den = 1;
  for (const auto& c : p) den = lcm(den, c.rational().get_den());
  std::vector<mpz_class> ints;
  for (const auto& c : p) ints.push_back(mpz_class(c.rational() * den));
  std::vector<Scalar> out;
  for (const auto& num : divisors(ints.front()))
    for (const auto& dd : divisors(ints.back()))
      for (int sign : {1, -1}) {
        const Scalar cand = Scalar::from_rational(f, mpq_class(sign * num, dd));
        if (uni_eval(p, cand).is_zero() && std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
      }
  return out;
}

}  // namespace

std::vector<ProjectivePoint> quartic_roots(const TruncPoly& q) {
  const RingSpec& spec = q.spec();
  const FieldSpec& f = spec.field();
  if (spec.nvars() < 2 || spec.beta() < 4 || q.is_zero())
    throw Error(ErrorKind::InvalidArgument, "expected a nonzero binary quartic form");
  for (const auto& t : q.terms()) {
    const auto e = spec.exponents(t.mono);
    bool binary = e[0] + e[1] == 4;
    for (std::size_t i = 2; i < e.size(); ++i) binary = binary && e[i] == 0;
    if (!binary) throw Error(ErrorKind::InvalidArgument, "expected a homogeneous quartic in the first two variables");
  }
  // p(t) = q(1, t); the point (0 : 1) is a zero of multiplicity 4 - deg p.
  Uni p;
  for (unsigned k = 0; k <= 4; ++k) {
    std::vector<std::uint16_t> e(spec.nvars(), 0);
    e[0] = static_cast<std::uint16_t>(4 - k);
    e[1] = static_cast<std::uint16_t>(k);
    p.push_back(q.coeff(static_cast<std::size_t>(spec.index_of(e))));
  }
  trim(p);
  const std::size_t deg = p.size() - 1;
  if (deg < 3) throw Error(ErrorKind::RepeatedRoots, "(0 : 1) is a repeated zero of " + q.to_string());
  Uni dp;
  for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * Scalar::from_int(f, static_cast<long>(i)));
  if (gcd_degree(p, dp) > 0) throw Error(ErrorKind::RepeatedRoots, q.to_string() + " has a repeated linear factor");

  std::vector<Scalar> roots;
  Uni rest = p;
  if (rest[0].is_zero()) {
    roots.push_back(Scalar::zero(f));
    rest.erase(rest.begin());
  }
  if (f.is_finite()) {
    for (const auto& t : field_elements(f))
      if (!t.is_zero() && uni_eval(rest, t).is_zero()) roots.push_back(t);
  } else {
    for (const auto& t : rational_roots(rest)) roots.push_back(t);
  }
  std::sort(roots.begin(), roots.end());
  if (roots.size() != deg)
    throw Error(ErrorKind::RootsNotInField, q.to_string() + " does not split into linear factors over " + f.name());
  std::vector<ProjectivePoint> out;
  if (deg == 3) out.push_back({Scalar::zero(f), Scalar::one(f)});
  for (const auto& t : roots) out.push_back({Scalar::one(f), t});
  return out;
}

Scalar cross_ratio(const ProjectivePoint& p1, const ProjectivePoint& p2, const ProjectivePoint& p3,
                   const ProjectivePoint& p4) {
  auto br = [](const ProjectivePoint& u, const ProjectivePoint& v) { return u.a * v.b - v.a * u.b; };
  return br(p1, p3) * br(p2, p4) / (br(p1, p4) * br(p2, p3));
}

Scalar j_of_lambda(const Scalar& l) {
  const FieldSpec& f = l.field();
  const Scalar one = Scalar::one(f);
  const Scalar num = l * l - l + one;
  const Scalar den = l * l * (l - one) * (l - one);
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "cross-ratio 0 or 1 has no j-invariant");
  return Scalar::from_int(f, 256) * num * num * num / den;
}

Scalar quartic_j_invariant(const TruncPoly& q) {
  const auto r = quartic_roots(q);
  return j_of_lambda(cross_ratio(r[0], r[1], r[2], r[3]));
}

}  // namespace isojet
