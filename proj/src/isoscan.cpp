#include "isojet/isoscan.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace isojet {

namespace {

void require_exact(const PolySystem& f) {
  if (f.truncated()) throw Error(ErrorKind::TruncationUnsafe, "point scans need exact polynomials");
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

std::vector<Scalar> box_values(const FieldSpec& q, const RationalBox& box) {
  if (box.lower > box.upper || box.max_denominator < 1)
    throw Error(ErrorKind::InvalidArgument, "empty rational box");
  std::vector<mpq_class> vals;
  for (long b = 1; b <= box.max_denominator; ++b)
    for (long a = box.lower * b; a <= box.upper * b; ++a)
      if (std::gcd(a, b) == 1) vals.emplace_back(a, b);
  std::sort(vals.begin(), vals.end());
  std::vector<Scalar> out;
  for (auto& v : vals) out.push_back(Scalar::from_rational(q, v));
  return out;
}

std::size_t jacobian_rank(const PolySystem& shifted) {
  const RingSpec& spec = shifted.spec();
  Matrix j(spec.field(), shifted.size(), spec.nvars());
  if (spec.beta() == 0) return 0;
  for (std::size_t i = 0; i < shifted.size(); ++i)
    for (std::size_t v = 0; v < spec.nvars(); ++v) j(i, v) = shifted[i].coeff(spec.var_power(v, 1));
  return j.rank();
}

void annotate_j(const PolySystem& shifted, PointReport& out) {
  const RingSpec& spec = shifted.spec();
  if (shifted.size() != 1 || spec.nvars() < 2 || shifted[0].is_zero()) {
    out.j_status = "not-quartic";
    return;
  }
  const TruncPoly cone = tangent_cone(shifted[0]);
  if (cone.order() != 4) {
    out.j_status = "not-quartic";
    return;
  }
  try {
    out.j_invariant = quartic_j_invariant(cone);
    out.j_status = "ok";
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::RepeatedRoots: out.j_status = "repeated-roots"; break;
      case ErrorKind::RootsNotInField: out.j_status = "roots-not-in-field"; break;
      default: out.j_status = "not-binary"; break;
    }
  }
}

PointReport classify_point(const PolySystem& f, const Vector& a) {
  const PolySystem shifted = taylor_shift(f, a);
  PointReport r{a, fingerprint(shifted), jacobian_rank(shifted), false, std::nullopt, {}};
  r.smooth = r.jacobian_rank == f.size();
  annotate_j(shifted, r);
  return r;
}

}  // namespace

std::vector<Vector> enumerate_points(const PolySystem& f, const ScanDomain& domain, std::uint64_t cap) {
  require_exact(f);
  const FieldSpec& k = f.spec().field();
  const std::size_t n = f.spec().nvars();
  std::vector<Scalar> coords;
  if (std::holds_alternative<FiniteDomain>(domain)) {
    if (!k.is_finite()) throw Error(ErrorKind::FieldNotFinite, "whole-space scans need a finite field");
    if (checked_power(k.order(), n, cap) > cap)
      throw Error(ErrorKind::DomainTooLarge, "more than " + std::to_string(cap) + " candidate points");
    coords = field_elements(k);
  } else {
    if (k.is_finite()) throw Error(ErrorKind::InvalidArgument, "rational boxes need the field Q");
    const auto& box = std::get<RationalBox>(domain);
    // At most (upper - lower) * b + 1 numerators for denominator b.
    const long double span = static_cast<long double>(box.upper) - box.lower;
    const long double den = box.max_denominator;
    if (span < 0 || span * den * (den + 1) / 2 + den > static_cast<long double>(cap))
      throw Error(ErrorKind::DomainTooLarge, "more than " + std::to_string(cap) + " candidate points");
    coords = box_values(k, box);
    if (checked_power(coords.size(), n, cap) > cap)
      throw Error(ErrorKind::DomainTooLarge, "more than " + std::to_string(cap) + " candidate points");
  }

  std::vector<Vector> out;
  if (coords.empty()) return out;
  std::vector<std::size_t> digit(n, 0);
  Vector p(n, coords[0]);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) p[i] = coords[digit[i]];
    if (f.vanishes_at(p)) out.push_back(p);
    std::size_t i = n;
    while (i > 0 && ++digit[i - 1] == coords.size()) digit[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

unsigned default_scan_beta(const PolySystem& f) {
  unsigned d = 0;
  for (const auto& e : f.entries()) d = std::max(d, e.degree());
  return std::max(1u, 2 * d);
}

ScanReport classify(const PolySystem& f, const std::vector<Vector>& points, unsigned threads) {
  require_exact(f);
  for (const auto& a : points)
    if (a.size() != f.spec().nvars() || !f.vanishes_at(a))
      throw Error(ErrorKind::PointNotOnVariety, "scan point is not a zero of f");

  std::vector<std::optional<PointReport>> slots(points.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, points.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < points.size();) {
      try {
        slots[i] = classify_point(f, points[i]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  ScanReport report{f, {}, {}};
  for (auto& s : slots) report.points.push_back(std::move(*s));
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    auto it = std::find_if(report.classes.begin(), report.classes.end(), [&](const auto& c) {
      return report.points[c.front()].fingerprint == report.points[i].fingerprint;
    });
    if (it == report.classes.end())
      report.classes.push_back({i});
    else
      it->push_back(i);
  }
  return report;
}

bool brute_force_feasible(const RingSpec& spec, std::size_t n) {
  const FieldSpec& k = spec.field();
  return k.is_finite() && k.degree() == 1 && k.order() <= 3 && spec.nvars() <= 2 && n == 1 && spec.beta() <= 2;
}

std::optional<ContactElement> brute_force_witness(const PolySystem& f, const PolySystem& g) {
  const RingSpec& spec = f.spec();
  if (g.spec() != spec || g.size() != f.size()) throw Error(ErrorKind::SpecMismatch, "jets live in different spaces");
  if (!brute_force_feasible(spec, f.size()))
    throw Error(ErrorKind::SearchSpaceTooLarge, "exhaustive search needs q <= 3 prime, N <= 2, n = 1, beta <= 2");

  const FieldSpec& k = spec.field();
  const std::vector<Scalar> elems = field_elements(k);
  const std::size_t dim = spec.dim(), nv = spec.nvars();
  const std::size_t free = nv * (dim - 1);
  const Vector target = to_coords(g[0]);
  std::vector<std::size_t> digit(free, 0);
  for (;;) {
    std::vector<TruncPoly> phi;
    for (std::size_t i = 0; i < nv; ++i) {
      Vector c = zero_vector(k, dim);
      for (std::size_t m = 1; m < dim; ++m) c[m] = elems[digit[i * (dim - 1) + m - 1]];
      phi.push_back(TruncPoly::from_dense(spec, c));
    }
    if (!linear_part(phi, spec).determinant().is_zero()) {
      // M * h = g is linear in the coefficients of M.
      const TruncPoly h = compose(f[0], phi);
      Matrix a(k, dim, dim);
      for (std::size_t m = 0; m < dim; ++m) {
        const Vector col = to_coords(TruncPoly::monomial(spec, m, Scalar::one(k)) * h);
        for (std::size_t r = 0; r < dim; ++r) a(r, m) = col[r];
      }
      const auto res = solve_linear(a, target);
      if (const auto* sol = std::get_if<Solution>(&res)) {
        std::optional<Vector> unit;
        if (!sol->x[0].is_zero()) unit = sol->x;
        for (const auto& v : sol->kernel.basis())
          if (!unit && !v[0].is_zero()) {
            unit = sol->x;
            for (std::size_t r = 0; r < dim; ++r) (*unit)[r] += v[r];
          }
        if (unit) {
          ContactElement w(spec, {{TruncPoly::from_dense(spec, *unit)}}, phi);
          if (act(w, f) == g) return w;
        }
      }
    }
    std::size_t i = free;
    while (i > 0 && ++digit[i - 1] == elems.size()) digit[--i] = 0;
    if (i == 0) break;
  }
  return std::nullopt;
}

bool brute_force_equiv(const PolySystem& f, const PolySystem& g) { return brute_force_witness(f, g).has_value(); }

std::string tier_name(EquivalenceTier tier) {
  switch (tier) {
    case EquivalenceTier::witnessed: return "WITNESSED";
    case EquivalenceTier::exhaustive: return "EXHAUSTIVE";
    case EquivalenceTier::candidate: return "CANDIDATE";
    case EquivalenceTier::not_equivalent: return "NOT_EQUIVALENT";
  }
  return "";
}

EquivalenceAssessment assess_equivalence(const PolySystem& f, const PolySystem& g,
                                         const std::optional<ContactElement>& witness) {
  if (g.spec() != f.spec() || g.size() != f.size()) throw Error(ErrorKind::SpecMismatch, "jets live in different spaces");
  const unsigned beta = f.spec().beta();
  std::string note;
  if (witness) {
    if (!witness->is_valid())
      note = "supplied element is not in the contact group; ";
    else if (act(*witness, f) != g)
      note = "supplied element does not carry f to g; ";
    else
      return {EquivalenceTier::witnessed, witness, beta, "supplied element carries f to g"};
  }
  if (fingerprint(f) != fingerprint(g))
    return {EquivalenceTier::not_equivalent, std::nullopt, beta, note + "fingerprints differ"};
  if (brute_force_feasible(f.spec(), f.size())) {
    auto w = brute_force_witness(f, g);
    if (w) return {EquivalenceTier::exhaustive, w, beta, note + "found by exhaustive search"};
    return {EquivalenceTier::not_equivalent, std::nullopt, beta, note + "exhaustive search found no element"};
  }
  return {EquivalenceTier::candidate, std::nullopt, beta, note + "fingerprints agree"};
}

}  // namespace isojet
