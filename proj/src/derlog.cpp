#include "isojet/derlog.hpp"

#include "isojet/error.hpp"

namespace isojet {

TruncPoly Derivation::apply(const TruncPoly& u) const {
  TruncPoly out(u.spec());
  for (std::size_t j = 0; j < g.size(); ++j)
    if (!g[j].is_zero()) out += g[j] * u.derivative(j);
  return out;
}

bool Derivation::is_regular() const {
  for (const auto& gj : g)
    if (!gj.constant_term().is_zero()) return true;
  return false;
}

std::vector<TruncPoly> attachment_residual(const PolySystem& f, const Derivation& d, unsigned bound) {
  if (d.g.size() != f.spec().nvars()) throw Error(ErrorKind::DimensionMismatch, "derivation has the wrong arity");
  std::vector<TruncPoly> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    TruncPoly r = d.apply(f[i]);
    if (!d.h.empty())
      for (std::size_t l = 0; l < f.size(); ++l) r -= d.h[i][l] * f[l];
    out.push_back(bound == 0 ? TruncPoly(f.spec()) : r.jet(bound - 1));
  }
  return out;
}

bool is_attached(const PolySystem& f, const Derivation& d, unsigned bound) {
  for (const auto& r : attachment_residual(f, d, bound))
    if (!r.is_zero()) return false;
  return true;
}

namespace {

// Columns: g_j at monomials of degree 1..bw-1, then H_il at degree 0..bw-1,
// then (optionally) v_j.
struct Layout {
  std::size_t nvars, n, lin, low;
  std::size_t g_count() const { return nvars * (low - lin); }
  std::size_t h_count() const { return n * n * low; }
  std::size_t g_col(std::size_t j, std::size_t mono) const { return j * (low - lin) + (mono - lin); }
  std::size_t h_col(std::size_t i, std::size_t l, std::size_t mono) const {
    return g_count() + (i * n + l) * low + mono;
  }
};

void check_work(const PolySystem& f, unsigned beta_work) {
  if (beta_work > f.spec().beta())
    throw Error(ErrorKind::PreconditionFailed, "beta_work = " + std::to_string(beta_work) + " exceeds beta = " +
                                                   std::to_string(f.spec().beta()));
}

// Coefficient block [A_g A_H | A_v] of the homogeneous system in (g, H, v).
Matrix joint_matrix(const PolySystem& f, unsigned beta_work, const Layout& lay, bool with_v) {
  const RingSpec& spec = f.spec();
  const std::size_t n = f.size(), rows = n * lay.low;
  const std::size_t cols = lay.g_count() + lay.h_count() + (with_v ? spec.nvars() : 0);
  Matrix a(spec.field(), rows, cols);
  if (beta_work == 0) return a;
  const RingSpec low = spec.with_beta(beta_work - 1);
  std::vector<std::vector<TruncPoly>> df(n);
  std::vector<TruncPoly> fl;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < spec.nvars(); ++j) df[i].push_back(f[i].derivative(j).change_beta(low));
    fl.push_back(f[i].change_beta(low));
  }
  for (std::size_t mono = 0; mono < lay.low; ++mono) {
    const TruncPoly xm = TruncPoly::monomial(low, mono, Scalar::one(spec.field()));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < spec.nvars(); ++j) {
        if (mono == 0) {
          if (with_v)
            for (const auto& t : df[i][j].terms()) a(i * lay.low + t.mono, lay.g_count() + lay.h_count() + j) = t.coef;
          continue;
        }
        const TruncPoly prod = xm * df[i][j];
        for (const auto& t : prod.terms()) a(i * lay.low + t.mono, lay.g_col(j, mono)) += t.coef;
      }
      for (std::size_t l = 0; l < n; ++l) {
        const TruncPoly prod = xm * fl[l];
        for (const auto& t : prod.terms()) a(i * lay.low + t.mono, lay.h_col(i, l, mono)) -= t.coef;
      }
    }
  }
  return a;
}

Layout layout(const PolySystem& f, unsigned beta_work) {
  const RingSpec& spec = f.spec();
  const std::size_t low = beta_work == 0 ? 0 : spec.with_beta(beta_work - 1).dim();
  return {spec.nvars(), f.size(), std::min<std::size_t>(1, low), low};
}

}  // namespace

LogDerSystem log_derivation_system(const PolySystem& f, const Vector& v, unsigned beta_work) {
  check_work(f, beta_work);
  const RingSpec& spec = f.spec();
  if (v.size() != spec.nvars()) throw Error(ErrorKind::DimensionMismatch, "direction has the wrong length");
  const Layout lay = layout(f, beta_work);
  const Matrix joint = joint_matrix(f, beta_work, lay, true);
  const std::size_t unknowns = lay.g_count() + lay.h_count();
  LogDerSystem sys{Matrix(spec.field(), joint.rows(), unknowns), zero_vector(spec.field(), joint.rows()), {}};
  for (std::size_t r = 0; r < joint.rows(); ++r) {
    for (std::size_t c = 0; c < unknowns; ++c) sys.a(r, c) = joint(r, c);
    for (std::size_t j = 0; j < spec.nvars(); ++j) sys.b[r] -= joint(r, unknowns + j) * v[j];
    sys.rows.emplace_back(r / std::max<std::size_t>(lay.low, 1), r % std::max<std::size_t>(lay.low, 1));
  }
  return sys;
}

LogDerResult solve_log_derivation(const PolySystem& f, const Vector& v, unsigned beta_work) {
  const LogDerSystem sys = log_derivation_system(f, v, beta_work);
  auto res = solve_linear(sys.a, sys.b);
  if (auto inf = std::get_if<Infeasible>(&res)) return *inf;
  const auto& x = std::get<Solution>(res).x;
  const RingSpec& spec = f.spec();
  const Layout lay = layout(f, beta_work);
  Derivation d{spec, {}, PolyMatrix(f.size(), std::vector<TruncPoly>(f.size(), TruncPoly(spec)))};
  for (std::size_t j = 0; j < spec.nvars(); ++j) {
    Vector coeffs = zero_vector(spec.field(), spec.dim());
    coeffs[0] = v[j];
    for (std::size_t m = lay.lin; m < lay.low; ++m) coeffs[m] = x[lay.g_col(j, m)];
    d.g.push_back(TruncPoly::from_dense(spec, coeffs));
  }
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t l = 0; l < f.size(); ++l) {
      Vector coeffs = zero_vector(spec.field(), spec.dim());
      for (std::size_t m = 0; m < lay.low; ++m) coeffs[m] = x[lay.h_col(i, l, m)];
      d.h[i][l] = TruncPoly::from_dense(spec, coeffs);
    }
  return d;
}

Subspace solvable_directions(const PolySystem& f, unsigned beta_work) {
  check_work(f, beta_work);
  const RingSpec& spec = f.spec();
  const Layout lay = layout(f, beta_work);
  const Subspace ker = kernel(joint_matrix(f, beta_work, lay, true));
  const std::size_t offset = lay.g_count() + lay.h_count();
  std::vector<Vector> proj;
  for (const auto& k : ker.basis()) proj.emplace_back(k.begin() + static_cast<long>(offset), k.end());
  return Subspace::span(spec.field(), spec.nvars(), proj);
}

InseparabilityCertificate inseparability_certificate(const PolySystem& f, const Vector& a, const ContactElement& g,
                                                     unsigned beta_work) {
  if (is_zero_vector(a)) throw Error(ErrorKind::InvalidArgument, "the point must differ from the origin");
  const Vector origin = zero_vector(f.spec().field(), f.spec().nvars());
  const WitnessCheck wc = check_equivalence_witness(f, origin, a, g);
  if (!wc.ok) throw Error(ErrorKind::WitnessInvalid, wc.reason);
  std::size_t first = 0;
  while (a[first].is_zero()) ++first;
  const Scalar lead = a[first].inverse();
  Vector v = a;
  for (auto& s : v) s = s * lead;
  auto res = solve_log_derivation(f, v, beta_work);
  if (std::holds_alternative<Derivation>(res))
    throw Error(ErrorKind::DerivationFeasible,
                "a logarithmic derivation with d(0) = a exists at beta_work = " + std::to_string(beta_work));
  return {f, a, g, v, beta_work, std::get<Infeasible>(res).certificate};
}

bool check_certificate(const InseparabilityCertificate& c) {
  const Vector origin = zero_vector(c.f.spec().field(), c.f.spec().nvars());
  if (!verify_equivalence_witness(c.f, origin, c.a, c.witness)) return false;
  const LogDerSystem sys = log_derivation_system(c.f, c.direction, c.beta_work);
  if (c.certificate.size() != sys.a.rows()) return false;
  return is_zero_vector(sys.a.transpose().apply(c.certificate)) && !dot(c.certificate, sys.b).is_zero();
}

namespace {

// exp(t d)(x_k) at t = x_j, started on the hyperplane x_j = 0.
std::vector<TruncPoly> flow_map(const Derivation& d, std::size_t j) {
  const RingSpec& spec = d.spec;
  const FieldSpec& field = spec.field();
  std::vector<TruncPoly> out;
  const TruncPoly xj = TruncPoly::variable(spec, j);
  for (std::size_t k = 0; k < spec.nvars(); ++k) {
    TruncPoly acc(spec), power = TruncPoly::variable(spec, k), xjm = TruncPoly::constant(spec, Scalar::one(field));
    Scalar fact = Scalar::one(field);
    for (unsigned m = 0; m <= spec.beta(); ++m) {
      if (m > 0) {
        power = d.apply(power);
        xjm *= xj;
        fact = fact * Scalar::from_int(field, m);
      }
      acc += (xjm * power.restrict_zero(j)).scale(fact.inverse());
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace

bool check_split(const PolySystem& f, const Derivation& d, const SplitResult& s) {
  const RingSpec& spec = f.spec();
  if (spec.beta() == 0) return true;
  const RingSpec low = spec.with_beta(spec.beta() - 1);
  std::vector<TruncPoly> pulled;
  for (const auto& e : f.entries()) pulled.push_back(compose(e, s.psi));
  if (ideal_span(PolySystem(low, [&] {
        std::vector<TruncPoly> v;
        for (const auto& e : s.residual.entries()) v.push_back(e.change_beta(low));
        return v;
      }())) != ideal_span(PolySystem(low, [&] {
        std::vector<TruncPoly> v;
        for (const auto& e : pulled) v.push_back(e.change_beta(low));
        return v;
      }())))
    return false;
  for (const auto& e : s.residual.entries())
    if (e.jet(spec.beta() - 1) != e.jet(spec.beta() - 1).restrict_zero(s.j)) return false;
  // d/dx_j psi_k = g_k o psi below degree beta - 1.
  for (std::size_t k = 0; k < spec.nvars(); ++k) {
    const TruncPoly diff = s.psi[k].derivative(s.j) - compose(d.g[k], s.psi);
    if (spec.beta() >= 2 && !diff.jet(spec.beta() - 2).is_zero()) return false;
  }
  return true;
}

SplitResult straighten_and_split(const PolySystem& f, const Derivation& d) {
  const RingSpec& spec = f.spec();
  const FieldSpec& field = spec.field();
  if (field.characteristic() != 0)
    throw Error(ErrorKind::CharPNotSupported, "splitting along ordinary derivations needs characteristic 0");
  if (d.spec != spec) throw Error(ErrorKind::SpecMismatch, "derivation and system live in different rings");
  std::size_t j = spec.nvars();
  for (std::size_t k = 0; k < d.g.size(); ++k)
    if (!d.g[k].constant_term().is_zero()) {
      j = k;
      break;
    }
  if (j == spec.nvars()) throw Error(ErrorKind::NotRegular, "every coefficient of the derivation vanishes at 0");
  if (!is_attached(f, d, spec.beta()))
    throw Error(ErrorKind::PreconditionFailed, "d(f) is not in (f) in degrees below beta");

  const std::size_t n = f.size();
  SplitResult s{flow_map(d, j), j, f, poly_identity(spec, n)};
  std::vector<TruncPoly> big_f;
  for (const auto& e : f.entries()) big_f.push_back(compose(e, s.psi));

  if (n > 0) {
    // dU/dx_j = -U H' with U = 1 on x_j = 0, where H' = H o psi.
    PolyMatrix hp = d.h.empty() ? PolyMatrix(n, std::vector<TruncPoly>(n, TruncPoly(spec))) : poly_compose(d.h, s.psi);
    auto slice = [&](const PolyMatrix& m, unsigned e) {
      PolyMatrix out = m;
      for (auto& row : out)
        for (auto& x : row) x = x.var_coefficient(j, e);
      return out;
    };
    std::vector<PolyMatrix> u{poly_identity(spec, n)};
    std::vector<PolyMatrix> hb;
    for (unsigned b = 0; b <= spec.beta(); ++b) hb.push_back(slice(hp, b));
    for (unsigned m = 0; m < spec.beta(); ++m) {
      PolyMatrix acc(n, std::vector<TruncPoly>(n, TruncPoly(spec)));
      for (unsigned a = 0; a <= m; ++a) acc = poly_add(acc, poly_mul(u[a], hb[m - a]));
      const Scalar c = -Scalar::from_int(field, m + 1).inverse();
      for (auto& row : acc)
        for (auto& x : row) x = x.scale(c);
      u.push_back(acc);
    }
    PolyMatrix total(n, std::vector<TruncPoly>(n, TruncPoly(spec)));
    TruncPoly xjm = TruncPoly::constant(spec, Scalar::one(field));
    for (unsigned m = 0; m <= spec.beta(); ++m) {
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) total[r][c] += xjm * u[m][r][c];
      xjm *= TruncPoly::variable(spec, j);
    }
    s.multipliers = total;
    s.residual = PolySystem(spec, poly_apply(total, big_f));
  } else {
    s.residual = PolySystem(spec, {});
  }
  if (!check_split(f, d, s)) throw Error(ErrorKind::StraightenFailed, "the straightened system still depends on x_j");
  return s;
}

}  // namespace isojet
