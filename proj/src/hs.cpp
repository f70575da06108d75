#include "isojet/hs.hpp"

#include "isojet/error.hpp"
#include "isojet/linalg.hpp"

namespace isojet {

namespace {

using Series = std::vector<TruncPoly>;  // t-coefficients 0..r

Series series_mul(const Series& a, const Series& b) {
  Series out(a.size(), TruncPoly(a[0].spec()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t k = 0; i + k < a.size(); ++k)
      if (!b[k].is_zero()) out[i + k] += a[i] * b[k];
  }
  return out;
}

void require_exact(const PolySystem& f) {
  if (f.truncated())
    throw Error(ErrorKind::TruncationUnsafe, "substituting x + O(t) needs exact polynomials of degree <= beta");
}

// All exponent vectors with total degree in [1, max].
void multi_indices(std::size_t n, unsigned max, std::vector<std::uint16_t>& cur, std::size_t pos, unsigned used,
                   std::vector<std::vector<std::uint16_t>>& out) {
  if (pos == n) {
    if (used > 0) out.push_back(cur);
    return;
  }
  for (unsigned e = 0; used + e <= max; ++e) {
    cur[pos] = static_cast<std::uint16_t>(e);
    multi_indices(n, max, cur, pos + 1, used + e, out);
  }
  cur[pos] = 0;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t c = 1;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

HSDerivation HSDerivation::zero(const RingSpec& spec, unsigned r) {
  return {spec, r, std::vector<std::vector<TruncPoly>>(r, std::vector<TruncPoly>(spec.nvars(), TruncPoly(spec)))};
}

HSDerivation HSDerivation::prefix(unsigned r_prime) const {
  if (r_prime > r) throw Error(ErrorKind::InvalidArgument, "prefix longer than the derivation");
  return {spec, r_prime, std::vector<std::vector<TruncPoly>>(images.begin(), images.begin() + r_prime)};
}

std::vector<bool> HSDerivation::regular_levels() const {
  std::vector<bool> out;
  for (const auto& level : images) {
    bool any = false;
    for (const auto& p : level) any = any || !p.constant_term().is_zero();
    out.push_back(any);
  }
  return out;
}

bool HSDerivation::is_regular() const { return r >= 1 && regular_levels()[0]; }

std::vector<TruncPoly> hs_expand(const TruncPoly& f, const HSDerivation& d) {
  const RingSpec& spec = f.spec();
  const std::size_t n = spec.nvars();
  const unsigned r = d.r;
  // powers[j][e] = D(x_j)^e
  std::vector<std::vector<Series>> powers(n);
  for (std::size_t j = 0; j < n; ++j) {
    Series x(r + 1, TruncPoly(spec));
    x[0] = TruncPoly::variable(spec, j);
    for (unsigned i = 1; i <= r; ++i) x[i] = d.images[i - 1][j];
    Series one(r + 1, TruncPoly(spec));
    one[0] = TruncPoly::constant(spec, Scalar::one(spec.field()));
    powers[j].push_back(one);
    powers[j].push_back(x);
  }
  Series out(r + 1, TruncPoly(spec));
  for (const auto& t : f.terms()) {
    const auto e = spec.exponents(t.mono);
    Series acc(r + 1, TruncPoly(spec));
    acc[0] = TruncPoly::constant(spec, t.coef);
    for (std::size_t j = 0; j < n; ++j) {
      while (powers[j].size() <= e[j]) powers[j].push_back(series_mul(powers[j].back(), powers[j][1]));
      if (e[j] > 0) acc = series_mul(acc, powers[j][e[j]]);
    }
    for (unsigned i = 0; i <= r; ++i) out[i] += acc[i];
  }
  return out;
}

HSVerifyReport hs_verify(const PolySystem& f, const HSDerivation& d, unsigned beta_work) {
  const RingSpec& spec = f.spec();
  if (beta_work > spec.beta()) throw Error(ErrorKind::PreconditionFailed, "beta_work exceeds beta");
  if (d.spec != spec) throw Error(ErrorKind::SpecMismatch, "derivation and system live in different rings");
  require_exact(f);
  const RingSpec low = spec.with_beta(beta_work);
  const Subspace ideal = ideal_span(f.change_beta(low));
  for (std::size_t l = 0; l < f.size(); ++l) {
    const auto coeffs = hs_expand(f[l], d);
    for (unsigned i = 1; i <= d.r; ++i) {
      const TruncPoly residue = coeffs[i].change_beta(low);
      const Vector nf = ideal.reduce(to_coords(residue));
      if (!is_zero_vector(nf)) return {false, HSViolation{l, i, residue, from_coords(low, nf)}};
    }
  }
  return {true, std::nullopt};
}

namespace {

class Searcher {
 public:
  Searcher(const PolySystem& f, unsigned r, unsigned beta_work, HSMode mode, const HSSearchOptions& opt)
      : f_(f),
        spec_(f.spec()),
        low_(spec_.with_beta(beta_work)),
        field_(spec_.field()),
        r_(r),
        bw_(beta_work),
        mode_(mode),
        opt_(opt),
        ideal_(ideal_span(f.change_beta(low_))) {
    find_relevant();
    build_columns();
  }

  HSSearchResult run() {
    HSSearchResult res;
    current_ = HSDerivation::zero(spec_, r_);
    for (const auto& u : unknowns_) res.unknowns.push_back(u.size());
    if (r_ == 0 ? mode_ == HSMode::any : descend(1)) res.witness = current_;
    res.nodes = nodes_;
    return res;
  }

 private:
  struct Unknown {
    std::size_t var, mono;
  };

  // A coefficient of d_i(x_j) at a monomial of degree e can reach the
  // t^(<= r), x^(<= beta_work) part of f(D(x)) only through a term
  // binom(a_j, b) c^b (Hasse derivative D^a f) with the remaining a - b
  // factors each carrying t^(>= 1).
  void find_relevant() {
    const std::size_t n = spec_.nvars();
    std::vector<std::vector<unsigned>> emax(r_ + 1, std::vector<unsigned>(n, 0));
    std::vector<std::vector<bool>> any(r_ + 1, std::vector<bool>(n, false));
    std::vector<std::vector<std::uint16_t>> alphas;
    std::vector<std::uint16_t> cur(n, 0);
    multi_indices(n, r_, cur, 0, 0, alphas);
    for (const auto& a : alphas) {
      unsigned ord = spec_.beta() + 1, size = 0;
      for (auto v : a) size += v;
      for (std::size_t l = 0; l < f_.size(); ++l) ord = std::min(ord, f_[l].hasse_derivative(a).order());
      if (ord > bw_) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (unsigned b = 1; b <= a[j]; ++b) {
          if (Scalar::from_int(field_, static_cast<long>(binomial(a[j], b))).is_zero()) continue;
          for (unsigned i = 1; i <= r_; ++i) {
            if (i * b + (size - b) > r_) continue;
            const unsigned e = (bw_ - ord) / b;
            if (!any[i][j] || e > emax[i][j]) emax[i][j] = e;
            any[i][j] = true;
          }
        }
    }
    unknowns_.assign(r_ + 1, {});
    for (unsigned i = 1; i <= r_; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        bool keep = any[i][j];
        unsigned e = emax[i][j];
        if (i == 1 && !keep) {
          keep = true;
          e = 0;
        }
        if (!keep) continue;
        for (std::size_t m = 0; m < low_.degree_start(std::min(e, bw_) + 1); ++m) unknowns_[i].push_back({j, m});
      }
  }

  // Normal form of (df_l/dx_j) x^m for every (j, m), stacked over l.
  void build_columns() {
    const std::size_t n = spec_.nvars();
    const std::size_t dim = low_.dim();
    columns_.assign(n, std::vector<Vector>(dim));
    std::vector<std::vector<TruncPoly>> df(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < f_.size(); ++l) df[j].push_back(f_[l].derivative(j).change_beta(low_));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < dim; ++m) {
        const TruncPoly xm = TruncPoly::monomial(low_, m, Scalar::one(field_));
        Vector col;
        for (std::size_t l = 0; l < f_.size(); ++l) {
          const Vector nf = ideal_.reduce(to_coords(xm * df[j][l]));
          col.insert(col.end(), nf.begin(), nf.end());
        }
        columns_[j][m] = std::move(col);
      }
  }

  // Stacked normal forms of the t^i coefficients with d_i = 0.
  Vector offset(unsigned i) {
    HSDerivation partial = current_.prefix(i);
    for (auto& p : partial.images[i - 1]) p = TruncPoly(spec_);
    Vector out;
    for (std::size_t l = 0; l < f_.size(); ++l) {
      const TruncPoly c = hs_expand(f_[l], partial)[i].change_beta(low_);
      const Vector nf = ideal_.reduce(to_coords(c));
      out.insert(out.end(), nf.begin(), nf.end());
    }
    return out;
  }

  void assign(unsigned i, const Vector& values) {
    const std::size_t n = spec_.nvars();
    std::vector<Vector> dense(n, zero_vector(field_, spec_.dim()));
    for (std::size_t u = 0; u < unknowns_[i].size(); ++u) dense[unknowns_[i][u].var][unknowns_[i][u].mono] = values[u];
    for (std::size_t j = 0; j < n; ++j) current_.images[i - 1][j] = TruncPoly::from_dense(spec_, dense[j]);
  }

  bool descend(unsigned i) {
    if (i > r_) return true;
    const auto& unk = unknowns_[i];
    const std::size_t rows = f_.size() * low_.dim();
    Matrix a(field_, rows, unk.size());
    for (std::size_t u = 0; u < unk.size(); ++u) {
      const Vector& col = columns_[unk[u].var][unk[u].mono];
      for (std::size_t k = 0; k < rows; ++k) a(k, u) = col[k];
    }
    Vector b = offset(i);
    for (auto& s : b) s = -s;
    auto sol = solve_linear(a, b);
    if (std::holds_alternative<Infeasible>(sol)) return false;
    const Vector& x0 = std::get<Solution>(sol).x;
    const auto& kern = std::get<Solution>(sol).kernel.basis();

    std::vector<std::size_t> constants;
    if (i == 1 && mode_ == HSMode::regular) {
      for (std::size_t u = 0; u < unk.size(); ++u)
        if (unk[u].mono == 0) constants.push_back(u);
      bool possible = false;
      for (auto u : constants) {
        possible = possible || !x0[u].is_zero();
        for (const auto& k : kern) possible = possible || !k[u].is_zero();
      }
      if (!possible) return false;
    }

    const auto elems = field_elements(field_);
    std::vector<std::size_t> digits(kern.size(), 0);
    for (;;) {
      if (++nodes_ > opt_.max_nodes)
        throw Error(ErrorKind::SearchLimitExceeded, "hs_search visited more than " + std::to_string(opt_.max_nodes) +
                                                        " nodes");
      Vector x = x0;
      for (std::size_t k = 0; k < kern.size(); ++k) {
        if (digits[k] == 0) continue;
        for (std::size_t u = 0; u < x.size(); ++u) x[u] += elems[digits[k]] * kern[k][u];
      }
      bool regular = constants.empty();
      for (auto u : constants) regular = regular || !x[u].is_zero();
      if (regular) {
        assign(i, x);
        if (descend(i + 1)) return true;
      }
      // Odometer, last digit fastest.
      std::size_t k = kern.size();
      while (k > 0 && ++digits[k - 1] == elems.size()) {
        digits[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
    assign(i, zero_vector(field_, unk.size()));
    return false;
  }

  const PolySystem& f_;
  RingSpec spec_, low_;
  FieldSpec field_;
  unsigned r_, bw_;
  HSMode mode_;
  HSSearchOptions opt_;
  Subspace ideal_;
  std::vector<std::vector<Unknown>> unknowns_;
  std::vector<std::vector<Vector>> columns_;
  HSDerivation current_ = HSDerivation::zero(spec_, 0);
  std::uint64_t nodes_ = 0;
};

}  // namespace

HSSearchResult hs_search(const PolySystem& f, unsigned r, unsigned beta_work, HSMode mode,
                         const HSSearchOptions& options) {
  if (!f.spec().field().is_finite()) throw Error(ErrorKind::FieldNotFinite, "hs_search enumerates a finite field");
  if (beta_work > f.spec().beta()) throw Error(ErrorKind::PreconditionFailed, "beta_work exceeds beta");
  require_exact(f);
  return Searcher(f, r, beta_work, mode, options).run();
}

}  // namespace isojet
