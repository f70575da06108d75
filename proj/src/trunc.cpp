#include "isojet/trunc.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <unordered_map>

namespace isojet {

struct RingData {
  std::size_t n = 0;
  unsigned beta = 0;
  FieldSpec field;
  std::vector<std::string> names;
  std::vector<std::uint16_t> exps;  // dim * n
  std::vector<unsigned> degs;
  std::vector<std::size_t> deg_start;
  std::unordered_map<std::uint64_t, std::uint32_t> key_to_index;
  std::vector<std::int32_t> mul_table;  // dim * dim, empty when too large

  std::uint64_t key(std::span<const std::uint16_t> e) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k = (k << 8) | e[i];
    return k;
  }
  std::size_t dim() const { return degs.size(); }
};

namespace {

constexpr std::size_t kMaxVars = 8;
constexpr unsigned kMaxBeta = 255;
constexpr std::size_t kMulTableLimit = 1024;

void gen_degree(std::size_t n, unsigned d, std::size_t pos, std::vector<std::uint16_t>& cur,
                std::vector<std::uint16_t>& out) {
  if (pos + 1 == n) {
    cur[pos] = static_cast<std::uint16_t>(d);
    out.insert(out.end(), cur.begin(), cur.end());
    return;
  }
  for (unsigned e = d + 1; e-- > 0;) {
    cur[pos] = static_cast<std::uint16_t>(e);
    gen_degree(n, d - e, pos + 1, cur, out);
  }
}

std::vector<std::string> default_names(std::size_t n) {
  static const char* short_names[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(n <= 4 ? short_names[i] : "x" + std::to_string(i + 1));
  return out;
}

std::shared_ptr<const RingData> make_ring(std::size_t n, unsigned beta, FieldSpec field, std::vector<std::string> names) {
  if (n == 0 || n > kMaxVars) throw Error(ErrorKind::InvalidArgument, "number of variables must be in 1..8");
  if (beta > kMaxBeta) throw Error(ErrorKind::InvalidArgument, "truncation order must be <= 255");
  if (names.empty()) names = default_names(n);
  if (names.size() != n) throw Error(ErrorKind::InvalidArgument, "variable name count differs from N");

  static std::mutex mu;
  static std::map<std::tuple<std::size_t, unsigned, const FieldData*, std::vector<std::string>>,
                  std::shared_ptr<const RingData>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, beta, field.data(), names);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto d = std::make_shared<RingData>();
  d->n = n;
  d->beta = beta;
  d->field = field;
  d->names = names;
  std::vector<std::uint16_t> cur(n, 0);
  for (unsigned deg = 0; deg <= beta; ++deg) {
    d->deg_start.push_back(d->exps.size() / n);
    gen_degree(n, deg, 0, cur, d->exps);
  }
  const std::size_t dim = d->exps.size() / n;
  d->deg_start.push_back(dim);
  d->degs.resize(dim);
  for (unsigned deg = 0; deg <= beta; ++deg)
    for (std::size_t i = d->deg_start[deg]; i < d->deg_start[deg + 1]; ++i) d->degs[i] = deg;
  for (std::size_t i = 0; i < dim; ++i)
    d->key_to_index.emplace(d->key({d->exps.data() + i * n, n}), static_cast<std::uint32_t>(i));
  if (dim <= kMulTableLimit) {
    d->mul_table.assign(dim * dim, -1);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) {
        if (d->degs[a] + d->degs[b] > beta) continue;
        const std::uint64_t k = d->key({d->exps.data() + a * n, n}) + d->key({d->exps.data() + b * n, n});
        d->mul_table[a * dim + b] = static_cast<std::int32_t>(d->key_to_index.at(k));
      }
  }
  cache.emplace(std::move(key), d);
  return d;
}

}  // namespace

// ------------------------------------------------------------------ RingSpec

RingSpec::RingSpec(std::size_t nvars, unsigned beta, FieldSpec field, std::vector<std::string> names)
    : d_(make_ring(nvars, beta, field, std::move(names))) {}

std::size_t RingSpec::nvars() const { return d_->n; }
unsigned RingSpec::beta() const { return d_->beta; }
const FieldSpec& RingSpec::field() const { return d_->field; }
const std::vector<std::string>& RingSpec::var_names() const { return d_->names; }
std::size_t RingSpec::dim() const { return d_->dim(); }

std::span<const std::uint16_t> RingSpec::exponents(std::size_t mono) const {
  return {d_->exps.data() + mono * d_->n, d_->n};
}

unsigned RingSpec::degree(std::size_t mono) const { return d_->degs[mono]; }

std::size_t RingSpec::degree_start(unsigned d) const {
  if (d > d_->beta) return dim();
  return d_->deg_start[d];
}

long RingSpec::index_of(std::span<const std::uint16_t> exps) const {
  if (exps.size() != d_->n) return -1;
  unsigned total = 0;
  for (auto e : exps) total += e;
  if (total > d_->beta) return -1;
  auto it = d_->key_to_index.find(d_->key(exps));
  return it == d_->key_to_index.end() ? -1 : static_cast<long>(it->second);
}

long RingSpec::mul_index(std::size_t a, std::size_t b) const {
  if (!d_->mul_table.empty()) return d_->mul_table[a * dim() + b];
  if (d_->degs[a] + d_->degs[b] > d_->beta) return -1;
  const std::uint64_t k = d_->key(exponents(a)) + d_->key(exponents(b));
  return d_->key_to_index.at(k);
}

std::size_t RingSpec::var_power(std::size_t var, unsigned e) const {
  std::vector<std::uint16_t> ex(d_->n, 0);
  ex[var] = static_cast<std::uint16_t>(e);
  long idx = index_of(ex);
  if (idx < 0) throw Error(ErrorKind::InvalidArgument, "variable power exceeds beta");
  return static_cast<std::size_t>(idx);
}

std::string RingSpec::monomial_string(std::size_t mono) const {
  std::string out;
  auto e = exponents(mono);
  for (std::size_t i = 0; i < d_->n; ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += d_->names[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

RingSpec RingSpec::with_beta(unsigned beta) const { return RingSpec(d_->n, beta, d_->field, d_->names); }

bool operator==(const RingSpec& a, const RingSpec& b) {
  return a.d_ == b.d_ || (a.d_->n == b.d_->n && a.d_->beta == b.d_->beta && a.d_->field == b.d_->field);
}

// ------------------------------------------------------------------ TruncPoly

namespace {

void check_spec(const RingSpec& a, const RingSpec& b) {
  if (a != b) throw Error(ErrorKind::SpecMismatch, "operands live in different truncated rings");
}

// Sort by monomial, combine equal monomials, drop zeros.
std::vector<Term> normalize(std::vector<Term> raw) {
  std::stable_sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::vector<Term> out;
  out.reserve(raw.size());
  for (auto& t : raw) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coef += t.coef;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coef.is_zero(); });
  return out;
}

}  // namespace

TruncPoly::TruncPoly(RingSpec spec) : spec_(std::move(spec)) {}

TruncPoly TruncPoly::constant(const RingSpec& spec, const Scalar& c) { return monomial(spec, 0, c); }

TruncPoly TruncPoly::variable(const RingSpec& spec, std::size_t var) {
  if (var >= spec.nvars()) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  TruncPoly p(spec);
  if (spec.beta() == 0) {
    p.truncated_ = true;
    return p;
  }
  p.terms_.push_back({static_cast<std::uint32_t>(spec.var_power(var, 1)), Scalar::one(spec.field())});
  return p;
}

TruncPoly TruncPoly::monomial(const RingSpec& spec, std::size_t mono, const Scalar& c) {
  if (c.field() != spec.field()) throw Error(ErrorKind::FieldMismatch, "coefficient field differs from ring field");
  TruncPoly p(spec);
  if (!c.is_zero()) p.terms_.push_back({static_cast<std::uint32_t>(mono), c});
  return p;
}

TruncPoly TruncPoly::from_dense(const RingSpec& spec, const Vector& coeffs) {
  if (coeffs.size() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "coefficient vector length differs from ring dimension");
  TruncPoly p(spec);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) p.terms_.push_back({static_cast<std::uint32_t>(i), coeffs[i]});
  return p;
}

Scalar TruncPoly::coeff(std::size_t mono) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mono,
                             [](const Term& t, std::size_t m) { return t.mono < m; });
  if (it != terms_.end() && it->mono == mono) return it->coef;
  return Scalar::zero(spec_.field());
}

unsigned TruncPoly::order() const {
  if (terms_.empty()) return spec_.beta() + 1;
  return spec_.degree(terms_.front().mono);
}

unsigned TruncPoly::degree() const {
  if (terms_.empty()) return 0;
  return spec_.degree(terms_.back().mono);
}

Vector TruncPoly::dense() const {
  Vector v = zero_vector(spec_.field(), spec_.dim());
  for (const auto& t : terms_) v[t.mono] = t.coef;
  return v;
}

TruncPoly TruncPoly::operator+(const TruncPoly& b) const {
  check_spec(spec_, b.spec_);
  TruncPoly out(spec_);
  out.truncated_ = truncated_ || b.truncated_;
  auto i = terms_.begin();
  auto j = b.terms_.begin();
  while (i != terms_.end() || j != b.terms_.end()) {
    if (j == b.terms_.end() || (i != terms_.end() && i->mono < j->mono)) {
      out.terms_.push_back(*i++);
    } else if (i == terms_.end() || j->mono < i->mono) {
      out.terms_.push_back(*j++);
    } else {
      Scalar s = i->coef + j->coef;
      if (!s.is_zero()) out.terms_.push_back({i->mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

TruncPoly TruncPoly::operator-() const {
  TruncPoly out = *this;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

TruncPoly TruncPoly::operator-(const TruncPoly& b) const { return *this + (-b); }

TruncPoly TruncPoly::scale(const Scalar& c) const {
  if (c.field() != spec_.field()) throw Error(ErrorKind::FieldMismatch, "scalar field differs from ring field");
  TruncPoly out(spec_);
  out.truncated_ = truncated_;
  if (c.is_zero()) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coef *= c;
  return out;
}

TruncPoly TruncPoly::operator*(const TruncPoly& b) const {
  check_spec(spec_, b.spec_);
  TruncPoly out(spec_);
  out.truncated_ = truncated_ || b.truncated_;
  if (terms_.empty() || b.terms_.empty()) return out;
  std::vector<Term> raw;
  raw.reserve(terms_.size() * b.terms_.size());
  for (const auto& s : terms_)
    for (const auto& t : b.terms_) {
      const long idx = spec_.mul_index(s.mono, t.mono);
      if (idx < 0) {
        out.truncated_ = true;
        continue;
      }
      raw.push_back({static_cast<std::uint32_t>(idx), s.coef * t.coef});
    }
  out.terms_ = normalize(std::move(raw));
  return out;
}

TruncPoly TruncPoly::derivative(std::size_t var) const {
  if (var >= spec_.nvars()) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  TruncPoly out(spec_);
  out.truncated_ = truncated_;
  std::vector<std::uint16_t> e(spec_.nvars());
  std::vector<Term> raw;
  for (const auto& t : terms_) {
    auto ex = spec_.exponents(t.mono);
    if (ex[var] == 0) continue;
    std::copy(ex.begin(), ex.end(), e.begin());
    const long k = e[var];
    e[var] -= 1;
    Scalar c = t.coef * Scalar::from_int(spec_.field(), k);
    if (c.is_zero()) continue;
    raw.push_back({static_cast<std::uint32_t>(spec_.index_of(e)), std::move(c)});
  }
  out.terms_ = normalize(std::move(raw));
  return out;
}

TruncPoly TruncPoly::hasse_derivative(std::span<const std::uint16_t> alpha) const {
  if (alpha.size() != spec_.nvars()) throw Error(ErrorKind::DimensionMismatch, "multi-index length differs from N");
  TruncPoly out(spec_);
  out.truncated_ = truncated_;
  std::vector<std::uint16_t> e(spec_.nvars());
  std::vector<Term> raw;
  for (const auto& t : terms_) {
    auto ex = spec_.exponents(t.mono);
    bool ok = true;
    mpz_class binom = 1;
    for (std::size_t i = 0; i < e.size() && ok; ++i) {
      if (ex[i] < alpha[i]) {
        ok = false;
        break;
      }
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), ex[i], alpha[i]);
      binom *= b;
      e[i] = static_cast<std::uint16_t>(ex[i] - alpha[i]);
    }
    if (!ok) continue;
    Scalar c = t.coef * Scalar::from_mpz(spec_.field(), binom);
    if (c.is_zero()) continue;
    raw.push_back({static_cast<std::uint32_t>(spec_.index_of(e)), std::move(c)});
  }
  out.terms_ = normalize(std::move(raw));
  return out;
}

TruncPoly TruncPoly::homogeneous_part(unsigned d) const {
  TruncPoly out(spec_);
  for (const auto& t : terms_)
    if (spec_.degree(t.mono) == d) out.terms_.push_back(t);
  return out;
}

TruncPoly TruncPoly::jet(unsigned d) const {
  TruncPoly out(spec_);
  for (const auto& t : terms_) {
    if (spec_.degree(t.mono) <= d) {
      out.terms_.push_back(t);
    } else {
      out.truncated_ = true;
    }
  }
  out.truncated_ = out.truncated_ || truncated_;
  return out;
}

TruncPoly TruncPoly::change_beta(const RingSpec& target) const {
  if (target.nvars() != spec_.nvars() || target.field() != spec_.field())
    throw Error(ErrorKind::SpecMismatch, "change_beta needs the same variables and field");
  TruncPoly out(target);
  out.truncated_ = truncated_;
  for (const auto& t : terms_) {
    long idx = target.index_of(spec_.exponents(t.mono));
    if (idx < 0) {
      out.truncated_ = true;
      continue;
    }
    out.terms_.push_back({static_cast<std::uint32_t>(idx), t.coef});
  }
  // Both rings order monomials identically, so the terms stay sorted.
  return out;
}

TruncPoly TruncPoly::restrict_zero(std::size_t var) const {
  TruncPoly out(spec_);
  out.truncated_ = truncated_;
  for (const auto& t : terms_)
    if (spec_.exponents(t.mono)[var] == 0) out.terms_.push_back(t);
  return out;
}

TruncPoly TruncPoly::var_coefficient(std::size_t var, unsigned e) const {
  TruncPoly out(spec_);
  out.truncated_ = truncated_;
  std::vector<std::uint16_t> ex(spec_.nvars());
  std::vector<Term> raw;
  for (const auto& t : terms_) {
    auto s = spec_.exponents(t.mono);
    if (s[var] != e) continue;
    std::copy(s.begin(), s.end(), ex.begin());
    ex[var] = 0;
    raw.push_back({static_cast<std::uint32_t>(spec_.index_of(ex)), t.coef});
  }
  out.terms_ = normalize(std::move(raw));
  return out;
}

Scalar TruncPoly::evaluate(const Vector& point) const {
  if (point.size() != spec_.nvars()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from N");
  Scalar s = Scalar::zero(spec_.field());
  for (const auto& t : terms_) {
    Scalar v = t.coef;
    auto e = spec_.exponents(t.mono);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) v *= point[i].pow(e[i]);
    s += v;
  }
  return s;
}

TruncPoly TruncPoly::inverse() const {
  const Scalar c = constant_term();
  if (c.is_zero()) throw Error(ErrorKind::NotAUnit, to_string() + " has zero constant term");
  const Scalar cinv = c.inverse();
  // f = c (1 + u) with u in the maximal ideal, so 1/f = c^-1 sum_k (-u)^k.
  TruncPoly neg_u = -(scale(cinv) - constant(spec_, Scalar::one(spec_.field())));
  neg_u.truncated_ = false;
  TruncPoly acc = constant(spec_, Scalar::one(spec_.field()));
  TruncPoly power = acc;
  for (unsigned k = 1; k <= spec_.beta(); ++k) {
    power = power * neg_u;
    if (power.is_zero()) break;
    acc += power;
  }
  acc = acc.scale(cinv);
  acc.truncated_ = false;
  return acc;
}

std::string TruncPoly::to_string() const {
  if (terms_.empty()) return "0";
  const bool rational = !spec_.field().is_finite();
  std::string out;
  for (const auto& t : terms_) {
    Scalar c = t.coef;
    bool negative = false;
    if (rational && c.rational() < 0) {
      negative = true;
      c = -c;
    }
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (t.mono == 0) {
      out += c.to_string();
      continue;
    }
    if (!c.is_one()) {
      out += c.is_compound() ? "(" + c.to_string() + ")" : c.to_string();
      out += "*";
    }
    out += spec_.monomial_string(t.mono);
  }
  return out;
}

bool operator==(const TruncPoly& a, const TruncPoly& b) {
  if (a.spec_ != b.spec_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
  return true;
}

// ------------------------------------------------------------------- compose

TruncPoly compose(const TruncPoly& f, std::span<const TruncPoly> phi, bool allow_constant_term) {
  const RingSpec& spec = f.spec();
  if (phi.size() != spec.nvars()) throw Error(ErrorKind::DimensionMismatch, "compose needs one image per variable");
  bool has_constant = false;
  bool truncated = f.truncated();
  for (const auto& p : phi) {
    check_spec(spec, p.spec());
    if (!p.constant_term().is_zero()) has_constant = true;
    truncated = truncated || p.truncated();
  }
  if (has_constant && !allow_constant_term)
    throw Error(ErrorKind::ConstantTermNotAllowed, "substitution has a nonzero constant term");
  if (has_constant && f.truncated())
    throw Error(ErrorKind::TruncationUnsafe, "cannot recenter a truncated series");

  // value[m] = phi^exponents(m), built from a lower-degree monomial times one phi_v.
  std::vector<std::optional<TruncPoly>> value(spec.dim());
  value[0] = TruncPoly::constant(spec, Scalar::one(spec.field()));
  std::vector<std::uint16_t> e(spec.nvars());
  auto eval = [&](auto&& self, std::size_t m) -> const TruncPoly& {
    if (value[m]) return *value[m];
    auto ex = spec.exponents(m);
    std::copy(ex.begin(), ex.end(), e.begin());
    std::size_t v = 0;
    while (e[v] == 0) ++v;
    e[v] -= 1;
    const std::size_t lower = static_cast<std::size_t>(spec.index_of(e));
    const TruncPoly& base = self(self, lower);
    value[m] = base * phi[v];
    return *value[m];
  };
  TruncPoly out(spec);
  for (const auto& t : f.terms()) out += eval(eval, t.mono).scale(t.coef);
  out.mark_truncated(truncated || out.truncated());
  return out;
}

// ---------------------------------------------------------------- PolySystem

PolySystem::PolySystem(RingSpec spec, std::vector<TruncPoly> entries) : spec_(std::move(spec)), entries_(std::move(entries)) {
  for (const auto& e : entries_) check_spec(spec_, e.spec());
}

bool PolySystem::truncated() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const TruncPoly& p) { return p.truncated(); });
}

PolySystem PolySystem::change_beta(const RingSpec& target) const {
  std::vector<TruncPoly> out;
  for (const auto& e : entries_) out.push_back(e.change_beta(target));
  return PolySystem(target, std::move(out));
}

bool PolySystem::vanishes_at(const Vector& point) const {
  for (const auto& e : entries_)
    if (!e.evaluate(point).is_zero()) return false;
  return true;
}

PolySystem taylor_shift(const PolySystem& f, const Vector& point) {
  const RingSpec& spec = f.spec();
  if (point.size() != spec.nvars()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from N");
  for (const auto& e : f.entries())
    if (e.truncated())
      throw Error(ErrorKind::TruncationUnsafe, "Taylor shift needs exact polynomials of degree <= beta");
  std::vector<TruncPoly> phi;
  for (std::size_t i = 0; i < spec.nvars(); ++i)
    phi.push_back(TruncPoly::variable(spec, i) + TruncPoly::constant(spec, point[i]));
  std::vector<TruncPoly> out;
  for (const auto& e : f.entries()) {
    TruncPoly s = compose(e, phi, true);
    s.mark_truncated(false);
    out.push_back(std::move(s));
  }
  return PolySystem(spec, std::move(out));
}

Subspace ideal_span(const PolySystem& f, SpanWeights weights) {
  const RingSpec& spec = f.spec();
  const std::size_t dim = spec.dim();
  std::vector<Vector> gens;
  const std::size_t first = weights == SpanWeights::maximal_ideal ? 1 : 0;
  for (const auto& fi : f.entries()) {
    if (fi.is_zero()) continue;
    for (std::size_t a = first; a < dim; ++a) {
      if (spec.degree(a) + fi.order() > spec.beta()) break;
      Vector v = zero_vector(spec.field(), dim);
      for (const auto& t : fi.terms()) {
        long idx = spec.mul_index(a, t.mono);
        if (idx >= 0) v[static_cast<std::size_t>(idx)] = t.coef;
      }
      gens.push_back(std::move(v));
    }
  }
  return Subspace::span(spec.field(), dim, gens);
}

Vector to_coords(const TruncPoly& p) { return p.dense(); }

TruncPoly from_coords(const RingSpec& spec, const Vector& v) { return TruncPoly::from_dense(spec, v); }

}  // namespace isojet
