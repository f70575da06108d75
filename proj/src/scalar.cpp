#include "isojet/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>

namespace isojet {

struct FieldData {
  bool finite = false;
  std::uint32_t p = 0;
  std::uint32_t m = 1;
  std::uint64_t q = 0;
  std::vector<std::uint32_t> modulus;  // monic, lowest degree first; empty for m == 1
  std::string name;
  // m > 1 only: exp_table[k] = index of w^k for a primitive element w.
  std::vector<std::uint32_t> exp_table;
  std::vector<std::uint32_t> log_table;
};

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotSupported: return "NotSupported";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::ConstantTermNotAllowed: return "ConstantTermNotAllowed";
    case ErrorKind::TruncationUnsafe: return "TruncationUnsafe";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::PointNotOnVariety: return "PointNotOnVariety";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::RepeatedRoots: return "RepeatedRoots";
    case ErrorKind::RootsNotInField: return "RootsNotInField";
    case ErrorKind::WitnessInvalid: return "WitnessInvalid";
    case ErrorKind::DerivationFeasible: return "DerivationFeasible";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::CharPNotSupported: return "CharPNotSupported";
    case ErrorKind::StraightenFailed: return "StraightenFailed";
    case ErrorKind::FieldNotFinite: return "FieldNotFinite";
    case ErrorKind::SearchLimitExceeded: return "SearchLimitExceeded";
    case ErrorKind::DomainTooLarge: return "DomainTooLarge";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::DegreeExceedsBeta: return "DegreeExceedsBeta";
    case ErrorKind::UnknownDemo: return "UnknownDemo";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

constexpr std::uint64_t kMaxExtensionOrder = 1u << 20;

using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint64_t idx, std::uint32_t p, std::uint32_t m) {
  Digits d(m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    d[i] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  return d;
}

std::uint64_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint64_t idx = 0;
  for (std::size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
  return idx;
}

// a * b mod modulus over F_p, digits lowest first, both of length m.
Digits poly_mulmod(const Digits& a, const Digits& b, const std::vector<std::uint32_t>& mod, std::uint32_t p) {
  const std::size_t m = mod.size() - 1;
  std::vector<std::uint64_t> prod(2 * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  for (std::size_t k = 2 * m - 1; k >= m; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < m; ++i) prod[k - m + i] = (prod[k - m + i] + (p - c) * mod[i]) % p;
  }
  Digits r(m);
  for (std::size_t i = 0; i < m; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
  return r;
}

// Remainder of a (any degree) by monic b over F_p; both lowest first.
std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * b[i]) % p);
    a.pop_back();
  }
  return a;
}

bool is_irreducible(const std::vector<std::uint32_t>& mod, std::uint32_t p) {
  const std::size_t m = mod.size() - 1;
  // Exhaustive search for a monic factor of degree 1..m/2.
  for (std::size_t d = 1; 2 * d <= m; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<std::uint32_t> cand = to_digits(c, p, static_cast<std::uint32_t>(d));
      cand.push_back(1);
      auto r = poly_rem(mod, cand, p);
      if (std::all_of(r.begin(), r.end(), [](std::uint32_t v) { return v == 0; })) return false;
    }
  }
  return true;
}

std::string g_poly_string(const Digits& d) {
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]) + "*";
    out += "g";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

// Parses an integer-coefficient polynomial in `g`; returns coefficients
// lowest degree first. Accepts terms like `2*g^3`, `-g`, `5`, `(g+1)`.
std::vector<mpz_class> parse_g_poly(std::string_view text) {
  std::string s = strip_spaces(text);
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw Error(ErrorKind::SyntaxError, "empty scalar");
  std::vector<mpz_class> coeffs;
  std::size_t i = 0;
  auto add = [&](std::size_t deg, const mpz_class& c) {
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
    coeffs[deg] += c;
  };
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw Error(ErrorKind::SyntaxError, "expected '+' or '-' at position " + std::to_string(i) + " in '" + s + "'");
    }
    first = false;
    mpz_class coef = 1;
    bool have_num = false;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) {
      coef = mpz_class(s.substr(start, i - start));
      have_num = true;
    }
    std::size_t deg = 0;
    if (have_num && i < s.size() && s[i] == '*') ++i;
    if (i < s.size() && s[i] == 'g') {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t es = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == es) throw Error(ErrorKind::SyntaxError, "missing exponent in '" + s + "'");
        deg = std::stoul(s.substr(es, i - es));
      }
    } else if (!have_num) {
      throw Error(ErrorKind::SyntaxError, "unexpected character at position " + std::to_string(i) + " in '" + s + "'");
    }
    add(deg, sign * coef);
  }
  return coeffs;
}

std::uint32_t mod_p(const mpz_class& v, std::uint32_t p) {
  mpz_class r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

class Registry {
 public:
  static Registry& instance() {
    static Registry r;
    return r;
  }

  const FieldData* rationals() const { return &rationals_; }

  const FieldData* get(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidField, "characteristic " + std::to_string(p) + " is not prime");
    if (modulus.size() <= 2) modulus.clear();  // degree 1: prime field
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(p, modulus);
    auto it = fields_.find(key);
    if (it != fields_.end()) return it->second.get();
    auto d = std::make_unique<FieldData>();
    d->finite = true;
    d->p = p;
    d->m = modulus.empty() ? 1 : static_cast<std::uint32_t>(modulus.size() - 1);
    d->q = 1;
    for (std::uint32_t i = 0; i < d->m; ++i) {
      d->q *= p;
      if (d->m > 1 && d->q > kMaxExtensionOrder)
        throw Error(ErrorKind::InvalidField, "extension field too large for table arithmetic");
    }
    d->modulus = modulus;
    if (d->m == 1) {
      d->name = "F" + std::to_string(p);
    } else {
      for (auto c : modulus)
        if (c >= p) throw Error(ErrorKind::InvalidField, "modulus coefficient out of range");
      if (modulus.back() != 1) throw Error(ErrorKind::InvalidField, "modulus must be monic");
      if (!is_irreducible(modulus, p))
        throw Error(ErrorKind::InvalidField, "modulus " + g_poly_string(modulus) + " is reducible over F" + std::to_string(p));
      d->name = "F" + std::to_string(d->q) + "[" + g_poly_string(modulus) + "]";
      build_tables(*d);
    }
    const FieldData* out = d.get();
    fields_.emplace(std::move(key), std::move(d));
    return out;
  }

 private:
  Registry() {
    rationals_.finite = false;
    rationals_.name = "Q";
  }

  static void build_tables(FieldData& d) {
    const std::uint64_t q = d.q;
    for (std::uint64_t cand = 2; cand < q; ++cand) {
      Digits w = to_digits(cand, d.p, d.m);
      Digits cur = to_digits(1, d.p, d.m);
      std::vector<std::uint32_t> exp_table;
      exp_table.reserve(q - 1);
      bool primitive = true;
      for (std::uint64_t k = 0; k < q - 1; ++k) {
        std::uint64_t idx = from_digits(cur, d.p);
        if (k > 0 && idx == 1) {
          primitive = false;
          break;
        }
        exp_table.push_back(static_cast<std::uint32_t>(idx));
        cur = poly_mulmod(cur, w, d.modulus, d.p);
      }
      if (!primitive) continue;
      d.exp_table = std::move(exp_table);
      d.log_table.assign(q, 0);
      for (std::uint64_t k = 0; k < q - 1; ++k) d.log_table[d.exp_table[k]] = static_cast<std::uint32_t>(k);
      return;
    }
    throw Error(ErrorKind::InvalidField, "no primitive element found");
  }

  FieldData rationals_;
  std::mutex mu_;
  std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::unique_ptr<FieldData>> fields_;
};

std::uint64_t ext_add(const FieldData& f, std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < f.m; ++i) {
    out += ((a % f.p + b % f.p) % f.p) * scale;
    a /= f.p;
    b /= f.p;
    scale *= f.p;
  }
  return out;
}

std::uint64_t ext_neg(const FieldData& f, std::uint64_t a) {
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < f.m; ++i) {
    out += ((f.p - a % f.p) % f.p) * scale;
    a /= f.p;
    scale *= f.p;
  }
  return out;
}

std::uint64_t ext_mul(const FieldData& f, std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return f.exp_table[(std::uint64_t(f.log_table[a]) + f.log_table[b]) % (f.q - 1)];
}

std::uint64_t prime_inv(std::uint64_t a, std::uint64_t p) {
  // extended Euclid
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
  while (nr != 0) {
    std::int64_t qq = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
    std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

// ---------------------------------------------------------------- FieldSpec

FieldSpec::FieldSpec() : data_(Registry::instance().rationals()) {}

FieldSpec FieldSpec::rationals() { return FieldSpec(); }

FieldSpec FieldSpec::prime(std::uint32_t p) { return FieldSpec(Registry::instance().get(p, {})); }

FieldSpec FieldSpec::extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (modulus.size() < 2) throw Error(ErrorKind::InvalidField, "modulus must have degree >= 1");
  return FieldSpec(Registry::instance().get(p, std::move(modulus)));
}

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  if (s == "Q" || s == "QQ") return rationals();
  if (s.size() < 2 || s[0] != 'F')
    throw Error(ErrorKind::InvalidField, "unknown field '" + s + "' (expected Q, Fp or Fq[modulus])");
  std::size_t i = 1;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 1) throw Error(ErrorKind::InvalidField, "missing field order in '" + s + "'");
  const std::uint64_t q = std::stoull(s.substr(1, i - 1));
  std::uint32_t p = 0, m = 0;
  for (std::uint64_t d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = static_cast<std::uint32_t>(d);
      break;
    }
  }
  if (p == 0) throw Error(ErrorKind::InvalidField, "field order must be a prime power");
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) throw Error(ErrorKind::InvalidField, "field order " + std::to_string(q) + " is not a prime power");
  if (i == s.size()) {
    if (m == 1) return prime(p);
    static const std::map<std::uint64_t, std::vector<std::uint32_t>> builtin = {
        {4, {1, 1, 1}}, {8, {1, 1, 0, 1}}, {9, {1, 0, 1}}, {25, {2, 0, 1}}, {27, {1, 2, 0, 1}}};
    auto it = builtin.find(q);
    if (it == builtin.end())
      throw Error(ErrorKind::InvalidField, "no built-in modulus for F" + std::to_string(q) + "; write F" +
                                               std::to_string(q) + "[modulus]");
    return extension(p, it->second);
  }
  if (s[i] != '[' || s.back() != ']') throw Error(ErrorKind::InvalidField, "malformed modulus in '" + s + "'");
  auto coeffs = parse_g_poly(s.substr(i + 1, s.size() - i - 2));
  std::vector<std::uint32_t> mod;
  for (const auto& c : coeffs) mod.push_back(mod_p(c, p));
  while (!mod.empty() && mod.back() == 0) mod.pop_back();
  if (mod.size() != m + 1)
    throw Error(ErrorKind::InvalidField, "modulus degree does not match F" + std::to_string(q));
  if (m == 1) return prime(p);
  return extension(p, mod);
}

bool FieldSpec::is_finite() const { return data_->finite; }
std::uint32_t FieldSpec::characteristic() const { return data_->p; }
std::uint32_t FieldSpec::degree() const { return data_->m; }
std::uint64_t FieldSpec::order() const { return data_->q; }
const std::vector<std::uint32_t>& FieldSpec::modulus() const { return data_->modulus; }
std::string FieldSpec::name() const { return data_->name; }

// ------------------------------------------------------------------- Scalar

Scalar::Scalar() : field_(), value_(mpq_class(0)) {}

Scalar Scalar::zero(const FieldSpec& f) {
  if (f.is_finite()) return Scalar(f, std::uint64_t{0});
  return Scalar(f, mpq_class(0));
}

Scalar Scalar::one(const FieldSpec& f) {
  if (f.is_finite()) return Scalar(f, std::uint64_t{1});
  return Scalar(f, mpq_class(1));
}

Scalar Scalar::from_int(const FieldSpec& f, long v) { return from_mpz(f, mpz_class(v)); }

Scalar Scalar::from_mpz(const FieldSpec& f, const mpz_class& v) {
  if (f.is_finite()) return Scalar(f, std::uint64_t{mod_p(v, f.characteristic())});
  return Scalar(f, mpq_class(v));
}

Scalar Scalar::from_rational(const FieldSpec& f, const mpq_class& v) {
  if (!f.is_finite()) {
    mpq_class c = v;
    c.canonicalize();
    return Scalar(f, c);
  }
  Scalar den = from_mpz(f, v.get_den());
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "denominator vanishes in " + f.name());
  return from_mpz(f, v.get_num()) / den;
}

Scalar Scalar::from_index(const FieldSpec& f, std::uint64_t i) {
  if (!f.is_finite()) throw Error(ErrorKind::NotSupported, "from_index requires a finite field");
  if (i >= f.order()) throw Error(ErrorKind::InvalidArgument, "element index out of range");
  return Scalar(f, i);
}

Scalar Scalar::generator(const FieldSpec& f) {
  if (!f.is_finite() || f.degree() < 2) throw Error(ErrorKind::NotSupported, "generator g exists only in F_{p^m}, m > 1");
  return Scalar(f, std::uint64_t{f.characteristic()});
}

Scalar Scalar::parse(const FieldSpec& f, std::string_view text) {
  std::string s = strip_spaces(text);
  if (!f.is_finite()) {
    if (s.empty()) throw Error(ErrorKind::SyntaxError, "empty scalar");
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') ++i;
    bool ok = i < s.size();
    bool slash = false;
    for (std::size_t k = i; k < s.size(); ++k) {
      if (s[k] == '/' && !slash && k > i && k + 1 < s.size()) {
        slash = true;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) ok = false;
    }
    if (!ok) throw Error(ErrorKind::SyntaxError, "malformed rational '" + s + "'");
    std::string body = s[0] == '+' ? s.substr(1) : s;
    mpq_class v(body);
    if (v.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + s + "'");
    v.canonicalize();
    return Scalar(f, v);
  }
  auto coeffs = parse_g_poly(s);
  const std::uint32_t p = f.characteristic();
  if (f.degree() == 1) {
    if (coeffs.size() > 1) throw Error(ErrorKind::SyntaxError, "generator g is not defined over " + f.name());
    return from_mpz(f, coeffs[0]);
  }
  // Reduce the polynomial in g modulo the field modulus.
  Scalar out = zero(f);
  Scalar gpow = one(f);
  const Scalar g = generator(f);
  for (const auto& c : coeffs) {
    out += from_mpz(f, c) * gpow;
    gpow *= g;
  }
  (void)p;
  return out;
}

bool Scalar::is_zero() const {
  if (auto r = std::get_if<std::uint64_t>(&value_)) return *r == 0;
  return std::get<mpq_class>(value_) == 0;
}

bool Scalar::is_one() const {
  if (auto r = std::get_if<std::uint64_t>(&value_)) return *r == 1;
  return std::get<mpq_class>(value_) == 1;
}

std::uint64_t Scalar::index() const {
  if (auto r = std::get_if<std::uint64_t>(&value_)) return *r;
  throw Error(ErrorKind::NotSupported, "index() requires a finite field");
}

const mpq_class& Scalar::rational() const {
  if (auto r = std::get_if<mpq_class>(&value_)) return *r;
  throw Error(ErrorKind::NotSupported, "rational() requires Q");
}

void Scalar::check_same(const Scalar& b) const {
  if (field_ != b.field_)
    throw Error(ErrorKind::FieldMismatch, "operands over " + field_.name() + " and " + b.field_.name());
}

Scalar Scalar::operator+(const Scalar& b) const {
  check_same(b);
  const FieldData& f = *field_.data();
  if (!f.finite) return Scalar(field_, mpq_class(std::get<mpq_class>(value_) + std::get<mpq_class>(b.value_)));
  const std::uint64_t x = std::get<std::uint64_t>(value_), y = std::get<std::uint64_t>(b.value_);
  if (f.m == 1) return Scalar(field_, (x + y) % f.p);
  return Scalar(field_, ext_add(f, x, y));
}

Scalar Scalar::operator-() const {
  const FieldData& f = *field_.data();
  if (!f.finite) return Scalar(field_, mpq_class(-std::get<mpq_class>(value_)));
  const std::uint64_t x = std::get<std::uint64_t>(value_);
  if (f.m == 1) return Scalar(field_, (f.p - x) % f.p);
  return Scalar(field_, ext_neg(f, x));
}

Scalar Scalar::operator-(const Scalar& b) const {
  check_same(b);
  const FieldData& f = *field_.data();
  if (!f.finite) return Scalar(field_, mpq_class(std::get<mpq_class>(value_) - std::get<mpq_class>(b.value_)));
  return *this + (-b);
}

Scalar Scalar::operator*(const Scalar& b) const {
  check_same(b);
  const FieldData& f = *field_.data();
  if (!f.finite) return Scalar(field_, mpq_class(std::get<mpq_class>(value_) * std::get<mpq_class>(b.value_)));
  const std::uint64_t x = std::get<std::uint64_t>(value_), y = std::get<std::uint64_t>(b.value_);
  if (f.m == 1) return Scalar(field_, (x * y) % f.p);
  return Scalar(field_, ext_mul(f, x, y));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const FieldData& f = *field_.data();
  if (!f.finite) return Scalar(field_, mpq_class(1 / std::get<mpq_class>(value_)));
  const std::uint64_t x = std::get<std::uint64_t>(value_);
  if (f.m == 1) return Scalar(field_, prime_inv(x, f.p));
  return Scalar(field_, std::uint64_t{f.exp_table[(f.q - 1 - f.log_table[x]) % (f.q - 1)]});
}

Scalar Scalar::operator/(const Scalar& b) const {
  check_same(b);
  return *this * b.inverse();
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar base = *this;
  Scalar out = one(field_);
  while (e > 0) {
    if (e & 1) out *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return out;
}

Scalar Scalar::pth_root() const {
  if (!field_.is_finite()) throw Error(ErrorKind::NotSupported, "p-th roots are not available in characteristic 0");
  // Frobenius has order m, so its inverse is a -> a^(p^(m-1)).
  Scalar out = *this;
  for (std::uint32_t i = 1; i < field_.degree(); ++i) out = out.pow(field_.characteristic());
  return out;
}

std::string Scalar::to_string() const {
  const FieldData& f = *field_.data();
  if (!f.finite) return std::get<mpq_class>(value_).get_str();
  const std::uint64_t x = std::get<std::uint64_t>(value_);
  if (f.m == 1) return std::to_string(x);
  return g_poly_string(to_digits(x, f.p, f.m));
}

bool Scalar::is_compound() const {
  const FieldData& f = *field_.data();
  if (!f.finite || f.m == 1) return false;
  auto d = to_digits(std::get<std::uint64_t>(value_), f.p, f.m);
  return std::count_if(d.begin(), d.end(), [](std::uint32_t v) { return v != 0; }) > 1;
}

bool operator==(const Scalar& a, const Scalar& b) { return a.field_ == b.field_ && a.value_ == b.value_; }

bool operator<(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  if (auto x = std::get_if<std::uint64_t>(&a.value_)) return *x < std::get<std::uint64_t>(b.value_);
  return std::get<mpq_class>(a.value_) < std::get<mpq_class>(b.value_);
}

std::vector<Scalar> field_elements(const FieldSpec& f) {
  if (!f.is_finite()) throw Error(ErrorKind::FieldNotFinite, "cannot enumerate " + f.name());
  std::vector<Scalar> out;
  out.reserve(f.order());
  for (std::uint64_t i = 0; i < f.order(); ++i) out.push_back(Scalar::from_index(f, i));
  return out;
}

}  // namespace isojet
