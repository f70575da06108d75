#include "isojet/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace isojet {

namespace {

using Exps = std::vector<std::uint16_t>;
using ExactPoly = std::map<Exps, Scalar>;

constexpr unsigned kHardDegreeCap = 1024;

class Parser {
 public:
  Parser(std::string_view text, const RingSpec& spec, bool truncate)
      : s_(text), spec_(spec), truncate_(truncate), field_(spec.field()) {
    cap_ = truncate ? spec.beta() : std::min(kHardDegreeCap, std::max(4 * spec.beta(), spec.beta() + 64));
  }

  ExactPoly parse() {
    skip_ws();
    if (pos_ >= s_.size()) fail("empty expression");
    ExactPoly p = expr();
    skip_ws();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

  bool dropped() const { return dropped_; }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExactPoly constant(const Scalar& c) const {
    ExactPoly p;
    if (!c.is_zero()) p.emplace(Exps(spec_.nvars(), 0), c);
    return p;
  }

  static unsigned total(const Exps& e) {
    unsigned t = 0;
    for (auto v : e) t += v;
    return t;
  }

  static void add_into(ExactPoly& a, const ExactPoly& b, bool negate) {
    for (const auto& [e, c] : b) {
      auto it = a.find(e);
      Scalar v = negate ? -c : c;
      if (it == a.end()) {
        a.emplace(e, v);
      } else {
        it->second += v;
        if (it->second.is_zero()) a.erase(it);
      }
    }
  }

  ExactPoly mul(const ExactPoly& a, const ExactPoly& b) {
    ExactPoly out;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        Exps e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        if (total(e) > cap_) {
          if (truncate_) {
            dropped_ = true;
            continue;
          }
          throw Error(ErrorKind::DegreeExceedsBeta, "intermediate degree exceeds " + std::to_string(cap_) + " in '" +
                                                        std::string(s_) + "'");
        }
        auto it = out.find(e);
        if (it == out.end()) {
          out.emplace(std::move(e), ca * cb);
        } else {
          it->second += ca * cb;
        }
      }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  }

  ExactPoly expr() {
    ExactPoly acc = term();
    for (;;) {
      if (accept('+')) {
        add_into(acc, term(), false);
      } else if (accept('-')) {
        add_into(acc, term(), true);
      } else {
        return acc;
      }
    }
  }

  ExactPoly term() {
    ExactPoly acc = factor();
    while (accept('*')) acc = mul(acc, factor());
    return acc;
  }

  ExactPoly factor() {
    if (accept('-')) {
      ExactPoly p = factor();
      for (auto& kv : p) kv.second = -kv.second;
      return p;
    }
    if (accept('+')) return factor();
    return power();
  }

  ExactPoly power() {
    ExactPoly base = atom();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a nonnegative integer exponent");
    const unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (e > kHardDegreeCap) fail("exponent too large");
    ExactPoly out = constant(Scalar::one(field_));
    for (unsigned long i = 0; i < e; ++i) out = mul(out, base);
    return out;
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  ExactPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExactPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected denominator");
        mpz_class den = integer();
        if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(s_) + "'");
        return constant(Scalar::from_rational(field_, mpq_class(num, den)));
      }
      return constant(Scalar::from_mpz(field_, num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      const auto& names = spec_.var_names();
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return var(i);
      if (name.size() > 1 && name[0] == 'x' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
        const unsigned long idx = std::stoul(name.substr(1));
        if (idx >= 1 && idx <= spec_.nvars()) return var(idx - 1);
      }
      if (name == "g" && field_.is_finite() && field_.degree() > 1) return constant(Scalar::generator(field_));
      pos_ = start;
      throw Error(ErrorKind::UnknownVariable, "'" + name + "' at position " + std::to_string(start) + " in '" +
                                                  std::string(s_) + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  ExactPoly var(std::size_t i) {
    Exps e(spec_.nvars(), 0);
    e[i] = 1;
    ExactPoly p;
    if (cap_ >= 1) {
      p.emplace(e, Scalar::one(field_));
    } else {
      dropped_ = true;
      if (!truncate_) throw Error(ErrorKind::DegreeExceedsBeta, "variable in a ring with beta = 0");
    }
    return p;
  }

  std::string_view s_;
  const RingSpec& spec_;
  bool truncate_;
  FieldSpec field_;
  unsigned cap_;
  std::size_t pos_ = 0;
  bool dropped_ = false;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

TruncPoly parse_poly(std::string_view text, const RingSpec& spec, bool truncate) {
  Parser parser(text, spec, truncate);
  ExactPoly exact = parser.parse();
  TruncPoly out(spec);
  Vector dense = zero_vector(spec.field(), spec.dim());
  bool dropped = parser.dropped();
  for (const auto& [e, c] : exact) {
    const long idx = spec.index_of(e);
    if (idx < 0) {
      if (!truncate) {
        unsigned deg = 0;
        for (auto v : e) deg += v;
        throw Error(ErrorKind::DegreeExceedsBeta, "term of degree " + std::to_string(deg) + " exceeds beta = " +
                                                      std::to_string(spec.beta()) + " in '" + std::string(text) +
                                                      "' (pass --truncate to discard it)");
      }
      dropped = true;
      continue;
    }
    dense[static_cast<std::size_t>(idx)] = c;
  }
  out = TruncPoly::from_dense(spec, dense);
  out.mark_truncated(dropped);
  return out;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
      continue;
    }
    cur.push_back(c);
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<TruncPoly> parse_poly_list(std::string_view text, const RingSpec& spec, bool truncate) {
  std::vector<TruncPoly> out;
  for (const auto& part : split_list(text, ',')) out.push_back(parse_poly(part, spec, truncate));
  return out;
}

Vector parse_point(std::string_view text, const FieldSpec& field) {
  Vector out;
  for (const auto& part : split_list(text, ',')) out.push_back(Scalar::parse(field, part));
  return out;
}

std::vector<std::vector<std::string>> split_matrix(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : split_list(text, ';')) out.push_back(split_list(row, ','));
  return out;
}

std::string point_to_string(const Vector& point) {
  std::string out;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out += ",";
    out += point[i].to_string();
  }
  return out;
}

}  // namespace isojet
