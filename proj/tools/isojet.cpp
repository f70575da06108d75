// Command-line front end. Every command prints one JSON document to stdout.
// Exit status: 0 success, 1 definitive negative answer, 2 usage or input error.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "isojet/demo.hpp"
#include "isojet/parse.hpp"
#include "isojet/report.hpp"

using namespace isojet;

namespace {

struct Globals {
  std::string field = "Q";
  std::string vars = "3";
  std::optional<unsigned> beta;
  bool truncate = false;
  std::string json_path;
  std::optional<std::uint64_t> seed;
};

/// Inputs shared across commands; each command reads the ones it declares.
struct Inputs {
  std::string expr, f, at, from, to, matrix, phi, element, a, b, v, g, h, levels, box, mode = "regular", name;
  std::optional<unsigned> beta_work;
  unsigned r = 1;
  std::uint64_t max_nodes = HSSearchOptions{}.max_nodes;
  std::uint64_t cap = default_domain_cap;
  unsigned threads = 0;
};

struct Outcome {
  Json body;
  int code = 0;
};

std::vector<std::string> variable_names(const std::string& vars) {
  if (!vars.empty() && std::all_of(vars.begin(), vars.end(), [](unsigned char c) { return std::isdigit(c); }))
    return {};
  return split_list(vars, ',');
}

std::size_t variable_count(const std::string& vars) {
  const auto names = variable_names(vars);
  if (!names.empty()) return names.size();
  const std::size_t n = std::stoul(vars);
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "--vars must name at least one variable");
  return n;
}

class Context {
 public:
  Context(const Globals& g, const Inputs& in) : g_(g), in_(in), field_(FieldSpec::parse(g.field)) {}

  const FieldSpec& field() const { return field_; }
  bool truncate() const { return g_.truncate; }

  /// The ring for a command whose polynomial inputs are `texts`. Without
  /// --beta, beta is 2 * (largest total degree), at least 1.
  RingSpec ring(const std::vector<std::string>& texts) {
    if (ring_) return *ring_;
    unsigned beta;
    if (g_.beta) {
      beta = *g_.beta;
    } else {
      unsigned deg = 0;
      for (const auto& t : texts) deg = std::max(deg, degree_of(t));
      beta = std::max(1u, 2 * deg);
    }
    ring_ = RingSpec(variable_count(g_.vars), beta, field_, variable_names(g_.vars));
    return *ring_;
  }

  PolySystem system(const std::vector<std::string>& extra = {}) {
    require(in_.f, "--f");
    std::vector<std::string> texts = extra;
    texts.push_back(in_.f);
    const RingSpec r = ring(texts);
    return PolySystem(r, parse_poly_list(in_.f, r, g_.truncate));
  }

  Vector point(const std::string& text, const RingSpec& r) const {
    if (text.empty()) return zero_vector(field_, r.nvars());
    Vector p = parse_point(text, field_);
    if (p.size() != r.nvars()) throw Error(ErrorKind::DimensionMismatch, "point has the wrong number of coordinates");
    return p;
  }

  PolyMatrix poly_matrix(const std::string& text, const RingSpec& r) const {
    PolyMatrix m;
    for (const auto& row : split_matrix(text)) {
      std::vector<TruncPoly> out;
      for (const auto& e : row) out.push_back(parse_poly(e, r, g_.truncate));
      m.push_back(std::move(out));
    }
    return m;
  }

  Matrix scalar_matrix(const std::string& text) const {
    std::vector<Vector> rows;
    std::size_t cols = 0;
    for (const auto& row : split_matrix(text)) {
      Vector v;
      for (const auto& e : row) v.push_back(Scalar::parse(field_, e));
      if (!rows.empty() && v.size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
      cols = v.size();
      rows.push_back(std::move(v));
    }
    return Matrix::from_rows(field_, rows, cols);
  }

  /// From --element file.json, or --matrix with --phi (matrix defaults to 1).
  std::optional<ContactElement> element(const RingSpec& r, std::size_t n) const {
    if (!in_.element.empty()) {
      std::ifstream file(in_.element);
      if (!file) throw Error(ErrorKind::InvalidArgument, "cannot read " + in_.element);
      Json j;
      try {
        j = Json::parse(file);
      } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::SyntaxError, in_.element + ": " + e.what());
      }
      return contact_element_from_json(j, r);
    }
    if (in_.phi.empty()) return std::nullopt;
    PolyMatrix m = in_.matrix.empty() ? poly_identity(r, n) : poly_matrix(in_.matrix, r);
    return ContactElement(r, std::move(m), parse_poly_list(in_.phi, r, g_.truncate));
  }

  unsigned beta_work(const RingSpec& r) const { return in_.beta_work.value_or(r.beta()); }

  static void require(const std::string& value, const char* flag) {
    if (value.empty()) throw Error(ErrorKind::InvalidArgument, std::string(flag) + " is required");
  }

 private:
  /// Largest total degree among comma- or ';'-separated polynomials.
  unsigned degree_of(std::string text) const {
    if (text.empty()) return 0;
    std::replace(text.begin(), text.end(), ';', ',');
    const std::size_t n = variable_count(g_.vars);
    for (unsigned b = 4;; b *= 2) {
      try {
        unsigned d = 0;
        for (const auto& p : parse_poly_list(text, RingSpec(n, b, field_, variable_names(g_.vars)))) d = std::max(d, p.degree());
        return d;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegreeExceedsBeta || b >= 256) throw;
      }
    }
  }

  const Globals& g_;
  const Inputs& in_;
  FieldSpec field_;
  std::optional<RingSpec> ring_;
};

using Command = std::function<Outcome(Context&, const Inputs&)>;

Outcome ring_eval(Context& c, const Inputs& in) {
  Context::require(in.expr, "--expr");
  const RingSpec r = c.ring({in.expr});
  const TruncPoly p = parse_poly(in.expr, r, c.truncate());
  Json j{{"ring", to_json(r)}, {"result", to_json(p)}, {"truncated", p.truncated()}};
  if (!in.at.empty()) j["value"] = to_json(p.evaluate(c.point(in.at, r)));
  return {j, 0};
}

Outcome act_cmd(Context& c, const Inputs& in) {
  const PolySystem f = c.system({in.phi, in.matrix});
  const auto g = c.element(f.spec(), f.size());
  if (!g) throw Error(ErrorKind::InvalidArgument, "--phi or --element is required");
  g->validate();
  return {Json{{"system", to_json(f)}, {"element", to_json(*g)}, {"result", to_json(act(*g, f).entries())}}, 0};
}

Outcome invert_cmd(Context& c, const Inputs& in) {
  Context::require(in.phi, "--phi");
  const RingSpec r = c.ring({in.phi, in.matrix});
  const std::size_t n = in.matrix.empty() ? 1 : split_matrix(in.matrix).size();
  const auto g = c.element(r, n);
  g->validate();
  const ContactElement inv = invert(*g);
  const bool two_sided = group_mul(inv, *g) == ContactElement::identity(r, n) &&
                         group_mul(*g, inv) == ContactElement::identity(r, n);
  return {Json{{"ring", to_json(r)}, {"element", to_json(*g)}, {"inverse", to_json(inv)}, {"verified", two_sided}}, 0};
}

Outcome mather_cmd(Context& c, const Inputs& in) {
  Context::require(in.a, "--a");
  Context::require(in.b, "--b");
  const Matrix a = c.scalar_matrix(in.a), b = c.scalar_matrix(in.b);
  const Matrix cm = mather_complement(a, b);
  const Matrix d = cm * (Matrix::identity(c.field(), a.rows()) - a * b) + b;
  return {Json{{"field", c.field().name()},
               {"A", to_json(a)},
               {"B", to_json(b)},
               {"C", to_json(cm)},
               {"D", to_json(d)},
               {"det_D", to_json(d.determinant())}},
          0};
}

Outcome equiv_check(Context& c, const Inputs& in) {
  const PolySystem f = c.system({in.phi, in.matrix});
  const Vector a1 = c.point(in.from, f.spec()), a2 = c.point(in.to, f.spec());
  if (!f.vanishes_at(a1) || !f.vanishes_at(a2)) throw Error(ErrorKind::PointNotOnVariety, "both points must lie on V(f)");
  const PolySystem s1 = taylor_shift(f, a1), s2 = taylor_shift(f, a2);
  const auto res = assess_equivalence(s1, s2, c.element(f.spec(), f.size()));
  Json j = to_json(res);
  j["system"] = to_json(f);
  j["from"] = to_json(a1);
  j["to"] = to_json(a2);
  j["fingerprints"] = Json::array({to_json(fingerprint(s1)), to_json(fingerprint(s2))});
  return {j, res.tier == EquivalenceTier::not_equivalent ? 1 : 0};
}

PolySystem shifted(Context& c, const Inputs& in, PolySystem f) {
  return in.at.empty() ? f : taylor_shift(f, c.point(in.at, f.spec()));
}

Outcome orbit_tangent(Context& c, const Inputs& in) {
  const PolySystem f = shifted(c, in, c.system());
  const Subspace t = orbit_tangent_space(f);
  return {Json{{"system", to_json(f)}, {"ambient", t.ambient()}, {"dim", t.dim()}, {"codim", t.ambient() - t.dim()}},
          0};
}

Outcome fingerprint_cmd(Context& c, const Inputs& in) {
  const PolySystem f = shifted(c, in, c.system());
  return {Json{{"system", to_json(f)}, {"fingerprint", to_json(fingerprint(f))}}, 0};
}

Outcome jinv(Context& c, const Inputs& in) {
  const PolySystem f = shifted(c, in, c.system());
  const TruncPoly cone = tangent_cone(f[0]);
  Json j{{"system", to_json(f)}, {"tangent_cone", to_json(cone)}};
  try {
    Json roots = Json::array();
    for (const auto& p : quartic_roots(cone)) roots.push_back(Json::array({to_json(p.a), to_json(p.b)}));
    j["roots"] = roots;
    j["j"] = to_json(quartic_j_invariant(cone));
    return {j, 0};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RepeatedRoots && e.kind() != ErrorKind::RootsNotInField) throw;
    j["j"] = nullptr;
    j["reason"] = std::string(error_kind_name(e.kind()));
    return {j, 1};
  }
}

Outcome log_der(Context& c, const Inputs& in) {
  Context::require(in.v, "--v");
  const PolySystem f = c.system();
  const unsigned bw = c.beta_work(f.spec());
  const auto res = solve_log_derivation(f, c.point(in.v, f.spec()), bw);
  Json j{{"system", to_json(f)}, {"direction", to_json(c.point(in.v, f.spec()))}, {"beta_work", bw}};
  if (const auto* d = std::get_if<Derivation>(&res)) {
    j["outcome"] = "Feasible";
    j["derivation"] = to_json(*d);
    return {j, 0};
  }
  j["outcome"] = "Infeasible";
  j["infeasible"] = to_json(std::get<Infeasible>(res));
  return {j, 1};
}

Outcome solvable_dirs(Context& c, const Inputs&) {
  const PolySystem f = c.system();
  const unsigned bw = c.beta_work(f.spec());
  return {Json{{"system", to_json(f)}, {"beta_work", bw}, {"directions", to_json(solvable_directions(f, bw))}}, 0};
}

Outcome insep_cert(Context& c, const Inputs& in) {
  Context::require(in.a, "--a");
  const PolySystem f = c.system({in.phi, in.matrix});
  const auto g = c.element(f.spec(), f.size());
  if (!g) throw Error(ErrorKind::InvalidArgument, "--phi or --element is required");
  const unsigned bw = c.beta_work(f.spec());
  Json j{{"system", to_json(f)}, {"beta_work", bw}};
  try {
    j["outcome"] = "Certified";
    j["certificate"] = to_json(inseparability_certificate(f, c.point(in.a, f.spec()), *g, bw));
    return {j, 0};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DerivationFeasible) throw;
    j["outcome"] = "DerivationFeasible";
    j["message"] = e.what();
    return {j, 1};
  }
}

Outcome split_cmd(Context& c, const Inputs& in) {
  Context::require(in.g, "--g");
  const PolySystem f = c.system({in.g, in.h});
  const RingSpec& r = f.spec();
  PolyMatrix h = in.h.empty() ? PolyMatrix(f.size(), std::vector<TruncPoly>(f.size(), TruncPoly(r)))
                              : c.poly_matrix(in.h, r);
  const Derivation d{r, parse_poly_list(in.g, r, c.truncate()), std::move(h)};
  const SplitResult s = straighten_and_split(f, d);
  return {Json{{"system", to_json(f)}, {"derivation", to_json(d)}, {"split", to_json(s)}, {"verified", check_split(f, d, s)}},
          0};
}

HSMode parse_mode(const std::string& m) {
  if (m == "regular") return HSMode::regular;
  if (m == "any") return HSMode::any;
  throw Error(ErrorKind::InvalidArgument, "--mode must be regular or any");
}

Outcome hs_search_cmd(Context& c, const Inputs& in) {
  const PolySystem f = c.system();
  const unsigned bw = c.beta_work(f.spec());
  const auto res = hs_search(f, in.r, bw, parse_mode(in.mode), HSSearchOptions{in.max_nodes});
  Json j = to_json(res);
  j["system"] = to_json(f);
  j["r"] = in.r;
  j["beta_work"] = bw;
  j["mode"] = in.mode;
  return {j, res.witness ? 0 : 1};
}

Outcome hs_verify_cmd(Context& c, const Inputs& in) {
  Context::require(in.levels, "--levels");
  const PolySystem f = c.system({in.levels});
  const RingSpec& r = f.spec();
  const auto rows = c.poly_matrix(in.levels, r);
  HSDerivation d = HSDerivation::zero(r, static_cast<unsigned>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != r.nvars()) throw Error(ErrorKind::DimensionMismatch, "each level needs one entry per variable");
    d.images[i] = rows[i];
  }
  const unsigned bw = c.beta_work(r);
  const auto rep = hs_verify(f, d, bw);
  Json j = to_json(rep);
  j["system"] = to_json(f);
  j["derivation"] = to_json(d);
  j["beta_work"] = bw;
  return {j, rep.ok ? 0 : 1};
}

Outcome iso_scan(Context& c, const Inputs& in) {
  const PolySystem f = c.system();
  ScanDomain dom = FiniteDomain{};
  if (!in.box.empty()) {
    const auto parts = split_list(in.box, ',');
    if (parts.size() != 3) throw Error(ErrorKind::InvalidArgument, "--box is lower,upper,max_denominator");
    dom = RationalBox{std::stol(parts[0]), std::stol(parts[1]), std::stol(parts[2])};
  }
  const ScanReport rep = classify(f, enumerate_points(f, dom, in.cap), in.threads);
  Json j = to_json(rep);
  j["beta"] = f.spec().beta();
  return {j, 0};
}

Outcome demo_cmd(Context&, const Inputs& in) {
  const DemoResult d = run_demo(in.name);
  return {d.report, d.ok ? 0 : 1};
}

int emit(const Json& body, const Globals& g) {
  const std::string text = body.dump(2) + "\n";
  std::cout << text;
  if (!g.json_path.empty()) {
    std::ofstream out(g.json_path);
    if (!out) {
      std::cerr << "cannot write " << g.json_path << "\n";
      return 2;
    }
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact-jet computations over Q and finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Inputs in;
  app.add_option("--field", g.field, "Q, Fp, F4, F8, F9, F25, F27 or Fq[modulus in g]")->capture_default_str();
  app.add_option("--vars", g.vars, "number of variables or comma-separated names")->capture_default_str();
  app.add_option("--beta", g.beta, "truncation order; default 2 * total degree");
  app.add_flag("--truncate", g.truncate, "drop input terms above beta instead of rejecting them");
  app.add_option("--json", g.json_path, "also write the JSON report to this file");
  app.add_option("--seed", g.seed, "seed recorded in the report; all commands are deterministic");

  std::map<CLI::App*, std::pair<std::string, Command>> commands;
  auto sub = [&](const std::string& name, const std::string& help, Command cmd) {
    CLI::App* s = app.add_subcommand(name, help);
    commands[s] = {name, std::move(cmd)};
    return s;
  };
  auto with_f = [&](CLI::App* s) { s->add_option("--f", in.f, "comma-separated polynomials")->required(); };
  auto with_element = [&](CLI::App* s) {
    s->add_option("--matrix", in.matrix, "unit matrix over the ring, rows split by ';'");
    s->add_option("--phi", in.phi, "automorphism images of the variables");
    s->add_option("--element", in.element, "JSON file {\"matrix\": [[...]], \"phi\": [...]}");
  };
  auto with_bw = [&](CLI::App* s) { s->add_option("--beta-work", in.beta_work, "working order; default beta"); };
  auto with_at = [&](CLI::App* s) { s->add_option("--at", in.at, "recentre at this point of V(f)"); };

  auto* s = sub("ring-eval", "parse and print a canonical truncated polynomial", ring_eval);
  s->add_option("--expr", in.expr)->required();
  s->add_option("--at", in.at, "also evaluate the polynomial here");
  s = sub("act", "apply a contact group element", act_cmd);
  with_f(s);
  with_element(s);
  s = sub("invert", "invert a contact group element", invert_cmd);
  with_element(s);
  s = sub("mather", "complement C with C(1-AB)+B invertible", mather_cmd);
  s->add_option("--a", in.a, "scalar matrix, rows split by ';'")->required();
  s->add_option("--b", in.b, "scalar matrix, rows split by ';'")->required();
  s = sub("equiv-check", "contact equivalence of the jets at two points", equiv_check);
  with_f(s);
  s->add_option("--from", in.from, "first point; default origin");
  s->add_option("--to", in.to, "second point")->required();
  with_element(s);
  s = sub("orbit-tangent", "dimension of the orbit tangent space", orbit_tangent);
  with_f(s);
  with_at(s);
  s = sub("fingerprint", "contact-invariant fingerprint", fingerprint_cmd);
  with_f(s);
  with_at(s);
  s = sub("jinv", "j-invariant of a binary quartic tangent cone", jinv);
  with_f(s);
  with_at(s);
  s = sub("log-der", "log derivation with prescribed value at the origin", log_der);
  with_f(s);
  s->add_option("--v", in.v, "g(0)")->required();
  with_bw(s);
  s = sub("solvable-dirs", "values g(0) reachable by log derivations", solvable_dirs);
  with_f(s);
  with_bw(s);
  s = sub("insep-cert", "inseparability certificate for a witnessed shift", insep_cert);
  with_f(s);
  s->add_option("--a", in.a, "shift point")->required();
  with_element(s);
  with_bw(s);
  s = sub("split", "straighten a regular log derivation and split off a variable", split_cmd);
  with_f(s);
  s->add_option("--g", in.g, "derivation coefficients g_j")->required();
  s->add_option("--multipliers", in.h, "multiplier matrix H, rows split by ';'; default zero");
  s = sub("hs-search", "search for a Hasse-Schmidt derivation preserving (f)", hs_search_cmd);
  with_f(s);
  s->add_option("--r", in.r, "number of levels")->capture_default_str();
  with_bw(s);
  s->add_option("--mode", in.mode, "regular or any")->capture_default_str();
  s->add_option("--max-nodes", in.max_nodes)->capture_default_str();
  s = sub("hs-verify", "check a truncated Hasse-Schmidt derivation", hs_verify_cmd);
  with_f(s);
  s->add_option("--levels", in.levels, "d_i(x_j), levels split by ';'")->required();
  with_bw(s);
  s = sub("iso-scan", "classify the points of V(f) by fingerprint", iso_scan);
  with_f(s);
  s->add_option("--box", in.box, "lower,upper,max_denominator over Q");
  s->add_option("--cap", in.cap, "largest domain size")->capture_default_str();
  s->add_option("--threads", in.threads, "worker threads; 0 for all cores");
  s = sub("demo", "run a scripted example", demo_cmd);
  s->add_option("name", in.name, "whitney-char-p, cusp-deformation or cross-ratio")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string name;
    for (auto& [sc, entry] : commands)
      if (sc->parsed()) name = entry.first;
    std::cerr << Json{{"command", name}, {"error", "UsageError"}, {"message", e.what()}}.dump(2) << "\n";
    return 2;
  }

  for (auto& [sc, entry] : commands) {
    if (!sc->parsed()) continue;
    try {
      Context ctx(g, in);
      Outcome out = entry.second(ctx, in);
      Json body{{"command", entry.first}};
      if (g.seed) body["seed"] = *g.seed;
      for (auto& [k, v] : out.body.items()) body[k] = v;
      if (emit(body, g) != 0) return 2;
      return out.code;
    } catch (const Error& e) {
      Json err{{"command", entry.first},
               {"error", std::string(error_kind_name(e.kind()))},
               {"message", e.what()}};
      std::cerr << err.dump(2) << "\n";
      return 2;
    } catch (const std::exception& e) {
      Json err{{"command", entry.first}, {"error", "InvalidArgument"}, {"message", e.what()}};
      std::cerr << err.dump(2) << "\n";
      return 2;
    }
  }
  return 2;
}
