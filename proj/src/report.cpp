#include "isojet/report.hpp"

#include <algorithm>

#include "isojet/parse.hpp"

namespace isojet {

Json to_json(const Scalar& s) { return s.to_string(); }

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(to_json(s));
  return a;
}

Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

Json to_json(const TruncPoly& p) { return p.to_string(); }

Json to_json(const std::vector<TruncPoly>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_json(p));
  return a;
}

Json to_json(const PolyMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(to_json(row));
  return a;
}

Json to_json(const RingSpec& r) {
  return Json{{"field", r.field().name()}, {"vars", r.var_names()}, {"beta", r.beta()}};
}

Json to_json(const PolySystem& f) { return Json{{"ring", to_json(f.spec())}, {"f", to_json(f.entries())}}; }

Json to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& v : s.basis()) basis.push_back(to_json(v));
  return Json{{"ambient", s.ambient()}, {"dim", s.dim()}, {"basis", basis}};
}

Json to_json(const ContactElement& g) { return Json{{"matrix", to_json(g.matrix())}, {"phi", to_json(g.phi())}}; }

Json to_json(const Fingerprint& fp) {
  return Json{{"field", fp.field},   {"characteristic", fp.characteristic}, {"beta", fp.beta},
              {"orders", fp.orders}, {"hilbert", fp.hilbert},               {"codim", fp.codim}};
}

Json to_json(const Derivation& d) {
  return Json{{"g", to_json(d.g)}, {"h", to_json(d.h)}, {"regular", d.is_regular()}};
}

Json to_json(const Infeasible& inf) { return Json{{"certificate", to_json(inf.certificate)}}; }

Json to_json(const InseparabilityCertificate& c) {
  return Json{{"point", to_json(c.a)},
              {"witness", to_json(c.witness)},
              {"direction", to_json(c.direction)},
              {"beta_work", c.beta_work},
              {"certificate", to_json(c.certificate)},
              {"valid", check_certificate(c)}};
}

Json to_json(const SplitResult& s) {
  return Json{{"psi", to_json(s.psi)},
              {"straightened_var", s.residual.spec().var_names()[s.j]},
              {"residual", to_json(s.residual.entries())},
              {"multipliers", to_json(s.multipliers)}};
}

Json to_json(const HSDerivation& d) {
  Json levels = Json::array();
  for (const auto& l : d.images) levels.push_back(to_json(l));
  Json reg = Json::array();
  for (bool b : d.regular_levels()) reg.push_back(b);
  return Json{{"r", d.r}, {"levels", levels}, {"regular", d.is_regular()}, {"regular_levels", reg}};
}

Json to_json(const HSViolation& v) {
  return Json{{"equation", v.equation},
              {"t_order", v.t_order},
              {"residue", to_json(v.residue)},
              {"normal_form", to_json(v.normal_form)}};
}

Json to_json(const HSVerifyReport& r) {
  Json j{{"ok", r.ok}};
  if (r.violation) j["violation"] = to_json(*r.violation);
  return j;
}

Json to_json(const HSSearchResult& r) {
  Json j{{"outcome", r.witness ? "Found" : "Exhausted"}, {"nodes", r.nodes}, {"unknowns", r.unknowns}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

Json to_json(const ScanReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json e{{"point", to_json(p.point)},
           {"fingerprint", to_json(p.fingerprint)},
           {"jacobian_rank", p.jacobian_rank},
           {"smooth", p.smooth},
           {"j_status", p.j_status}};
    if (p.j_invariant) e["j"] = to_json(*p.j_invariant);
    pts.push_back(std::move(e));
  }
  Json classes = Json::array();
  for (const auto& c : r.classes) {
    Json members = Json::array();
    Json js = Json::array();
    for (std::size_t i : c) {
      members.push_back(to_json(r.points[i].point));
      if (r.points[i].j_invariant) {
        const Json v = to_json(*r.points[i].j_invariant);
        if (std::find(js.begin(), js.end(), v) == js.end()) js.push_back(v);
      }
    }
    classes.push_back(Json{{"points", members},
                           {"indices", c},
                           {"smooth", r.points[c.front()].smooth},
                           {"j_values", js},
                           {"tier", c.size() > 1 ? "CANDIDATE" : "SINGLETON"}});
  }
  return Json{{"system", to_json(r.f)},
              {"field_relative", !r.f.spec().field().is_finite()},
              {"points", pts},
              {"classes", classes}};
}

Json to_json(const EquivalenceAssessment& a) {
  Json j{{"tier", tier_name(a.tier)}, {"beta", a.beta}, {"basis", a.basis}};
  if (a.witness) j["witness"] = to_json(*a.witness);
  return j;
}

ContactElement contact_element_from_json(const Json& j, const RingSpec& spec) {
  if (!j.is_object() || !j.contains("matrix") || !j.contains("phi"))
    throw Error(ErrorKind::InvalidArgument, "contact element needs \"matrix\" and \"phi\"");
  PolyMatrix m;
  for (const auto& row : j.at("matrix")) {
    std::vector<TruncPoly> r;
    for (const auto& e : row) r.push_back(parse_poly(e.get<std::string>(), spec));
    m.push_back(std::move(r));
  }
  std::vector<TruncPoly> phi;
  for (const auto& e : j.at("phi")) phi.push_back(parse_poly(e.get<std::string>(), spec));
  return ContactElement(spec, std::move(m), std::move(phi));
}

}  // namespace isojet
