#include "isojet/demo.hpp"

#include "isojet/parse.hpp"

namespace isojet {

namespace {

Vector point(const FieldSpec& f, std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.push_back(Scalar::from_int(f, x));
  return v;
}

PolySystem single(const RingSpec& r, std::string_view text) { return PolySystem(r, {parse_poly(text, r)}); }

/// (1, (x + s y, y, z)).
ContactElement shear(const RingSpec& r, const Scalar& s) {
  const TruncPoly x = TruncPoly::variable(r, 0), y = TruncPoly::variable(r, 1), z = TruncPoly::variable(r, 2);
  return ContactElement(r, poly_identity(r, 1), {x + y.scale(s), y, z});
}

Json witness_entry(const PolySystem& f, const Vector& a1, const Vector& a2, const ContactElement& g, bool& ok) {
  const WitnessCheck c = check_equivalence_witness(f, a1, a2, g);
  ok = ok && c.ok;
  Json j{{"from", to_json(a1)}, {"to", to_json(a2)}, {"witness", to_json(g)}, {"verified", c.ok}};
  if (!c.ok) j["reason"] = c.reason;
  return j;
}

DemoResult whitney() {
  bool ok = true;
  Json out{{"demo", "whitney-char-p"}};
  const FieldSpec f2 = FieldSpec::prime(2), f7 = FieldSpec::prime(7);
  const RingSpec r2(3, 3, f2);
  const PolySystem w = single(r2, "x^2+y^2*z");
  out["system"] = to_json(w);
  out["witness"] =
      witness_entry(w, point(f2, {0, 0, 0}), point(f2, {0, 0, 1}), shear(r2, Scalar::one(f2)), ok);

  const RingSpec r7(3, 8, f7);
  const PolySystem w7 = single(r7, "x^7+y^7*z");
  Json fam = Json::array();
  for (const Scalar& t : field_elements(f7)) {
    Json e = witness_entry(w7, point(f7, {0, 0, 0}), Vector{Scalar::zero(f7), Scalar::zero(f7), t},
                           shear(r7, t.pth_root()), ok);
    e["t"] = to_json(t);
    fam.push_back(std::move(e));
  }
  out["witness_family"] = Json{{"system", to_json(w7)}, {"members", fam}};

  const auto ld = solve_log_derivation(w, point(f2, {0, 0, 1}), 3);
  const auto* inf = std::get_if<Infeasible>(&ld);
  ok = ok && inf;
  Json logder{{"direction", to_json(point(f2, {0, 0, 1}))}, {"beta_work", 3}};
  logder["outcome"] = inf ? "Infeasible" : "Feasible";
  logder["result"] = inf ? to_json(*inf) : to_json(std::get<Derivation>(ld));
  out["log_der"] = logder;
  const auto cert = inseparability_certificate(w, point(f2, {0, 0, 1}), shear(r2, Scalar::one(f2)), 3);
  ok = ok && check_certificate(cert);
  out["insep_cert"] = to_json(cert);

  Json contrast = Json::array();
  for (const RingSpec& r : {r2, RingSpec(3, 3, f7)}) {
    const PolySystem f = single(r, "x^2+y^2*z");
    const Fingerprint a = fingerprint(taylor_shift(f, point(r.field(), {0, 0, 0})));
    const Fingerprint b = fingerprint(taylor_shift(f, point(r.field(), {0, 0, 1})));
    contrast.push_back(Json{{"field", r.field().name()},
                            {"solvable_directions", to_json(solvable_directions(f, 3))},
                            {"fingerprint_origin", to_json(a)},
                            {"fingerprint_axis", to_json(b)},
                            {"fingerprints_equal", a == b}});
  }
  out["separability_contrast"] = contrast;

  const auto hs = hs_search(w, 2, 2, HSMode::regular);
  ok = ok && !hs.witness;
  Json hsj = to_json(hs);
  hsj["r"] = 2;
  hsj["beta_work"] = 2;
  hsj["mode"] = "regular";
  out["hs_search"] = hsj;

  HSDerivation c1 = HSDerivation::zero(r2, 1);
  c1.images[0] = {TruncPoly(r2), TruncPoly(r2), TruncPoly::constant(r2, Scalar::one(f2))};
  HSDerivation c2 = HSDerivation::zero(r2, 2);
  c2.images[0] = {TruncPoly::constant(r2, Scalar::one(f2)), TruncPoly::constant(r2, Scalar::one(f2)), TruncPoly(r2)};
  Json cands = Json::array();
  for (const HSDerivation& d : {c1, c2}) {
    const auto rep = hs_verify(w, d, 2);
    cands.push_back(Json{{"candidate", to_json(d)}, {"report", to_json(rep)}});
  }
  out["hs_verify"] = cands;

  const ScanReport scan = classify(w, enumerate_points(w, FiniteDomain{}));
  ok = ok && scan.classes == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}} && !scan.points[0].smooth &&
       scan.points[2].smooth;
  out["iso_scan"] = to_json(scan);
  out["ok"] = ok;
  return {out, ok};
}

DemoResult cusp() {
  bool ok = true;
  Json out{{"demo", "cusp-deformation"}};
  const FieldSpec f2 = FieldSpec::prime(2);
  const RingSpec r(3, 5, f2);
  const PolySystem f = single(r, "x^2+y^3+z*y^2");
  const Vector a = point(f2, {0, 0, 1});
  const ContactElement g = shear(r, Scalar::one(f2));
  out["system"] = to_json(f);
  out["witness"] = witness_entry(f, point(f2, {0, 0, 0}), a, g, ok);
  Json certs = Json::array();
  for (unsigned bw = 3; bw <= 5; ++bw) {
    const auto ld = solve_log_derivation(f, a, bw);
    ok = ok && std::holds_alternative<Infeasible>(ld);
    const auto cert = inseparability_certificate(f, a, g, bw);
    ok = ok && check_certificate(cert);
    certs.push_back(to_json(cert));
  }
  out["certificates"] = certs;
  out["ok"] = ok;
  return {out, ok};
}

DemoResult cross_ratio_demo() {
  const FieldSpec q = FieldSpec::rationals();
  const RingSpec r(3, 5, q);
  const PolySystem f = single(r, "x*y*(x+y)*(x+z*y)");
  Json out{{"demo", "cross-ratio"}, {"system", to_json(f)}};
  Json pts = Json::array();
  std::vector<Scalar> js;
  std::vector<Fingerprint> fps;
  for (long c : {2L, 3L}) {
    const PolySystem s = taylor_shift(f, point(q, {0, 0, c}));
    const TruncPoly cone = tangent_cone(s[0]);
    js.push_back(quartic_j_invariant(cone));
    fps.push_back(fingerprint(s));
    pts.push_back(Json{{"point", to_json(point(q, {0, 0, c}))},
                       {"tangent_cone", to_json(cone)},
                       {"j", to_json(js.back())},
                       {"fingerprint", to_json(fps.back())}});
  }
  out["points"] = pts;
  out["j_distinct"] = js[0] != js[1];
  out["fingerprints_equal"] = fps[0] == fps[1];
  const bool ok = js[0] == Scalar::from_int(q, 1728) && js[1] == Scalar::parse(q, "21952/9");
  out["ok"] = ok;
  return {out, ok};
}

}  // namespace

std::vector<std::string> demo_names() { return {"whitney-char-p", "cusp-deformation", "cross-ratio"}; }

DemoResult run_demo(std::string_view name) {
  if (name == "whitney-char-p") return whitney();
  if (name == "cusp-deformation") return cusp();
  if (name == "cross-ratio") return cross_ratio_demo();
  throw Error(ErrorKind::UnknownDemo, std::string(name));
}

}  // namespace isojet
