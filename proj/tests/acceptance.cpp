// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "isojet/derlog.hpp"
#include "isojet/hs.hpp"
#include "isojet/isoscan.hpp"
#include "support.hpp"

using namespace isojet;
using isojet::testing::Gen;
using isojet::testing::P;
using isojet::testing::random_element;
using isojet::testing::random_system;

namespace {

struct Verdict {
  bool ok = true;
  std::string failures;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    failures += (ok ? "" : "; ") + what;
    ok = false;
  }

  std::string summary() const { return ok ? detail.str() : failures + " | " + detail.str(); }
};

Vector pt(const FieldSpec& f, std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.push_back(Scalar::from_int(f, x));
  return v;
}

PolySystem sys(const RingSpec& r, const std::string& text) { return PolySystem(r, {P(r, text)}); }

ContactElement shear(const RingSpec& r, const Scalar& s) {
  return ContactElement(r, poly_identity(r, 1), {P(r, "x") + P(r, "y").scale(s), P(r, "y"), P(r, "z")});
}

void whitney_witness(Verdict& v) {
  const FieldSpec f2 = FieldSpec::prime(2), f7 = FieldSpec::prime(7);
  const RingSpec r2(3, 3, f2);
  v.require(verify_equivalence_witness(sys(r2, "x^2+y^2*z"), pt(f2, {0, 0, 0}), pt(f2, {0, 0, 1}),
                                       shear(r2, Scalar::one(f2))),
            "F2 witness rejected");
  const RingSpec r7(3, 8, f7);
  const PolySystem w7 = sys(r7, "x^7+y^7*z");
  for (const Scalar& t : field_elements(f7))
    v.require(verify_equivalence_witness(w7, pt(f7, {0, 0, 0}), {Scalar::zero(f7), Scalar::zero(f7), t},
                                         shear(r7, t.pth_root())),
              "F7 witness rejected at t = " + t.to_string());
  v.detail << "F2 witness and all 7 members of the F7 family verified";
}

void cusp_inseparability(Verdict& v) {
  const FieldSpec f2 = FieldSpec::prime(2);
  const RingSpec r(3, 5, f2);
  const PolySystem f = sys(r, "x^2+y^3+z*y^2");
  const Vector a = pt(f2, {0, 0, 1});
  const ContactElement g = shear(r, Scalar::one(f2));
  v.require(verify_equivalence_witness(f, pt(f2, {0, 0, 0}), a, g), "witness rejected");
  for (unsigned bw = 3; bw <= 5; ++bw) {
    v.require(std::holds_alternative<Infeasible>(solve_log_derivation(f, a, bw)),
              "log derivation feasible at beta_work " + std::to_string(bw));
    try {
      v.require(check_certificate(inseparability_certificate(f, a, g, bw)),
                "certificate fails its check at beta_work " + std::to_string(bw));
    } catch (const Error& e) {
      v.require(false, e.what());
    }
  }
  v.detail << "Infeasible and certified at beta_work 3, 4, 5";
}

void umbrella_hs(Verdict& v) {
  const FieldSpec f2 = FieldSpec::prime(2);
  const RingSpec r(3, 3, f2);
  const PolySystem w = sys(r, "x^2+y^2*z");
  const auto first = hs_search(w, 2, 2, HSMode::regular);
  const auto second = hs_search(w, 2, 2, HSMode::regular);
  v.require(!first.witness, "regular HS derivation found");
  v.require(first.nodes == second.nodes, "node count not deterministic");

  // Level 1: residue y^2 z1. Level 2 (z1 = 0): x1^2 + y^2 z2 + y1^2 z.
  const auto one = [&](long c) { return TruncPoly::constant(r, Scalar::from_int(f2, c)); };
  std::size_t checked = 0;
  for (long x1 = 0; x1 < 2; ++x1)
    for (long y1 = 0; y1 < 2; ++y1)
      for (long z1 = 0; z1 < 2; ++z1)
        for (long z2 = 0; z2 < 2; ++z2) {
          HSDerivation d = HSDerivation::zero(r, 2);
          d.images[0] = {one(x1), one(y1), one(z1)};
          d.images[1] = {TruncPoly(r), TruncPoly(r), one(z2)};
          const auto rep = hs_verify(w, d, 2);
          TruncPoly expect = z1 ? P(r, "y^2")
                                : one(x1 * x1) + P(r, "y^2").scale(Scalar::from_int(f2, z2)) +
                                      P(r, "z").scale(Scalar::from_int(f2, y1 * y1));
          const unsigned order = z1 ? 1 : 2;
          if (expect.is_zero()) {
            v.require(rep.ok, "unexpected violation");
          } else {
            v.require(!rep.ok && rep.violation->t_order == order && rep.violation->residue == expect.change_beta(rep.violation->residue.spec()),
                      "residue differs from the level constraint");
          }
          ++checked;
        }
  v.detail << "Exhausted, nodes = " << first.nodes << ", free unknowns per level = " << first.unknowns[1] << "+"
           << first.unknowns[2] << "; " << checked << " candidate residues match";
}

void char0_split(Verdict& v) {
  const FieldSpec q = FieldSpec::rationals();
  const RingSpec r(3, 4, q);
  const PolySystem f = sys(r, "(x+z^2)^2+y^2");
  const Derivation d{r, {P(r, "-2*z"), P(r, "0"), P(r, "1")}, {{P(r, "0")}}};
  const SplitResult s = straighten_and_split(f, d);
  v.require(check_split(f, d, s), "split check failed");
  const RingSpec lower = r.with_beta(r.beta() - 1);
  v.require(ideal_span(s.residual.change_beta(lower)) == ideal_span(sys(lower, "x^2+y^2")),
            "residual ideal differs from (x^2 + y^2)");
  v.detail << "g = " << s.residual[0].to_string() << " after psi_x = " << s.psi[0].to_string();
}

void cross_ratio_rigidity(Verdict& v) {
  const FieldSpec q = FieldSpec::rationals();
  const RingSpec r(3, 5, q);
  const PolySystem f = sys(r, "x*y*(x+y)*(x+z*y)");
  // Lines x = 0, y = 0, x = -y, x = -a y have slopes 0, infinity, -1, -a,
  // cross-ratio a, so j = 256 (a^2 - a + 1)^3 / (a^2 (a - 1)^2).
  const auto by_hand = [](long a) {
    mpq_class n = a * a - a + 1;
    return mpq_class(256 * n * n * n / mpq_class(a * a * (a - 1) * (a - 1)));
  };
  for (long a : {2L, 3L}) {
    const Scalar j = quartic_j_invariant(tangent_cone(taylor_shift(f, pt(q, {0, 0, a}))[0]));
    v.require(j == Scalar::from_rational(q, by_hand(a)), "j mismatch at a = " + std::to_string(a));
    v.detail << "j(0,0," << a << ") = " << j.to_string() << " ";
  }
  v.require(by_hand(2) == 1728 && by_hand(3) == mpq_class(21952, 9), "hand values");
}

void umbrella_scan(Verdict& v) {
  const FieldSpec f2 = FieldSpec::prime(2);
  const RingSpec r(3, 3, f2);
  const PolySystem w = sys(r, "x^2+y^2*z");
  const ScanReport rep = classify(w, enumerate_points(w, FiniteDomain{}));
  v.require(rep.points.size() == 4, "expected 4 points");
  v.require(rep.classes == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}}, "unexpected partition");
  v.require(!rep.points[0].smooth && !rep.points[1].smooth && rep.points[2].smooth && rep.points[3].smooth,
            "smoothness flags");
  v.detail << "{(0,0,0),(0,0,1)} singular, {(0,1,0),(1,1,1)} smooth";
}

void separability_contrast(Verdict& v) {
  const FieldSpec f7 = FieldSpec::prime(7), f2 = FieldSpec::prime(2);
  const RingSpec r7(3, 3, f7), r2(3, 3, f2);
  const PolySystem w7 = sys(r7, "x^2+y^2*z"), w2 = sys(r2, "x^2+y^2*z");
  const Subspace s7 = solvable_directions(w7, 3), s2 = solvable_directions(w2, 3);
  v.require(s7.dim() == 0, "F7 solvable directions not {0}");
  v.require(fingerprint(taylor_shift(w7, pt(f7, {0, 0, 0}))) != fingerprint(taylor_shift(w7, pt(f7, {0, 0, 1}))),
            "F7 fingerprints agree");
  v.require(fingerprint(taylor_shift(w2, pt(f2, {0, 0, 0}))) == fingerprint(taylor_shift(w2, pt(f2, {0, 0, 1}))),
            "F2 fingerprints differ");
  v.require(!s2.contains(pt(f2, {0, 0, 1})), "F2 z-direction solvable");
  v.require(s2.dim() == 0, "F2 solvable directions = span of " + std::to_string(s2.dim()) +
                               " vectors (d/dx and d/dy kill x^2 + y^2 z in characteristic 2), not {0}");
  v.detail << "F7: dim " << s7.dim() << "; F2: dim " << s2.dim();
}

std::size_t property_suites(Verdict& v) {
  std::size_t total = 0;
  auto suite = [&](const char* name, std::size_t cases, const std::function<bool(Gen&)>& one, std::uint64_t salt) {
    Gen gen(salt);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < cases; ++i)
      if (!one(gen)) ++bad;
    total += cases;
    v.require(bad == 0, std::string(name) + ": " + std::to_string(bad) + " of " + std::to_string(cases));
    v.detail << name << " " << cases << ", ";
  };
  const std::vector<FieldSpec> fields = {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3),
                                         FieldSpec::prime(5), FieldSpec::parse("F4")};
  auto pick = [&](Gen& g) { return fields[g.uniform(0, fields.size() - 1)]; };
  auto ring = [&](Gen& g, unsigned max_vars, unsigned max_beta) {
    return RingSpec(g.uniform(1, max_vars), static_cast<unsigned>(g.uniform(1, max_beta)), pick(g));
  };

  suite("left action", 500, [&](Gen& g) {
    const RingSpec r = ring(g, 3, 4);
    const std::size_t n = g.uniform(1, 2);
    const auto g1 = random_element(g, r, n), g2 = random_element(g, r, n);
    const auto s = random_system(g, r, n);
    return act(group_mul(g2, g1), s) == act(g2, act(g1, s));
  }, 801);
  suite("invert", 500, [&](Gen& g) {
    const RingSpec r = ring(g, 3, 4);
    const std::size_t n = g.uniform(1, 2);
    const auto e = random_element(g, r, n);
    const auto h = invert(e);
    return group_mul(h, e) == ContactElement::identity(r, n) && group_mul(e, h) == ContactElement::identity(r, n);
  }, 802);
  suite("mather", 500, [&](Gen& g) {
    const FieldSpec k = pick(g);
    const std::size_t n = g.uniform(1, 4);
    Matrix a(k, n, n), b(k, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (g.coin(0.5)) a(i, j) = g.scalar(k);
        if (g.coin(0.4)) b(i, j) = g.scalar(k);
      }
    const Matrix c = mather_complement(a, b);
    return !(c * (Matrix::identity(k, n) - a * b) + b).determinant().is_zero();
  }, 803);
  suite("fingerprint invariance", 500, [&](Gen& g) {
    const RingSpec r = ring(g, 3, 3);
    const std::size_t n = g.uniform(1, 2);
    const auto s = random_system(g, r, n, 1);
    return fingerprint(act(random_element(g, r, n), s)) == fingerprint(s);
  }, 804);
  suite("compose associativity", 500, [&](Gen& g) {
    const RingSpec r = ring(g, 3, 5);
    const TruncPoly f = g.poly(r, 0, 0.4);
    std::vector<TruncPoly> phi, psi, both;
    for (std::size_t i = 0; i < r.nvars(); ++i) {
      phi.push_back(g.poly(r, 1, 0.4));
      psi.push_back(g.poly(r, 1, 0.4));
    }
    for (const auto& p : phi) both.push_back(compose(p, psi));
    return compose(compose(f, phi), psi) == compose(f, both);
  }, 805);
  suite("solvable directions closure", 500, [&](Gen& g) {
    const RingSpec r = ring(g, 3, 3);
    const PolySystem s(r, {g.poly(r, 1, 0.4)});
    const unsigned bw = static_cast<unsigned>(g.uniform(1, r.beta()));
    const Subspace dirs = solvable_directions(s, bw);
    const FieldSpec& k = r.field();
    auto member = [&] {
      Vector m = zero_vector(k, r.nvars());
      for (const auto& b : dirs.basis()) {
        const Scalar c = g.scalar(k);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += c * b[i];
      }
      return m;
    };
    const Vector u = member(), w = member();
    const Scalar a = g.scalar(k), b = g.scalar(k);
    Vector comb(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) comb[i] = a * u[i] + b * w[i];
    bool ok = std::holds_alternative<Derivation>(solve_log_derivation(s, comb, bw));
    const Vector other = g.vector(k, r.nvars());
    ok = ok && (std::holds_alternative<Derivation>(solve_log_derivation(s, other, bw)) == dirs.contains(other));
    return ok;
  }, 806);

  // Exhaustive over every pair of jets in (N=1, beta=2) over F2 and F3.
  std::size_t pairs = 0, bad = 0;
  for (const FieldSpec& k : {FieldSpec::prime(2), FieldSpec::prime(3)}) {
    const RingSpec r(1, 2, k);
    const auto elems = field_elements(k);
    std::vector<PolySystem> jets;
    for (const auto& c0 : elems)
      for (const auto& c1 : elems)
        for (const auto& c2 : elems) jets.push_back(PolySystem(r, {TruncPoly::from_dense(r, {c0, c1, c2})}));
    std::vector<Fingerprint> fps;
    for (const auto& j : jets) fps.push_back(fingerprint(j));
    for (std::size_t i = 0; i < jets.size(); ++i)
      for (std::size_t j = 0; j < jets.size(); ++j, ++pairs)
        if (brute_force_equiv(jets[i], jets[j]) && fps[i] != fps[j]) ++bad;
  }
  total += pairs;
  v.require(bad == 0, "brute force vs fingerprint: " + std::to_string(bad) + " of " + std::to_string(pairs));
  v.detail << "brute-force soundness " << pairs << " pairs";
  return total;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "whitney umbrella equivalence witness", 1, whitney_witness},
      {2, "cusp deformation inseparability", 5, cusp_inseparability},
      {3, "no regular HS derivation for the char-2 umbrella", 60, umbrella_hs},
      {4, "char-0 splitting", 1, char0_split},
      {5, "cross-ratio rigidity", 1, cross_ratio_rigidity},
      {6, "iso-scan of the char-2 umbrella", 1, umbrella_scan},
      {7, "separable vs inseparable contrast", 5, separability_contrast},
      {8, "property suites", 300, [](Verdict& v) { property_suites(v); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("threw ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs <= c.limit_s, "exceeded time limit");
    if (!v.ok) ++failed;
    std::printf("%s criterion %d (%s) [%.3fs]: %s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                v.summary().c_str());
  }
  return failed ? 1 : 0;
}
