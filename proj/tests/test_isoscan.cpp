#include <doctest.h>

#include <algorithm>
#include <set>

#include "isojet/isoscan.hpp"
#include "support.hpp"

using namespace isojet;
using isojet::testing::Gen;
using isojet::testing::P;

namespace {

Vector pt(const FieldSpec& f, std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.push_back(Scalar::from_int(f, x));
  return v;
}

PolySystem sys(const RingSpec& r, const std::string& text) { return PolySystem(r, {P(r, text)}); }

/// Every element of O_{N,beta} over a small finite field.
std::vector<PolySystem> jet_space(const RingSpec& r) {
  const auto elems = field_elements(r.field());
  std::vector<PolySystem> out;
  std::vector<std::size_t> digit(r.dim(), 0);
  for (;;) {
    Vector v;
    for (auto d : digit) v.push_back(elems[d]);
    out.emplace_back(r, std::vector<TruncPoly>{TruncPoly::from_dense(r, v)});
    std::size_t i = digit.size();
    while (i > 0 && ++digit[i - 1] == elems.size()) digit[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::vector<std::set<std::size_t>> class_sets(const ScanReport& rep) {
  std::vector<std::set<std::size_t>> out;
  for (const auto& c : rep.classes) out.emplace_back(c.begin(), c.end());
  return out;
}

}  // namespace

TEST_CASE("enumerate_points examples") {
  const FieldSpec f2 = FieldSpec::prime(2);
  const RingSpec r(3, 3, f2);
  const auto pts = enumerate_points(sys(r, "x^2+y^2*z"), FiniteDomain{});
  CHECK(pts == std::vector<Vector>{pt(f2, {0, 0, 0}), pt(f2, {0, 0, 1}), pt(f2, {0, 1, 0}), pt(f2, {1, 1, 1})});

  const FieldSpec f3 = FieldSpec::prime(3);
  const RingSpec line(1, 2, f3);
  CHECK(enumerate_points(sys(line, "x"), FiniteDomain{}) == std::vector<Vector>{pt(f3, {0})});

  const RingSpec q(1, 2, FieldSpec::rationals());
  CHECK(enumerate_points(sys(q, "x^2+1"), RationalBox{-2, 2, 3}).empty());
  const auto halves = enumerate_points(sys(q, "4*x^2-1"), RationalBox{-1, 1, 2});
  CHECK(halves.size() == 2);

  const RingSpec big(5, 2, FieldSpec::prime(17));
  CHECK_THROWS_AS(enumerate_points(sys(big, "x"), FiniteDomain{}), Error);
  CHECK_THROWS_AS(enumerate_points(sys(q, "x"), RationalBox{-1000, 1000, 1000}), Error);
  CHECK_THROWS_AS(enumerate_points(sys(q, "x"), FiniteDomain{}), Error);
}

TEST_CASE("classify examples") {
  const FieldSpec f2 = FieldSpec::prime(2);
  const RingSpec r(3, 3, f2);
  const PolySystem w = sys(r, "x^2+y^2*z");
  const auto rep = classify(w, enumerate_points(w, FiniteDomain{}));
  REQUIRE(rep.classes.size() == 2);
  CHECK(rep.classes[0] == std::vector<std::size_t>{0, 1});
  CHECK(rep.classes[1] == std::vector<std::size_t>{2, 3});
  CHECK(!rep.points[0].smooth);
  CHECK(!rep.points[1].smooth);
  CHECK(rep.points[2].smooth);
  CHECK(rep.points[3].smooth);

  const FieldSpec f7 = FieldSpec::prime(7);
  const RingSpec r7(3, 3, f7);
  const PolySystem w7 = sys(r7, "x^2+y^2*z");
  const auto axis = classify(w7, {pt(f7, {0, 0, 0}), pt(f7, {0, 0, 1}), pt(f7, {0, 0, 3})});
  CHECK(axis.points[0].fingerprint != axis.points[1].fingerprint);
  CHECK(axis.points[1].fingerprint == axis.points[2].fingerprint);
  CHECK(axis.classes.size() == 2);

  const FieldSpec f5 = FieldSpec::prime(5);
  const RingSpec r5(2, 4, f5);
  const PolySystem parabola = sys(r5, "x-y^2");
  const auto smooth = classify(parabola, enumerate_points(parabola, FiniteDomain{}));
  CHECK(smooth.points.size() == 5);
  CHECK(smooth.classes.size() == 1);
  for (const auto& p : smooth.points) CHECK(p.smooth);

  CHECK_THROWS_AS(classify(w, {pt(f2, {1, 0, 0})}), Error);
}

TEST_CASE("classification does not depend on the thread count") {
  const FieldSpec f3 = FieldSpec::prime(3);
  const RingSpec r(3, 4, f3);
  const PolySystem f = sys(r, "x^2+y^2*z+x*y*z");
  const auto pts = enumerate_points(f, FiniteDomain{});
  const auto one = classify(f, pts, 1), many = classify(f, pts, 4);
  CHECK(one.classes == many.classes);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(one.points[i].fingerprint == many.points[i].fingerprint);
}

TEST_CASE("j-invariant column on the cross-ratio family") {
  const FieldSpec q = FieldSpec::rationals();
  const RingSpec r(3, 5, q);
  const PolySystem f = sys(r, "x*y*(x+y)*(x+z*y)");
  const auto rep = classify(f, {pt(q, {0, 0, 2}), pt(q, {0, 0, 3}), pt(q, {0, 0, 1}), pt(q, {1, 0, 0})});
  REQUIRE(rep.points[0].j_invariant);
  REQUIRE(rep.points[1].j_invariant);
  CHECK(*rep.points[0].j_invariant == Scalar::from_int(q, 1728));
  CHECK(*rep.points[1].j_invariant == Scalar::parse(q, "21952/9"));
  CHECK(rep.points[2].j_status == "repeated-roots");
  CHECK(rep.points[3].j_status == "not-quartic");
}

TEST_CASE("brute_force_equiv examples") {
  const FieldSpec f2 = FieldSpec::prime(2);
  const RingSpec r(1, 2, f2);
  CHECK(brute_force_equiv(sys(r, "x^2"), sys(r, "x^2")));
  CHECK(!brute_force_equiv(sys(r, "x^2"), sys(r, "x")));
  const PolySystem cubic(r, {parse_poly("x^2+x^3", r, true)});
  CHECK(brute_force_equiv(sys(r, "x^2"), cubic));

  const RingSpec wide(3, 2, f2);
  CHECK_THROWS_AS(brute_force_equiv(sys(wide, "x"), sys(wide, "x")), Error);
  const RingSpec f5(1, 2, FieldSpec::prime(5));
  CHECK_THROWS_AS(brute_force_equiv(sys(f5, "x"), sys(f5, "x")), Error);
}

TEST_CASE("exhaustive equivalence is an equivalence relation with sound fingerprints") {
  for (const char* name : {"F2", "F3"}) {
    const RingSpec r(1, 2, FieldSpec::parse(name));
    const auto jets = jet_space(r);
    const std::size_t n = jets.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto w = brute_force_witness(jets[i], jets[j]);
        rel[i][j] = w.has_value();
        if (w) {
          CHECK(w->is_valid());
          CHECK(act(*w, jets[i]) == jets[j]);
          CHECK(fingerprint(jets[i]) == fingerprint(jets[j]));
        }
      }
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(rel[i][i]);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(rel[i][j] == rel[j][i]);
        for (std::size_t k = 0; k < n; ++k)
          if (rel[i][j] && rel[j][k]) CHECK(rel[i][k]);
      }
    }
  }
}

TEST_CASE("exhaustive witnesses in two variables") {
  Gen gen(80);
  const RingSpec r(2, 2, FieldSpec::prime(2));
  for (int t = 0; t < 40; ++t) {
    const PolySystem f(r, {gen.poly(r, 0, 0.5)});
    ContactElement g(r, {{gen.unit(r)}}, {});
    std::vector<TruncPoly> phi;
    do {
      phi = {gen.poly(r, 1, 0.5), gen.poly(r, 1, 0.5)};
    } while (linear_part(phi, r).determinant().is_zero());
    g = ContactElement(r, g.matrix(), phi);
    const PolySystem h = act(g, f);
    const auto w = brute_force_witness(f, h);
    REQUIRE(w);
    CHECK(act(*w, f) == h);
    CHECK(fingerprint(f) == fingerprint(h));
  }
}

TEST_CASE("classification is shift-consistent") {
  Gen gen(81);
  for (const char* name : {"F2", "F3"}) {
    const FieldSpec k = FieldSpec::parse(name);
    for (int t = 0; t < 15; ++t) {
      const RingSpec r(gen.uniform(1, 3), 4, k);
      const PolySystem f(r, {gen.poly(r.with_beta(2), 0, 0.3).change_beta(r)});
      const Vector c = gen.vector(k, r.nvars());
      const PolySystem g = taylor_shift(f, c);
      const auto pf = enumerate_points(f, FiniteDomain{});
      auto pg = enumerate_points(g, FiniteDomain{});
      REQUIRE(pf.size() == pg.size());
      std::vector<Vector> moved;
      for (const auto& a : pf) {
        Vector b = a;
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= c[i];
        moved.push_back(b);
      }
      // Classify f at pf and g at the translated points in the same order.
      const auto rf = classify(f, pf, 1), rg = classify(g, moved, 1);
      CHECK(rf.classes == rg.classes);
      for (std::size_t i = 0; i < pf.size(); ++i) CHECK(rf.points[i].fingerprint == rg.points[i].fingerprint);
      std::sort(moved.begin(), moved.end(), [](const Vector& a, const Vector& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
      });
      CHECK(moved == pg);
    }
  }
}

TEST_CASE("certified witnesses keep points in one class") {
  const FieldSpec f2 = FieldSpec::prime(2);
  const RingSpec r(3, 3, f2);
  const PolySystem w = sys(r, "x^2+y^2*z");
  const ContactElement g(r, {{P(r, "1")}}, {P(r, "x+y"), P(r, "y"), P(r, "z")});
  const Vector a1 = pt(f2, {0, 0, 0}), a2 = pt(f2, {0, 0, 1});
  REQUIRE(verify_equivalence_witness(w, a1, a2, g));
  const auto rep = classify(w, {a1, a2});
  CHECK(rep.classes.size() == 1);
}

TEST_CASE("equivalence tiers") {
  const FieldSpec f2 = FieldSpec::prime(2);
  const RingSpec r(3, 3, f2);
  const PolySystem w = sys(r, "x^2+y^2*z");
  const PolySystem at0 = taylor_shift(w, pt(f2, {0, 0, 0})), at1 = taylor_shift(w, pt(f2, {0, 0, 1}));
  const ContactElement g(r, {{P(r, "1")}}, {P(r, "x+y"), P(r, "y"), P(r, "z")});
  CHECK(assess_equivalence(at0, at1, g).tier == EquivalenceTier::witnessed);
  const auto cand = assess_equivalence(at0, at1);
  CHECK(cand.tier == EquivalenceTier::candidate);
  CHECK(cand.beta == 3);
  const auto bad = assess_equivalence(at0, at1, ContactElement::identity(r, 1));
  CHECK(bad.tier == EquivalenceTier::candidate);
  CHECK(bad.basis.find("does not carry") != std::string::npos);
  CHECK(assess_equivalence(at0, taylor_shift(w, pt(f2, {0, 1, 0}))).tier == EquivalenceTier::not_equivalent);

  const RingSpec tiny(1, 2, f2);
  const auto ex = assess_equivalence(sys(tiny, "x^2"), sys(tiny, "x^2+x"));
  CHECK(ex.tier == EquivalenceTier::not_equivalent);
  const auto yes = assess_equivalence(sys(tiny, "x"), sys(tiny, "x+x^2"));
  CHECK(yes.tier == EquivalenceTier::exhaustive);
  REQUIRE(yes.witness);
  CHECK(tier_name(yes.tier) == "EXHAUSTIVE");
}

TEST_CASE("default scan beta") {
  const RingSpec r(3, 6, FieldSpec::rationals());
  CHECK(default_scan_beta(sys(r, "x^2+y^2*z")) == 6);
  CHECK(default_scan_beta(sys(r, "0")) == 1);
}
