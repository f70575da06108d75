#include <doctest.h>

#include "isojet/contact.hpp"
#include "support.hpp"

using namespace isojet;
using isojet::testing::Gen;
using isojet::testing::random_element;
using isojet::testing::random_system;
using isojet::testing::P;

namespace {

Vector pt(const FieldSpec& f, std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.push_back(Scalar::from_int(f, x));
  return v;
}

std::vector<TruncPoly> polys(const RingSpec& r, std::initializer_list<const char*> texts) {
  std::vector<TruncPoly> out;
  for (const char* t : texts) out.push_back(P(r, t));
  return out;
}

}  // namespace

TEST_CASE("act examples") {
  const RingSpec f2(3, 3, FieldSpec::prime(2));
  const PolySystem w(f2, {P(f2, "x^2+y^2*z")});
  CHECK(act(ContactElement::identity(f2, 1), w) == w);
  const ContactElement g(f2, poly_identity(f2, 1), polys(f2, {"x+y", "y", "z"}));
  CHECK(act(g, w)[0] == P(f2, "x^2+y^2*(z+1)"));

  const RingSpec q(1, 2, FieldSpec::rationals());
  const ContactElement h(q, {{P(q, "1+x")}}, polys(q, {"x"}));
  CHECK(act(h, PolySystem(q, {P(q, "x")}))[0] == P(q, "x+x^2"));

  CHECK_THROWS_AS(act(h, PolySystem(q, {P(q, "x"), P(q, "x")})), Error);
}

TEST_CASE("group_mul examples") {
  const RingSpec q(1, 2, FieldSpec::rationals());
  const ContactElement g(q, poly_identity(q, 1), polys(q, {"x+x^2"}));
  CHECK(group_mul(ContactElement::identity(q, 1), g) == g);
  const auto gg = group_mul(g, g);
  CHECK(gg.phi()[0] == P(q, "x+2*x^2"));
  CHECK(gg.matrix()[0][0] == P(q, "1"));
}

TEST_CASE("invert examples") {
  const RingSpec q(1, 3, FieldSpec::rationals());
  const ContactElement g(q, poly_identity(q, 1), polys(q, {"x+x^2"}));
  const auto h = invert(g);
  CHECK(h.phi()[0] == P(q, "x-x^2+2*x^3"));
  CHECK(compose(g.phi()[0], h.phi()) == P(q, "x"));
  CHECK(invert(ContactElement::identity(q, 1)) == ContactElement::identity(q, 1));
  try {
    (void)invert(ContactElement(q, poly_identity(q, 1), polys(q, {"x^2"})));
    FAIL("expected SingularJacobian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularJacobian);
  }
  try {
    (void)invert(ContactElement(q, {{P(q, "x")}}, polys(q, {"x"})));
    FAIL("expected NotAUnit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAUnit);
  }
}

TEST_CASE("mather_complement examples") {
  const FieldSpec q;
  const Matrix i2 = Matrix::identity(q, 2), z2(q, 2, 2);
  CHECK(mather_complement(z2, i2) == z2);

  const Matrix z1(q, 1, 1);
  const Matrix c1 = mather_complement(z1, z1);
  CHECK(c1 == Matrix::identity(q, 1));

  Matrix b(q, 2, 2);
  b(0, 0) = Scalar::one(q);
  const Matrix c = mather_complement(i2, b);
  Matrix expect(q, 2, 2);
  expect(1, 1) = Scalar::one(q);
  CHECK(c == expect);
  CHECK(c * (i2 - i2 * b) + b == i2);
}

TEST_CASE("witness_from_cofactors examples") {
  const RingSpec f2(3, 3, FieldSpec::prime(2));
  const PolySystem w(f2, {P(f2, "x^2+y^2*z")});
  const auto phi = polys(f2, {"x+y", "y", "z"});
  const auto one = poly_identity(f2, 1);
  const auto d = witness_from_cofactors(w, pt(f2.field(), {0, 0, 1}), one, one, phi);
  CHECK(d.matrix() == one);
  CHECK(verify_equivalence_witness(w, pt(f2.field(), {0, 0, 0}), pt(f2.field(), {0, 0, 1}), orbit_witness(d)));

  // n = 1 with B a unit: D = B.
  const RingSpec q(1, 3, FieldSpec::rationals());
  const PolySystem fx(q, {P(q, "x")});
  const auto psi = polys(q, {"x+x^2"});
  const PolyMatrix b{{P(q, "1+x")}};
  const PolyMatrix a{{P(q, "1+x").inverse()}};
  CHECK(witness_from_cofactors(fx, pt(q.field(), {0}), a, b, psi).matrix() == b);

  // B singular at the origin: f = (x, x), the Mather branch C != 0 is needed.
  const RingSpec q2(1, 2, FieldSpec::rationals());
  const PolySystem fxx(q2, {P(q2, "x"), P(q2, "x")});
  const auto id = polys(q2, {"x"});
  const PolyMatrix bs{{P(q2, "0"), P(q2, "1")}, {P(q2, "0"), P(q2, "1")}};
  const PolyMatrix as{{P(q2, "1"), P(q2, "0")}, {P(q2, "1"), P(q2, "0")}};
  const auto ds = witness_from_cofactors(fxx, pt(q2.field(), {0}), as, bs, id);
  CHECK(!constant_part(ds.matrix(), q2.field()).determinant().is_zero());
  CHECK(act(ds, fxx) == fxx);

  try {
    (void)witness_from_cofactors(fx, pt(q.field(), {0}), poly_identity(q, 1), b, psi);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionFailed);
  }
}

TEST_CASE("verify_equivalence_witness examples") {
  const RingSpec f2(3, 3, FieldSpec::prime(2));
  const auto zero = pt(f2.field(), {0, 0, 0}), top = pt(f2.field(), {0, 0, 1});
  const ContactElement g(f2, poly_identity(f2, 1), polys(f2, {"x+y", "y", "z"}));
  const PolySystem w(f2, {P(f2, "x^2+y^2*z")});
  CHECK(verify_equivalence_witness(w, zero, zero, ContactElement::identity(f2, 1)));
  CHECK(verify_equivalence_witness(w, zero, top, g));
  CHECK(!verify_equivalence_witness(w, zero, top, ContactElement::identity(f2, 1)));
  const PolySystem cusp(f2, {P(f2, "x^2+y^3+z*y^2")});
  CHECK(verify_equivalence_witness(cusp, zero, top, g));
  try {
    (void)verify_equivalence_witness(w, zero, pt(f2.field(), {1, 0, 0}), g);
    FAIL("expected PointNotOnVariety");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PointNotOnVariety);
  }
}

TEST_CASE("left action law") {
  Gen gen(40);
  for (const char* name : {"F3", "Q", "F4"}) {
    const FieldSpec f = FieldSpec::parse(name);
    for (int t = 0; t < 40; ++t) {
      const RingSpec r(gen.uniform(1, 3), static_cast<unsigned>(gen.uniform(1, 4)), f);
      const std::size_t n = gen.uniform(1, 2);
      const auto g1 = random_element(gen, r, n), g2 = random_element(gen, r, n);
      const auto s = random_system(gen, r, n);
      CHECK(act(group_mul(g2, g1), s) == act(g2, act(g1, s)));
    }
  }
}

TEST_CASE("inverse is two-sided") {
  Gen gen(41);
  for (const char* name : {"F3", "Q", "F2"}) {
    const FieldSpec f = FieldSpec::parse(name);
    for (int t = 0; t < 40; ++t) {
      const RingSpec r(gen.uniform(1, 3), static_cast<unsigned>(gen.uniform(0, 4)), f);
      const std::size_t n = gen.uniform(1, 2);
      const auto g = random_element(gen, r, n);
      const auto h = invert(g);
      CHECK(group_mul(h, g) == ContactElement::identity(r, n));
      CHECK(group_mul(g, h) == ContactElement::identity(r, n));
    }
  }
}

TEST_CASE("action preserves the order filtration") {
  Gen gen(42);
  const FieldSpec f = FieldSpec::parse("F5");
  for (int t = 0; t < 50; ++t) {
    const RingSpec r(gen.uniform(1, 3), static_cast<unsigned>(gen.uniform(1, 4)), f);
    const unsigned d = static_cast<unsigned>(gen.uniform(0, r.beta()));
    const std::size_t n = gen.uniform(1, 3);
    const auto s = random_system(gen, r, n, d);
    const auto moved = act(random_element(gen, r, n), s);
    for (std::size_t i = 0; i < n; ++i) CHECK(moved[i].order() >= d);
  }
}

TEST_CASE("Mather complement is always invertible") {
  Gen gen(43);
  for (const char* name : {"Q", "F2", "F5"}) {
    const FieldSpec f = FieldSpec::parse(name);
    for (std::size_t n = 1; n <= 3; ++n)
      for (int t = 0; t < 1000; ++t) {
        Matrix a(f, n, n), b(f, n, n);
        const double density = gen.coin() ? 0.3 : 0.8;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            if (gen.coin(density)) a(i, j) = gen.scalar(f);
            if (gen.coin(density)) b(i, j) = gen.scalar(f);
          }
        const Matrix c = mather_complement(a, b);
        CHECK(!(c * (Matrix::identity(f, n) - a * b) + b).determinant().is_zero());
      }
  }
}

TEST_CASE("inversion succeeds exactly for nonsingular Jacobians") {
  Gen gen(44);
  const FieldSpec f = FieldSpec::parse("F3");
  for (int t = 0; t < 100; ++t) {
    const RingSpec r(gen.uniform(1, 3), static_cast<unsigned>(gen.uniform(1, 4)), f);
    std::vector<TruncPoly> phi;
    for (std::size_t i = 0; i < r.nvars(); ++i) phi.push_back(gen.poly(r, 1, 0.3));
    const bool nonsingular = !linear_part(phi, r).determinant().is_zero();
    bool inverted = true;
    try {
      const auto psi = invert_automorphism(phi, r);
      for (std::size_t i = 0; i < r.nvars(); ++i) CHECK(compose(phi[i], psi) == TruncPoly::variable(r, i));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SingularJacobian);
      inverted = false;
    }
    CHECK(inverted == nonsingular);
  }
}

TEST_CASE("cofactor witness recovers a random stabilizing unit") {
  Gen gen(45);
  for (const char* name : {"Q", "F3"}) {
    const FieldSpec f = FieldSpec::parse(name);
    for (int t = 0; t < 40; ++t) {
      const RingSpec r(gen.uniform(1, 3), static_cast<unsigned>(gen.uniform(1, 4)), f);
      const std::size_t n = gen.uniform(1, 2);
      const auto s = random_system(gen, r, n, 1);
      // U = 1 + K with K f = 0, so both U and U^{-1} fix f.
      PolyMatrix u = poly_identity(r, n);
      if (n == 1) {
        u[0][0] += TruncPoly::monomial(r, r.var_power(0, r.beta()), gen.scalar(f));
      } else {
        const auto h = gen.poly(r, 0, 0.3);
        u[0][0] += s[1] * h;
        u[0][1] -= s[0] * h;
      }
      REQUIRE(poly_apply(u, s.entries()) == s.entries());
      std::vector<TruncPoly> x;
      for (std::size_t i = 0; i < r.nvars(); ++i) x.push_back(TruncPoly::variable(r, i));
      const auto d = witness_from_cofactors(s, zero_vector(f, r.nvars()), poly_inverse(u), u, x);
      CHECK(d.matrix() == u);
    }
  }
}
