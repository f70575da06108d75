#include <doctest.h>

#include "isojet/scalar.hpp"
#include "support.hpp"

using namespace isojet;
using isojet::testing::Gen;

TEST_CASE("rational arithmetic") {
  const FieldSpec q = FieldSpec::rationals();
  auto a = Scalar::parse(q, "1/2");
  auto b = Scalar::parse(q, "1/3");
  CHECK((a + b).to_string() == "5/6");
  CHECK((a - b).to_string() == "1/6");
  CHECK((a / b).to_string() == "3/2");
  CHECK(Scalar::parse(q, "4/6").to_string() == "2/3");
  CHECK(Scalar::parse(q, "-3").to_string() == "-3");
  CHECK_THROWS_AS(a / Scalar::zero(q), Error);
}

TEST_CASE("characteristic two") {
  const FieldSpec f2 = FieldSpec::parse("F2");
  CHECK((Scalar::one(f2) + Scalar::one(f2)).is_zero());
  CHECK(f2.characteristic() == 2);
  CHECK(f2.degree() == 1);
}

TEST_CASE("F4 multiplication follows the modulus") {
  const FieldSpec f4 = FieldSpec::parse("F4[g^2+g+1]");
  CHECK(f4 == FieldSpec::parse("F4"));
  const Scalar g = Scalar::generator(f4);
  CHECK((g * g).to_string() == "g+1");
  CHECK((g * g) == Scalar::parse(f4, "g+1"));
  CHECK(f4.name() == "F4[g^2+g+1]");
}

TEST_CASE("field parsing and validation") {
  CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
  CHECK(FieldSpec::parse("F7").order() == 7);
  CHECK(FieldSpec::parse("F9").order() == 9);
  CHECK(FieldSpec::parse("F25").order() == 25);
  CHECK(FieldSpec::parse("F27").order() == 27);
  CHECK(FieldSpec::parse("F8").order() == 8);
  CHECK_THROWS_AS(FieldSpec::parse("F6"), Error);
  CHECK_THROWS_AS(FieldSpec::parse("F16"), Error);      // no built-in modulus
  CHECK_THROWS_AS(FieldSpec::parse("F4[g^2+1]"), Error);  // (g+1)^2 over F2
  CHECK_THROWS_AS(FieldSpec::parse("F9[g^2+2]"), Error);  // g^2 - 1 splits over F3
  CHECK(FieldSpec::parse("F16[g^4+g+1]").order() == 16);
}

TEST_CASE("mismatched fields are rejected") {
  const Scalar a = Scalar::one(FieldSpec::prime(3));
  const Scalar b = Scalar::one(FieldSpec::prime(5));
  try {
    (void)(a + b);
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FieldMismatch);
  }
}

TEST_CASE("pth_root examples") {
  const FieldSpec f2 = FieldSpec::prime(2);
  CHECK(Scalar::one(f2).pth_root().is_one());

  const FieldSpec f4 = FieldSpec::parse("F4");
  const Scalar g = Scalar::generator(f4);
  const Scalar s = g.pth_root();
  CHECK(s == Scalar::parse(f4, "g+1"));
  CHECK(s * s == g);

  const FieldSpec f7 = FieldSpec::prime(7);
  CHECK(Scalar::from_int(f7, 3).pth_root() == Scalar::from_int(f7, 3));

  try {
    (void)Scalar::one(FieldSpec::rationals()).pth_root();
    FAIL("expected NotSupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSupported);
  }
}

TEST_CASE("field axioms on random samples") {
  Gen gen(1);
  for (const char* name : {"Q", "F2", "F7", "F4", "F9", "F27", "F25"}) {
    const FieldSpec f = FieldSpec::parse(name);
    for (int i = 0; i < 200; ++i) {
      const Scalar a = gen.scalar(f), b = gen.scalar(f), c = gen.scalar(f);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK((a - a).is_zero());
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
  }
}

TEST_CASE("pth_root inverts Frobenius and is a field automorphism") {
  Gen gen(2);
  for (const char* name : {"F2", "F3", "F4", "F8", "F9", "F25", "F27"}) {
    const FieldSpec f = FieldSpec::parse(name);
    const auto p = f.characteristic();
    for (int i = 0; i < 100; ++i) {
      const Scalar a = gen.scalar(f), b = gen.scalar(f);
      CHECK(a.pth_root().pow(p) == a);
      CHECK((a + b).pth_root() == a.pth_root() + b.pth_root());
      CHECK((a * b).pth_root() == a.pth_root() * b.pth_root());
    }
  }
}

TEST_CASE("canonical scalar text round-trips") {
  Gen gen(3);
  for (const char* name : {"Q", "F5", "F4", "F9", "F27"}) {
    const FieldSpec f = FieldSpec::parse(name);
    for (int i = 0; i < 100; ++i) {
      const Scalar a = gen.scalar(f);
      CHECK(Scalar::parse(f, a.to_string()) == a);
    }
  }
  for (const char* name : {"Q", "F7", "F4[g^2+g+1]", "F27[g^3+2*g+1]"}) {
    const FieldSpec f = FieldSpec::parse(name);
    CHECK(FieldSpec::parse(f.name()) == f);
  }
}
