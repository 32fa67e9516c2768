#include <doctest.h>

#include "support.hpp"

using namespace glv4;

TEST_SUITE("arith") {

TEST_CASE("integers: hex, rounding, roots") {
  CHECK(to_hex(Int(255)) == "ff");
  CHECK(to_hex(Int(-26)) == "-1a");
  CHECK(from_hex("0xFF") == 255);
  CHECK(from_hex("-1a") == -26);
  CHECK_THROWS_AS(from_hex("xyz"), FormatError);
  CHECK(to_hex_padded(Int(5), 2) == "0005");
  CHECK_THROWS_AS(to_hex_padded(Int(70000), 2), FormatError);
  CHECK(round_div(3, 2) == 2);
  CHECK(round_div(-3, 2) == -1);
  CHECK(round_div(-5, 2) == -2);
  CHECK(round_div(7, -2) == -3);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(bitlen(Int(0)) == 0);
  CHECK(bitlen(Int(-8)) == 4);
  auto r = sqrt_mod(Int(12), Int(13));
  REQUIRE(r);
  CHECK(mod(*r * *r, 13) == 12);
  CHECK_FALSE(sqrt_mod(Int(2), Int(13)));
  CHECK(legendre(2, 13) == -1);
  CHECK(invmod(2, 13) == 7);
  CHECK_THROWS_AS(invmod(13, 13), DivisionByZero);
}

TEST_CASE("F_13 examples") {
  auto F = PrimeField::make(13);
  const PrimeField* f = F.get();
  Fp five(f, 5), eight(f, 8), x(f, 11);
  CHECK(fp_mul(five, eight).value() == 1);
  CHECK(fp_mul(Fp::zero(f), x).is_zero());
  CHECK(fp_inv(Fp::one(f)).is_one());
  CHECK_THROWS_AS(fp_inv(Fp::zero(f)), DivisionByZero);
  CHECK(fp_sub(five, eight).value() == 10);
  CHECK(fp_add(eight, eight).value() == 3);
  CHECK(Fp(f, -1).value() == 12);
  CHECK(five.halve().value() == 9);
  CHECK_THROWS_AS(PrimeField::make(15), InvalidField);
  CHECK_THROWS_AS(PrimeField::make(2), InvalidField);
}

TEST_CASE("each F_p operation books one unit") {
  auto F = PrimeField::make(101);
  Fp x(F.get(), 7), y(F.get(), 9);
  OpCounter c;
  {
    CountingScope scope(&c);
    (void)fp_add(x, y);
    (void)fp_sub(x, y);
    (void)fp_mul(x, y);
    (void)fp_sqr(x);
    (void)fp_inv(x);
  }
  CHECK(c.A == 2);
  CHECK(c.M == 1);
  CHECK(c.S == 1);
  CHECK(c.I == 1);
  CHECK(c.m + c.s + c.a + c.i == 0);
}

TEST_CASE("context mismatch") {
  auto F = PrimeField::make(13), G = PrimeField::make(17);
  CHECK_THROWS_AS(Fp(F.get(), 1) + Fp(G.get(), 1), ContextMismatch);
  auto E = QuadExt::make(F), H = QuadExt::make(G);
  CHECK_THROWS_AS(Fp2(E.get(), 1, 1) * Fp2(H.get(), 1, 1), ContextMismatch);
}

TEST_CASE("non-residue choice") {
  CHECK(QuadExt::make(PrimeField::make(19))->beta_is_minus_one());
  auto e13 = QuadExt::make(PrimeField::make(13));
  CHECK(e13->beta_int() == 2);
  CHECK_THROWS_AS(QuadExt::make(PrimeField::make(13), Int(-1)), InvalidField);
  CHECK_THROWS_AS(QuadExt::make(PrimeField::make(13), Int(3)), InvalidField);
}

TEST_CASE("F_13[i] examples in the split ring") {
  auto F = PrimeField::make(13);
  auto R = QuadExt::make_ring(F, Int(-1));
  const QuadExt* e = R.get();
  Fp2 a(e, 2, 3), b(e, 4, 5), c(e, 7, 11);
  Fp2 ab = fp2_mul(a, b);
  CHECK(ab.re().value() == 6);
  CHECK(ab.im().value() == 9);
  CHECK(fp2_mul(Fp2(e, 1, 0), c) == c);
  Fp2 i(e, 0, 1);
  CHECK(fp2_sqr(i) == Fp2(e, -1, 0));
  CHECK_THROWS_AS(fp2_inv(Fp2(e, 3, 2)), DivisionByZero);
  CHECK(fp2_inv(Fp2(e, 2, 0)) == Fp2(e, 7, 0));
  CHECK(fp2_inv(Fp2(e, 1, 0)).is_one());
  CHECK_THROWS_AS(fp2_inv(Fp2(e, 0, 0)), DivisionByZero);
}

TEST_CASE("F_{p^2} tallies") {
  const auto& T = test::p1();
  const QuadExt* e = T.ext.get();
  Fp2 x(e, 123456789, 987654321), y(e, 555, 777);
  OpCounter c;
  {
    CountingScope scope(&c);
    (void)fp2_mul(x, y);
  }
  CHECK(c.m == 1);
  CHECK(c.M == 3);
  CHECK(c.A == 5);
  c.reset();
  {
    CountingScope scope(&c);
    (void)fp2_sqr(x);
  }
  CHECK(c.s == 1);
  CHECK(c.M == 2);
  CHECK(c.A == 3);
  c.reset();
  {
    CountingScope scope(&c);
    (void)(x + y);
    (void)x.conj();
    (void)-x;
  }
  CHECK(c.a == 3);
  c.reset();
  {
    CountingScope scope(&c);
    (void)fp2_inv(x);
  }
  CHECK(c.i == 1);
  CHECK(c.I == 1);
}

TEST_CASE("counter conservation and scopes") {
  const auto& T = test::p1();
  const QuadExt* e = T.ext.get();
  Fp2 x(e, 3, 4), y(e, 5, 6);
  OpCounter whole, part1, part2;
  {
    CountingScope scope(&whole);
    Fp2 z = x * y + x.sqr();
    (void)(z * z);
  }
  {
    CountingScope scope(&part1);
    Fp2 z = x * y + x.sqr();
    CountingScope inner(&part2);
    (void)(z * z);
  }
  CHECK(whole == part1 + part2);
  CHECK(whole - part2 == part1);
  OpCounter outer;
  {
    CountingScope scope(&outer);
    {
      Uncounted quiet;
      (void)(x * y);
    }
    (void)(x + y);
  }
  CHECK(outer.m == 0);
  CHECK(outer.a == 1);
  CHECK(active_counter() == nullptr);
}

TEST_CASE("field axioms on random samples") {
  const auto& T = test::p1();
  Rng rng(11);
  Fp2 like = T.u;
  for (int t = 0; t < 1000; ++t) {
    Fp2 a = random_like(like, rng), b = random_like(like, rng), c = random_like(like, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a.sqr() == a * a);
    CHECK(a.dbl().halve() == a);
    if (!a.is_zero()) CHECK((a * a.inv()).is_one());
  }
  auto F = PrimeField::make(1000003);
  for (int t = 0; t < 1000; ++t) {
    Fp a = random_like(Fp::one(F.get()), rng);
    if (!a.is_zero()) CHECK((a * a.inv()).is_one());
  }
}

TEST_CASE("Frobenius") {
  const auto& T = test::p1();
  Rng rng(12);
  const Int& p = T.p();
  for (int t = 0; t < 20; ++t) {
    Fp2 x = random_like(T.u, rng);
    CHECK(x.pow(p * p) == x);
    CHECK(x.pow(p) == x.conj());
    Fp2 base(T.ext.get(), rng.below(p), 0);
    CHECK(base.pow(p) == base);
  }
}

TEST_CASE("square roots") {
  const auto& T = test::p1();
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    Fp2 x = random_like(T.u, rng);
    Fp2 sq = x.sqr();
    CHECK(sq.is_square());
    auto r = sq.sqrt();
    REQUIRE(r);
    CHECK(r->sqr() == sq);
  }
  CHECK_FALSE(T.u.is_square());
}

}  // TEST_SUITE
