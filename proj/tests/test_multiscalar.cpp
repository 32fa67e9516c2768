#include <doctest.h>

#include "support.hpp"

using namespace glv4;

TEST_SUITE("multiscalar") {

TEST_CASE("wNAF examples") {
  CHECK(wnaf_encode(7, 2).digits == std::vector<int>{-1, 0, 0, 1});
  CHECK(wnaf_encode(0, 5).digits.empty());
  CHECK(wnaf_encode(1, 5).digits == std::vector<int>{1});
  CHECK(wnaf_encode(31, 5).digits == std::vector<int>{-1, 0, 0, 0, 0, 1});
  CHECK_THROWS_AS(wnaf_encode(5, 1), PreconditionFailed);
  CHECK_THROWS_AS(wnaf_encode(5, 9), PreconditionFailed);
  CHECK_THROWS_AS(wnaf_encode(-5, 4), PreconditionFailed);
}

TEST_CASE("wNAF properties") {
  Rng rng(51);
  for (int w = 2; w <= 8; ++w) {
    for (int t = 0; t < 200; ++t) {
      Int k = rng.bits(200);
      WnafDigits d = wnaf_encode(k, w);
      CHECK(wnaf_value(d) == k);
      int lim = 1 << (w - 1);
      for (std::size_t j = 0; j < d.digits.size(); ++j) {
        int x = d.digits[j];
        if (x == 0) continue;
        CHECK(x % 2 != 0);
        CHECK(x < lim);
        CHECK(x > -lim);
        // at most one nonzero digit in any w consecutive positions
        for (std::size_t l = j + 1; l < std::min(d.digits.size(), j + std::size_t(w)); ++l)
          CHECK(d.digits[l] == 0);
      }
      if (!d.digits.empty()) CHECK(d.digits.back() != 0);
      CHECK(d.digits.size() <= std::size_t(bitlen(k)) + 1);
    }
  }
}

TEST_CASE("wNAF density is about 1/(w+1)") {
  Rng rng(52);
  std::size_t nz = 0, len = 0;
  for (int t = 0; t < 500; ++t) {
    WnafDigits d = wnaf_encode(rng.bits(256), 5);
    nz += d.nonzero();
    len += d.digits.size();
  }
  CHECK(double(nz) / double(len) == doctest::Approx(1.0 / 6).epsilon(0.12));
}

TEST_CASE("precomputed table") {
  const auto& T = test::p1();
  PrecompTable<Fp2> t = precompute(T.curve, T.P, 5);
  REQUIRE(t.odd.size() == 8);
  CHECK(t.precomputed() == 7);
  for (std::size_t j = 0; j < 8; ++j)
    CHECK(t.odd[j] == scalar_mul_reference(T.curve, Int(2 * j + 1), T.P));
  PrecompTable<Fp2> t2 = precompute(T.curve, T.P, 2);
  CHECK(t2.odd.size() == 1);
  auto mapped = map_table(t, [&](const Affine<Fp2>& P) { return T.Phi(P); });
  for (std::size_t j = 0; j < 8; ++j)
    CHECK(mapped.odd[j] == scalar_mul_reference(T.curve, Int(2 * j + 1), T.Phi(T.P)));
}

TEST_CASE("interleaved multi-scalar multiplication") {
  const auto& T = test::p1();
  const auto& C = T.curve;
  Rng rng(53);
  std::vector<Affine<Fp2>> pts;
  for (int i = 0; i < 4; ++i) pts.push_back(scalar_mul_reference(C, rng.below(T.n), T.P));
  for (int d : {1, 2, 4}) {
    for (int t = 0; t < 5; ++t) {
      std::vector<Int> ks;
      std::vector<Affine<Fp2>> ps;
      Affine<Fp2> want = Affine<Fp2>::infinity();
      for (int i = 0; i < d; ++i) {
        Int k = rng.bits(80) - (Int(1) << 79);
        ks.push_back(k);
        ps.push_back(pts[std::size_t(i)]);
        Affine<Fp2> term = scalar_mul_reference(C, abs(k), pts[std::size_t(i)]);
        want = affine_add(C, want, k < 0 ? neg(term) : term);
      }
      CHECK(msm_interleaved(C, ks, ps) == want);
    }
  }
  CHECK(msm_interleaved(C, {Int(0), Int(0)}, {pts[0], pts[1]}).inf);
  // P - P
  CHECK(msm_interleaved(C, {Int(5), Int(-5)}, {pts[0], pts[0]}).inf);
  CHECK_THROWS_AS(msm_interleaved(C, {1, 2, 3}, {pts[0], pts[1], pts[2]}), DimensionMismatch);
  CHECK_THROWS_AS(msm_interleaved(C, {1, 2}, {pts[0]}), DimensionMismatch);
}

TEST_CASE("mode and method names") {
  CHECK(parse_mode("non-glv") == Mode::non_glv);
  CHECK(parse_mode("glv4") == Mode::glv4);
  CHECK(std::string(mode_name(Mode::glv2)) == "glv2");
  CHECK(mode_dim(Mode::glv4) == 4);
  CHECK(parse_method("lll") == Method::lll);
  CHECK(std::string(method_name(Method::cornacchia)) == "cornacchia");
}

TEST_CASE("GLV multiplication matches the reference") {
  const auto& T = test::p1();
  Rng rng(54);
  for (const GlvContext* ctx : {&test::p1_ctx(), &test::p1_lll_ctx()}) {
    for (Mode m : {Mode::non_glv, Mode::glv2, Mode::glv4}) {
      for (int t = 0; t < 8; ++t) {
        Int k = rng.below(T.n);
        Affine<Fp2> want = scalar_mul_reference(T.curve, k, T.P);
        CHECK(glv_multiply(k, *ctx, m).point == want);
        CHECK(glv_multiply(k, *ctx, m, mode_dim(m)).point == want);
      }
    }
  }
  CHECK_THROWS_AS(glv_multiply(5, test::p1_ctx(), Mode::glv4, 3), PreconditionFailed);
}

TEST_CASE("edge scalars") {
  const auto& T = test::p1();
  const auto& ctx = test::p1_ctx();
  for (Mode m : {Mode::non_glv, Mode::glv2, Mode::glv4}) {
    MulResult z = glv_multiply(0, ctx, m);
    CHECK(z.point.inf);
    CHECK(z.ops == OpCounter{});
    CHECK(glv_multiply(T.n, ctx, m).point.inf);
    CHECK(glv_multiply(1, ctx, m).point == T.P);
    CHECK(glv_multiply(T.n - 1, ctx, m).point == neg(T.P));
    CHECK(glv_multiply(T.n + 2, ctx, m).point == affine_dbl(T.curve, T.P));
    CHECK(glv_multiply(T.lambda, ctx, m).point == T.Phi(T.P));
  }
}

TEST_CASE("operation counts follow the doubling schedule") {
  const auto& T = test::p1();
  const auto& ctx = test::p1_ctx();
  Rng rng(55);
  const std::uint64_t want[3] = {254, 127, 64};
  for (Mode m : {Mode::non_glv, Mode::glv2, Mode::glv4}) {
    for (int t = 0; t < 10; ++t) {
      MulResult r = glv_multiply(rng.below(T.n), ctx, m);
      std::uint64_t dbl = r.chain.dbl, w = want[int(m)];
      CHECK(dbl + 1 >= w);
      CHECK(dbl <= w + 1);
    }
  }
}

TEST_CASE("4-GLV single core") {
  const auto& T = test::p1();
  const auto& ctx = test::p1_ctx();
  Rng rng(56);
  double madd = 0;
  const int N = 100;
  for (int t = 0; t < N; ++t) {
    MulResult r = glv_multiply(rng.below(T.n), ctx, Mode::glv4);
    CHECK(r.endo_maps == 3);
    CHECK(r.ops == r.total);
    CHECK(r.ops.i == 2);
    madd += double(r.chain.madd);
  }
  madd /= N;
  CHECK(madd >= 45.5 * 0.9);
  CHECK(madd <= 45.5 * 1.1);
}

TEST_CASE("split-core runs") {
  const auto& T = test::p1();
  const auto& ctx = test::p1_ctx();
  Rng rng(57);
  for (int t = 0; t < 5; ++t) {
    Int k = rng.below(T.n);
    MulResult one = glv_multiply(k, ctx, Mode::glv4, 1);
    MulResult four = glv_multiply(k, ctx, Mode::glv4, 4);
    MulResult omp = glv_multiply(k, ctx, Mode::glv4, 4, true);
    CHECK(four.point == one.point);
    CHECK(omp.point == one.point);
    CHECK(omp.ops == four.ops);
    CHECK(omp.total == four.total);
    CHECK(four.cores == 4);
    CHECK(weighted_ext(four.ops) < weighted_ext(one.ops));
    CHECK(weighted_ext(four.total) > weighted_ext(four.ops));
  }
}

TEST_CASE("F_p 2-GLV on the comparison curve") {
  const auto& B = test::p2();
  BaseGlvContext ctx = BaseGlvContext::make(B);
  CHECK(ctx.positions() == 129);
  Rng rng(58);
  for (int t = 0; t < 10; ++t) {
    Int k = rng.below(B.n);
    Affine<Fp> want = scalar_mul_reference(B.curve, k, B.P);
    BaseMulResult r1 = glv2_base_multiply(k, ctx, 1);
    BaseMulResult r2 = glv2_base_multiply(k, ctx, 2);
    BaseMulResult rp = glv2_base_multiply(k, ctx, 2, true);
    CHECK(r1.point == want);
    CHECK(r2.point == want);
    CHECK(rp.point == want);
    CHECK(rp.ops == r2.ops);
    CHECK(r1.ops.I == 1);
    CHECK(r1.ops.m == 0);
    CHECK(weighted_base(r2.ops) < weighted_base(r1.ops));
  }
  CHECK(glv2_base_multiply(0, ctx).point.inf);
  CHECK_THROWS_AS(glv2_base_multiply(3, ctx, 4), PreconditionFailed);
}

TEST_CASE("F_p 2-GLV needs a linear endomorphism") {
  Rng rng(59);
  for (const Int& p : test::admissible_primes(Family::E3, 100003, 30)) {
    try {
      BaseInstance b = make_base_instance(catalog_get(Family::E3, p), rng);
      CHECK_THROWS_AS(BaseGlvContext::make(b), UnsupportedFamily);
      return;
    } catch (const NoLargePrimeSubgroup&) {
    }
  }
  FAIL("no E3 base instance found");
}

}  // TEST_SUITE
