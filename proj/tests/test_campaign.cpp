#include <doctest.h>

#include <json.hpp>

#include "glv4/instance_io.hpp"
#include "support.hpp"

using namespace glv4;

namespace {

DecompJob job4(const GlvContext& ctx, BoundKind b = BoundKind::thm3) {
  DecompJob j;
  j.basis = &ctx.basis4;
  j.bound = b;
  j.B4 = bound_constants(1, 1).B4;
  return j;
}

bool same(const DecompReport& a, const DecompReport& b) {
  return a.samples == b.samples && a.violations == b.violations &&
         a.congruence_failures == b.congruence_failures && a.max_part == b.max_part &&
         a.max_ratio == b.max_ratio && a.mean_max_bits == b.mean_max_bits;
}

}  // namespace

TEST_SUITE("campaign") {

TEST_CASE("scalar lists are reproducible") {
  const auto& T = test::p1();
  Rng a(7), b(7);
  auto x = random_scalars(T.n, 50, a), y = random_scalars(T.n, 50, b);
  CHECK(x == y);
  for (const Int& k : x) {
    CHECK(k >= 0);
    CHECK(k < T.n);
  }
  CHECK(random_scalars(T.n, 0, a).empty());
}

TEST_CASE("serial and OpenMP decomposition reports agree") {
  Rng rng(61);
  auto ks = random_scalars(test::p1().n, 500, rng);
  for (BoundKind b : {BoundKind::thm3, BoundKind::thm1}) {
    DecompJob j = job4(test::p1_ctx(), b);
    DecompReport s = decomposition_campaign_serial(j, ks), o = decomposition_campaign_omp(j, ks);
    CHECK(same(s, o));
    CHECK(s.samples == 500);
    CHECK(s.violations == 0);
    CHECK(s.congruence_failures == 0);
  }
  DecompJob j2;
  j2.basis = &test::p1_ctx().basis2;
  j2.bound = BoundKind::kappa;
  j2.rounding = Rounding::best_vertex;
  DecompReport r2 = decomposition_campaign_omp(j2, ks);
  CHECK(r2.violations == 0);
  CHECK(r2.max_ratio < 2.0 / 3);
}

TEST_CASE("empty campaigns") {
  DecompReport r = decomposition_campaign_serial(job4(test::p1_ctx()), {});
  CHECK(r.samples == 0);
  CHECK(r.violations == 0);
  CHECK(r.mean_max_bits == 0);
  MulReport m = mul_campaign_omp(test::p1_ctx(), Mode::glv4, 1, {});
  CHECK(m.samples == 0);
  CHECK(m.mismatches == 0);
}

TEST_CASE("exhaustive toy decomposition") {
  DecompBasis b = cornacchia_zi({3, 2}, 3, 1, 1, 13);
  DecompJob j;
  j.basis = &b;
  j.B4 = 40;
  std::vector<Int> ks;
  for (int k = 0; k < 13; ++k) ks.push_back(k);
  for (BoundKind bk : {BoundKind::thm3, BoundKind::thm1}) {
    j.bound = bk;
    DecompReport r = decomposition_campaign_serial(j, ks);
    CHECK(r.samples == 13);
    CHECK(r.violations == 0);
    CHECK(r.congruence_failures == 0);
  }
}

TEST_CASE("serial and OpenMP multiplication reports agree") {
  Rng rng(62);
  auto ks = random_scalars(test::p1().n, 12, rng);
  for (int cores : {1, 4}) {
    MulReport s = mul_campaign_serial(test::p1_ctx(), Mode::glv4, cores, ks);
    MulReport o = mul_campaign_omp(test::p1_ctx(), Mode::glv4, cores, ks);
    CHECK(s.mismatches == 0);
    CHECK(o.mismatches == 0);
    CHECK(s.ops_sum == o.ops_sum);
    CHECK(s.mean_weighted == o.mean_weighted);
    CHECK(s.dbl_min == o.dbl_min);
    CHECK(s.dbl_max == o.dbl_max);
  }
}

TEST_CASE("Euclid campaign") {
  Rng rng(63);
  EgeaCampaign c = egea_campaign(30, 96, rng);
  CHECK(c.triples == 30);
  CHECK(c.stats.runs >= 60);
  CHECK(c.stats.checks > 0);
  CHECK(c.stats.failures == 0);
  CHECK(c.norm_failures == 0);
  CHECK(c.basis_failures == 0);
}

TEST_CASE("instance files round trip") {
  const auto& T = test::p1();
  std::string text = save_twist(T);
  LoadedInstance li = load_instance(text);
  REQUIRE(li.twist);
  CHECK_FALSE(li.base);
  CHECK(li.twist->n == T.n);
  CHECK(li.twist->lambda == T.lambda);
  CHECK(li.twist->mu == T.mu);
  CHECK(li.twist->P == T.P);
  CHECK(save_twist(*li.twist) == text);

  const auto& B = test::p2();
  LoadedInstance lb = load_instance(save_base(B));
  REQUIRE(lb.base);
  CHECK(lb.base->n == B.n);
  CHECK(lb.base->P == B.P);
}

TEST_CASE("instance file errors") {
  CHECK(parse_kv("# c\n\na=1\nb = 2\n").size() == 2);
  CHECK_THROWS_AS(parse_kv("a=1\na=2\n"), FormatError);
  CHECK_THROWS_AS(parse_kv("justtext\n"), FormatError);
  CHECK_THROWS_AS(load_instance("kind=twist\n"), FormatError);
  std::string text = save_twist(test::p1());
  auto pos = text.find("lambda=");
  REQUIRE(pos != std::string::npos);
  std::string bad = text;
  bad.replace(pos, 8, "lambda=2");  // wrong eigenvalue
  CHECK_THROWS(load_instance(bad));
}

TEST_CASE("points and reports survive JSON") {
  const auto& T = test::p1();
  nlohmann::json j = {{"P", serialize(T.P)}, {"n", to_hex(T.n)}};
  auto back = nlohmann::json::parse(j.dump());
  CHECK(deserialize(T.curve, back["P"].get<std::string>()) == T.P);
  CHECK(from_hex(back["n"].get<std::string>()) == T.n);
  CHECK(deserialize(T.curve, serialize(Affine<Fp2>::infinity())).inf);
}

}  // TEST_SUITE
