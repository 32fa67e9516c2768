// Runs every acceptance criterion once and prints one line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "support.hpp"

using namespace glv4;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Int random_prime(Rng& rng, int bits, int mod, int res) {
  for (;;) {
    Int n = rng.bits(std::size_t(bits)) | (Int(1) << (bits - 1));
    if (glv4::mod(n, mod) == res && is_probable_prime(n)) return n;
  }
}

// Random (n, lambda, mu) with lambda^2 + lambda + 1 = mu^2 + 1 = 0 mod n.
struct Triple {
  Int n, lam, mu;
};

Triple random_triple(Rng& rng, int bits) {
  Triple t;
  t.n = random_prime(rng, bits, 12, 1);
  auto lr = quadratic_roots(1, 1, t.n);
  t.lam = lr[std::size_t(rng.below(2).get_ui())];
  t.mu = *sqrt_mod(t.n - 1, t.n);
  return t;
}

EgeaStats egea_total;

const int SAMPLES = 10000;

Outcome c1_correctness() {
  Rng rng(101);
  auto ks = random_scalars(test::p1().n, 1000, rng);
  MulReport r = mul_campaign_omp(test::p1_ctx(), Mode::glv4, 1, ks);
  return {r.samples == 1000 && r.mismatches == 0,
          fmt("%.0f scalars, %.0f mismatches", double(r.samples), double(r.mismatches))};
}

DecompJob job(const GlvContext& ctx, BoundKind b) {
  DecompJob j;
  j.basis = &ctx.basis4;
  j.bound = b;
  j.B4 = bound_constants(1, 1).B4;
  return j;
}

Outcome c2_bound103() {
  Rng rng(102);
  auto ks = random_scalars(test::p1().n, SAMPLES, rng);
  DecompReport r = decomposition_campaign_omp(job(test::p1_ctx(), BoundKind::thm3), ks);
  BasisReport b = check_basis(test::p1_ctx().basis4, 1, 1);
  bool ok = r.samples == std::size_t(SAMPLES) && r.violations == 0 &&
            r.congruence_failures == 0 && b.alg_bound_ok;
  return {ok, fmt("violations %.0f, max ratio %.4f, basis rows under 51.5 sqrt(3): %.0f",
                  double(r.violations), r.max_ratio, b.alg_bound_ok)};
}

Outcome c3_bound_lll() {
  Rng rng(103);
  auto ks = random_scalars(test::p1().n, SAMPLES, rng);
  DecompReport r = decomposition_campaign_omp(job(test::p1_lll_ctx(), BoundKind::thm1), ks);
  bool ok = r.samples == std::size_t(SAMPLES) && r.violations == 0 && r.congruence_failures == 0;
  return {ok, fmt("violations %.0f, max ratio %.4f", double(r.violations), r.max_ratio)};
}

Outcome c4_lower_bounds() {
  std::size_t bases = 0, bad = 0;
  auto check = [&](const DecompBasis& b) {
    BasisReport r = check_basis(b, 1, 1);
    ++bases;
    bad += !(r.norm_floor_ok && r.gaussian_floor_ok);
  };
  check(test::p1_ctx().basis4);
  check(test::p1_lll_ctx().basis4);
  Rng rng(104);
  for (int t = 0; t < 100; ++t) {
    Triple tr = random_triple(rng, 48 + t % 80);
    EgeaStats st;
    GaussianInt nu = cornacchia_z(tr.n, tr.mu, &st);
    check(cornacchia_zi(nu, tr.lam, 1, 1, tr.n, &st));
    check(lll_reduce(kernel_basis_raw(tr.n, tr.lam, tr.mu)));
    egea_total += st;
  }
  return {bad == 0, fmt("%.0f bases, %.0f below a floor", double(bases), double(bad))};
}

Outcome c5_cornacchia() {
  Rng rng(105);
  std::size_t bad = 0, small = 0;
  for (int t = 0; t < 200; ++t) {
    int bits = t < 100 ? 8 + t % 12 : 20 + t % 45;
    Int n = random_prime(rng, bits, 4, 1);
    Int mu = *sqrt_mod(n - 1, n);
    EgeaStats st;
    GaussianInt nu = cornacchia_z(n, mu, &st);
    egea_total += st;
    if (nu.norm() != n) ++bad;
    if (n < 1000000) {
      ++small;
      std::set<Int> want;
      for (Int a = 1; a * a < n; ++a) {
        Int b = isqrt(n - a * a);
        if (b * b + a * a == n) want.insert(a);
      }
      if (!want.count(abs(nu.re)) || !want.count(abs(nu.im))) ++bad;
    }
  }
  return {bad == 0, fmt("200 primes, %.0f brute-forced, %.0f failures", double(small), double(bad))};
}

Outcome c6_kernel() {
  Rng rng(106);
  std::size_t bad = 0;
  for (int t = 0; t < 100; ++t) {
    Triple tr = random_triple(rng, 32 + t);
    auto in_kernel = [&](const DecompBasis& b) {
      bool ok = abs(b.det()) == tr.n;
      for (const auto& w : b.v) ok = ok && kernel_eval(w, tr.n, tr.lam, tr.mu) == 0;
      return ok;
    };
    DecompBasis raw = kernel_basis_raw(tr.n, tr.lam, tr.mu);
    DecompBasis red = lll_reduce(raw);
    EgeaStats st;
    DecompBasis cz = cornacchia_zi(cornacchia_z(tr.n, tr.mu, &st), tr.lam, 1, 1, tr.n, &st);
    egea_total += st;
    // A full-rank sublattice of the kernel with the same determinant is the kernel.
    if (!in_kernel(raw) || !in_kernel(red) || !in_kernel(cz) || abs(red.det()) != abs(raw.det()))
      ++bad;
  }
  return {bad == 0, fmt("100 triples, %.0f failures", double(bad))};
}

bool sig5(double got, double want) {
  char a[32], b[32];
  std::snprintf(a, sizeof a, "%.4e", got);
  std::snprintf(b, sizeof b, "%.4e", want);
  return std::string(a) == b;
}

Outcome c7_constants() {
  BoundConstants c = bound_constants(1, 1);
  double u = double(c.u), th = double(c.theta), A = double(c.A);
  double res = std::fabs(double(c.cubic_residual));
  bool ok = sig5(u, 0.3554157) && sig5(th, 2.45861) && sig5(A, 16.6902) && res <= 1e-12;
  return {ok, fmt("u %.7f theta %.5f A %.4f", u, th, A) + fmt(" residual %.1e", res)};
}

template <class F, class Map>
bool annihilates(const Curve<F>& C, Map phi, int r, int s, const Affine<F>& P) {
  Affine<F> f1 = phi(P), f2 = phi(f1);
  Affine<F> sum = affine_add(C, f2, scalar_mul_reference(C, r, f1));
  return affine_add(C, sum, scalar_mul_reference(C, s, P)).inf;
}

Outcome c8_char_poly() {
  Rng rng(108);
  std::size_t checked = 0, bad = 0;
  for (const auto& f : families()) {
    for (const Int& p : test::admissible_primes(f.id, 1000003, 3)) {
      GlvCurve g = catalog_get(f.id, p);
      int done = 0;
      while (done < 50) {
        Affine<Fp> P = random_point(g.curve, rng);
        try {
          bad += !annihilates(g.curve, [&](const Affine<Fp>& Q) { return g.phi(Q); }, f.r, f.s, P);
          ++done;
          ++checked;
        } catch (const PoleAtInput&) {
        }
      }
    }
  }
  const auto& T = test::p1();
  for (int t = 0; t < 50; ++t) {
    Affine<Fp2> Q = scalar_mul_reference(T.curve, rng.below(T.n), T.P);
    bad += !annihilates(T.curve, [&](const Affine<Fp2>& X) { return T.Psi(X); }, 0, 1, Q);
    bad += !(T.Phi(T.Psi(Q)) == T.Psi(T.Phi(Q)));
    checked += 2;
  }
  return {bad == 0, fmt("%.0f checks, %.0f failures", double(checked), double(bad))};
}

Outcome c9_cost() {
  Rng rng(109);
  const auto& T = test::p1();
  auto ks = random_scalars(T.n, 100, rng);
  double cost[3];
  bool ok = true;
  std::string detail;
  for (Mode m : {Mode::non_glv, Mode::glv2, Mode::glv4}) {
    MulReport r = mul_campaign_omp(test::p1_ctx(), m, 1, ks);
    long d = mode_dim(m);
    long want = (long(bitlen(T.n)) + d - 1) / d;
    ok = ok && r.mismatches == 0 && long(r.dbl_min) >= want - 1 && long(r.dbl_max) <= want + 1;
    cost[int(m)] = r.mean_weighted;
    detail += std::string(mode_name(m)) + fmt(" %.0fm dbl %.0f-%.0f, ", r.mean_weighted,
                                               double(r.dbl_min), double(r.dbl_max));
  }
  double ratio = cost[2] / cost[0];
  ok = ok && cost[0] > cost[1] && cost[1] > cost[2] && ratio >= 0.43 && ratio <= 0.53;
  return {ok, detail + fmt("ratio %.3f", ratio)};
}

Outcome c10_halving() {
  Rng rng(110);
  const auto& T = test::p1();
  auto ks = random_scalars(T.n, 1000, rng);
  DecompJob j4 = job(test::p1_ctx(), BoundKind::thm3);
  DecompJob j2;
  j2.basis = &test::p1_ctx().basis2;
  j2.bound = BoundKind::kappa;
  j2.rounding = Rounding::best_vertex;
  double b4 = decomposition_campaign_omp(j4, ks).mean_max_bits;
  double b2 = decomposition_campaign_omp(j2, ks).mean_max_bits;
  double q = b4 / b2;
  return {q >= 0.45 && q <= 0.55, fmt("%.2f / %.2f bits = %.3f", b4, b2, q)};
}

Outcome c11_euclid_invariants() {
  Rng rng(111);
  EgeaCampaign c = egea_campaign(1000, 128, rng);
  egea_total += c.stats;
  egea_total += test::p1_ctx().egea;
  bool ok = egea_total.failures == 0 && egea_total.checks > 0 && c.norm_failures == 0 &&
            c.basis_failures == 0;
  return {ok, fmt("%.0f runs, %.0f checks, %.0f failures", double(egea_total.runs),
                  double(egea_total.checks), double(egea_total.failures))};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"glv4 multiplication equals double-and-add (1000 scalars)", c1_correctness},
      {"decomposition under 103 sqrt(3) n^1/4 (10^4 scalars, Euclid basis)", c2_bound103},
      {"decomposition under 16 B^3 n^1/4 (10^4 scalars, LLL basis)", c3_bound_lll},
      {"kernel vector lower bounds", c4_lower_bounds},
      {"truncated Euclid gives norm(nu) = n (200 primes)", c5_cornacchia},
      {"kernel bases: det and kernel map (100 triples)", c6_kernel},
      {"constants u, theta, A", c7_constants},
      {"characteristic polynomials and twist endomorphisms", c8_char_poly},
      {"doubling counts and weighted cost ordering", c9_cost},
      {"4-GLV parts about half the 2-GLV length", c10_halving},
      {"Euclid loop invariants", c11_euclid_invariants},
  };
  int failed = 0, i = 0;
  for (const auto& [name, run] : criteria) {
    ++i;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s: %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", i, name, o.detail.c_str(), sec);
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d/%d criteria passed\n", i - failed, i);
  return failed == 0 ? 0 : 1;
}
