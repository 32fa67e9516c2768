#include "glv4/campaign.hpp"

#include <cmath>

#include "glv4/costmodel.hpp"

namespace glv4 {

std::vector<Int> random_scalars(const Int& n, std::size_t count, Rng& rng) {
  std::vector<Int> v;
  v.reserve(count);
  for (std::size_t i = 0; i < count; ++i) v.push_back(rng.below(n));
  return v;
}

const char* bound_name(BoundKind b) {
  switch (b) {
    case BoundKind::thm3: return "thm3";
    case BoundKind::thm1: return "thm1";
    case BoundKind::kappa: return "kappa";
  }
  return "?";
}

DecompSample decompose_sample(const DecompJob& job, const Int& k) {
  const DecompBasis& b = *job.basis;
  Decomposition d = babai_decompose(k, b, job.rounding);
  DecompSample s;
  s.max_part = d.rect_norm;
  for (const auto& x : d.parts) s.max_bits = std::max(s.max_bits, bitlen(abs(x)));
  s.congruent = kernel_eval(d.parts, b.n, b.lambda, b.mu) == mod(k, b.n);
  switch (job.bound) {
    case BoundKind::thm3: s.bound_ok = within_thm3(d.rect_norm, job.r, job.s, b.n); break;
    case BoundKind::thm1: s.bound_ok = within_thm1(d.rect_norm, job.B4, b.n); break;
    case BoundKind::kappa: s.bound_ok = within_kappa(d.rect_norm, job.r, job.s, b.n); break;
  }
  return s;
}

DecompReport aggregate(const DecompJob& job, const std::vector<DecompSample>& v) {
  DecompReport r;
  r.samples = v.size();
  double bits = 0;
  for (const auto& s : v) {
    r.violations += !s.bound_ok;
    r.congruence_failures += !s.congruent;
    if (s.max_part > r.max_part) r.max_part = s.max_part;
    bits += double(s.max_bits);
  }
  if (!v.empty()) {
    double scale = job.bound == BoundKind::kappa ? std::sqrt(job.basis->n.get_d())
                                                 : std::pow(job.basis->n.get_d(), 0.25);
    r.max_ratio = r.max_part.get_d() / scale;
    r.mean_max_bits = bits / double(v.size());
  }
  return r;
}

MulSample mul_sample(const GlvContext& ctx, Mode mode, int cores, const Int& k) {
  MulSample s;
  MulResult res = glv_multiply(k, ctx, mode, cores);
  Affine<Fp2> ref;
  {
    Uncounted quiet;
    ref = scalar_mul_reference(ctx.inst->curve, k, ctx.inst->P);
  }
  s.match = res.point == ref;
  s.ops = res.ops;
  s.chain = res.chain;
  s.weighted = weighted_ext(res.ops);
  return s;
}

MulReport aggregate(const std::vector<MulSample>& v) {
  MulReport r;
  r.samples = v.size();
  double w = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& s = v[i];
    r.mismatches += !s.match;
    r.ops_sum += s.ops;
    r.chain_sum += s.chain;
    r.dbl_min = i == 0 ? s.chain.dbl : std::min(r.dbl_min, s.chain.dbl);
    r.dbl_max = std::max(r.dbl_max, s.chain.dbl);
    w += s.weighted;
  }
  if (!v.empty()) {
    r.mean_weighted = w / double(v.size());
    r.mean_madd = double(r.chain_sum.madd) / double(v.size());
  }
  return r;
}

BasisReport check_basis(const DecompBasis& b, int r, int s) {
  Uncounted quiet;
  BoundConstants bc = bound_constants(r, s);
  BasisReport rep;
  rep.det_ok = abs(determinant(b.v)) == b.n;
  rep.kernel_ok = rep.alg_bound_ok = rep.thm1_rows_ok = true;
  rep.norm_floor_ok = rep.gaussian_floor_ok = true;
  double scale = std::pow(b.n.get_d(), 0.25);
  for (const auto& v : b.v) {
    Int rect = rect_norm(v);
    rep.kernel_ok = rep.kernel_ok && kernel_eval(v, b.n, b.lambda, b.mu) == 0;
    rep.alg_bound_ok = rep.alg_bound_ok && within_alg_bound(rect, r, s, b.n);
    rep.thm1_rows_ok = rep.thm1_rows_ok && within_thm1(rect, bc.B4, b.n);
    if (rect != 0) {
      rep.norm_floor_ok = rep.norm_floor_ok && above_norm_floor(rect, bc.B4, b.n);
      rep.gaussian_floor_ok = rep.gaussian_floor_ok && above_gaussian_floor(v, r, s, b.n);
    }
    rep.max_ratio = std::max(rep.max_ratio, rect.get_d() / scale);
  }
  return rep;
}

EgeaCampaign egea_campaign(std::size_t count, int bits, Rng& rng) {
  Uncounted quiet;
  EgeaCampaign c;
  while (c.triples < count) {
    Int n = rng.bits(bits) | (Int(1) << (bits - 1));
    n -= mod(n, 12) - 1;
    if (bitlen(n) != std::size_t(bits) || !is_probable_prime(n)) continue;
    Int mu = *sqrt_mod(n - 1, n);
    std::vector<Int> lams = quadratic_roots(1, 1, n);
    Int lam = lams[rng.below(Int(long(lams.size()))).get_ui()];
    GaussianInt nu = cornacchia_z(n, mu, &c.stats);
    c.norm_failures += nu.norm() != n;
    DecompBasis b = cornacchia_zi(nu, lam, 1, 1, n, &c.stats);
    BasisReport rep = check_basis(b, 1, 1);
    c.basis_failures += !(rep.det_ok && rep.kernel_ok);
    ++c.triples;
  }
  return c;
}

}  // namespace glv4
