#pragma once

#include <vector>

#include "glv4/costmodel.hpp"
#include "glv4/multiscalar.hpp"

namespace glv4 {

// Uniform scalars in [0, n), drawn serially so every runner sees the same list.
std::vector<Int> random_scalars(const Int& n, std::size_t count, Rng& rng);

enum class BoundKind {
  thm3,   // max |k_i| < 103 sqrt(1 + |r| + s) n^(1/4)
  thm1,   // max |k_i| <= 16 B^3 n^(1/4)
  kappa,  // 2-dimensional: max |k_i| < kappa sqrt(n)
};
const char* bound_name(BoundKind b);

struct DecompSample {
  Int max_part;
  std::size_t max_bits = 0;
  bool congruent = false;
  bool bound_ok = false;
};

struct DecompReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::size_t congruence_failures = 0;
  Int max_part = 0;
  double max_ratio = 0;  // max |k_i| / n^(1/4), or / sqrt(n) for kappa
  double mean_max_bits = 0;
};

struct DecompJob {
  const DecompBasis* basis = nullptr;
  BoundKind bound = BoundKind::thm3;
  Rounding rounding = Rounding::nearest;
  int r = 1, s = 1;
  Int B4;  // thm1 only
};

DecompSample decompose_sample(const DecompJob& job, const Int& k);
DecompReport aggregate(const DecompJob& job, const std::vector<DecompSample>& v);

DecompReport decomposition_campaign_serial(const DecompJob& job, const std::vector<Int>& ks);
DecompReport decomposition_campaign_omp(const DecompJob& job, const std::vector<Int>& ks);

struct MulSample {
  bool match = false;
  OpCounter ops;
  ChainStats chain;
  double weighted = 0;
};

struct MulReport {
  std::size_t samples = 0;
  std::size_t mismatches = 0;
  OpCounter ops_sum;
  ChainStats chain_sum;
  std::uint64_t dbl_min = 0, dbl_max = 0;
  double mean_weighted = 0;
  double mean_madd = 0;
};

// glv_multiply against scalar_mul_reference.
MulSample mul_sample(const GlvContext& ctx, Mode mode, int cores, const Int& k);
MulReport aggregate(const std::vector<MulSample>& v);

MulReport mul_campaign_serial(const GlvContext& ctx, Mode mode, int cores,
                              const std::vector<Int>& ks);
MulReport mul_campaign_omp(const GlvContext& ctx, Mode mode, int cores,
                           const std::vector<Int>& ks);

// Static checks on a reduced 4-dimensional basis.
struct BasisReport {
  bool det_ok = false;         // |det| = n
  bool kernel_ok = false;      // every row maps to 0 mod n
  bool alg_bound_ok = false;   // rect < 51.5 sqrt(c) n^(1/4)
  bool thm1_rows_ok = false;   // rect <= 16 B^3 n^(1/4)
  bool norm_floor_ok = false;  // rect >= n^(1/4) / B
  bool gaussian_floor_ok = false;
  double max_ratio = 0;        // max rect / n^(1/4)
};

BasisReport check_basis(const DecompBasis& b, int r, int s);

// Truncated and Gaussian Euclid on random primes n = 1 mod 12 with
// lambda^2 + lambda + 1 = 0 and mu^2 + 1 = 0: every in-loop identity is
// counted in the returned stats.
struct EgeaCampaign {
  EgeaStats stats;
  std::size_t triples = 0;
  std::size_t norm_failures = 0;   // norm(nu) != n
  std::size_t basis_failures = 0;  // det or kernel check failed
};

EgeaCampaign egea_campaign(std::size_t count, int bits, Rng& rng);

}  // namespace glv4
