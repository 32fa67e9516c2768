#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "glv4/bigint.hpp"

namespace glv4 {

struct GaussianInt {
  Int re = 0, im = 0;

  Int norm() const { return re * re + im * im; }
  GaussianInt conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const GaussianInt& o) const { return re == o.re && im == o.im; }
  friend GaussianInt operator+(const GaussianInt& x, const GaussianInt& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend GaussianInt operator-(const GaussianInt& x, const GaussianInt& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend GaussianInt operator*(const GaussianInt& x, const GaussianInt& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  GaussianInt operator-() const { return {-re, -im}; }
};

// Closest Gaussian integer to a/b: the vertex of the enclosing lattice square
// giving the remainder of smallest norm, ties broken by (re, im) of the
// remainder. b != 0.
GaussianInt gaussian_quotient(const GaussianInt& a, const GaussianInt& b);

// Rows of a square integer matrix; |det| = n for every kernel basis.
struct DecompBasis {
  int dim = 0;
  std::vector<IntVec> v;
  Int n, lambda, mu;  // mu = 0 when dim = 2

  // Fills det and the first row of the adjugate; throws SingularBasis.
  static DecompBasis make(std::vector<IntVec> rows, const Int& n, const Int& lambda,
                          const Int& mu = 0);
  const Int& det() const { return det_; }
  const IntVec& adj_row0() const { return adj0_; }

 private:
  Int det_;
  IntVec adj0_;
};

struct Decomposition {
  Int k;
  IntVec parts;  // always 4 entries; the last two are 0 for dim 2
  Int rect_norm;
};

struct BoundConstants {
  int r = 0, s = 0;
  Int B4;             // B^4, an integer
  double B = 0;       // B4^(1/4)
  double thm1_bound;  // 16 B^3
  double thm3_bound;  // 103 sqrt(1+|r|+s)
  double alg_bound;   // 51.5 sqrt(1+|r|+s)
  double kappa;       // optimal 2-dimensional constant
  long double u, theta, Theta, A;
  long double cubic_residual;  // 2u^3 - 3u^2 - 2u + 1 at the computed u
};

// Running totals of the in-loop identities of the two Euclidean algorithms.
struct EgeaStats {
  std::uint64_t runs = 0;
  std::uint64_t iterations = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  EgeaStats& operator+=(const EgeaStats& o) {
    runs += o.runs; iterations += o.iterations; checks += o.checks; failures += o.failures;
    return *this;
  }
};

Int rect_norm(const IntVec& v);
// x1 + x2 lam + x3 mu + x4 lam mu mod n (x1 + x2 lam for length 2).
Int kernel_eval(const IntVec& v, const Int& n, const Int& lam, const Int& mu);
// Exact determinant by fraction-free elimination.
Int determinant(const std::vector<IntVec>& rows);

// 1 + |r| + s, the constant under the square roots below.
inline long c_rs(int r, int s) { return 1 + (r < 0 ? -r : r) + s; }

// kappa^2 as an exact fraction (num, den) for X^2 + rX + s.
std::pair<Int, Int> kappa_sq(int r, int s);

// Two-dimensional basis from the extended Euclidean algorithm on (n, lam).
DecompBasis glv2_reduce(const Int& n, const Int& lam);

// Truncated Euclid on (n, mu); returns nu with norm(nu) = n and
// nu.re + nu.im * mu = 0 mod n. Throws PreconditionFailed if mu^2 != -1.
GaussianInt cornacchia_z(const Int& n, const Int& mu, EgeaStats* stats = nullptr);

// Extended Gaussian Euclid on (lam or lam + n, nu). Returns v1, v2, i v1, i v2
// as integer 4-vectors. mu is recovered from nu.
DecompBasis cornacchia_zi(const GaussianInt& nu, const Int& lam, int r, int s, const Int& n,
                          EgeaStats* stats = nullptr);

DecompBasis kernel_basis_raw(const Int& n, const Int& lam, const Int& mu);

// Integral LLL with delta = 3/4. Throws RankDeficient.
DecompBasis lll_reduce(const DecompBasis& basis);

enum class Rounding {
  nearest,      // b_j = floor(beta_j + 1/2)
  best_vertex,  // best rectangle norm over floor/ceil choices of every beta_j
};

Decomposition babai_decompose(const Int& k, const DecompBasis& basis,
                              Rounding rounding = Rounding::nearest);

BoundConstants bound_constants(int r, int s);

// Exact bound checks, all in integers.
// max < 103 sqrt(c) n^(1/4)
bool within_thm3(const Int& max, int r, int s, const Int& n);
// max < 51.5 sqrt(c) n^(1/4)
bool within_alg_bound(const Int& max, int r, int s, const Int& n);
// max <= 16 B^3 n^(1/4)
bool within_thm1(const Int& max, const Int& B4, const Int& n);
// rect >= n^(1/4) / B
bool above_norm_floor(const Int& rect, const Int& B4, const Int& n);
// max(|z1|, |z2|) >= sqrt|nu| / sqrt(c) where z1 = x1 + i x3, z2 = x2 + i x4
bool above_gaussian_floor(const IntVec& v, int r, int s, const Int& n);
// max < kappa sqrt(n)
bool within_kappa(const Int& max, int r, int s, const Int& n);

}  // namespace glv4
