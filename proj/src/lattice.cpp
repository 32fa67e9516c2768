#include "glv4/lattice.hpp"

#include <cmath>

#include "glv4/errors.hpp"

namespace glv4 {

GaussianInt gaussian_quotient(const GaussianInt& a, const GaussianInt& b) {
  Int nb = b.norm();
  if (nb == 0) throw DivisionByZero("Gaussian division by zero");
  GaussianInt num = a * b.conj();
  Int fr = floor_div(num.re, nb), fi = floor_div(num.im, nb);
  GaussianInt best_q, best_rem;
  Int best_norm = -1;
  for (int dr = 0; dr < 2; ++dr) {
    for (int di = 0; di < 2; ++di) {
      GaussianInt q{fr + dr, fi + di};
      GaussianInt rem = a - q * b;
      Int nr = rem.norm();
      bool better = best_norm < 0 || nr < best_norm ||
                    (nr == best_norm && (rem.re < best_rem.re ||
                                         (rem.re == best_rem.re && rem.im < best_rem.im)));
      if (better) {
        best_norm = nr;
        best_q = q;
        best_rem = rem;
      }
    }
  }
  return best_q;
}

Int rect_norm(const IntVec& v) {
  Int m = 0;
  for (const Int& x : v) {
    Int ax = abs(x);
    if (ax > m) m = ax;
  }
  return m;
}

Int kernel_eval(const IntVec& v, const Int& n, const Int& lam, const Int& mu) {
  if (v.size() == 2) return mod(v[0] + v[1] * lam, n);
  if (v.size() != 4) throw DimensionMismatch("kernel vectors have 2 or 4 entries");
  return mod(v[0] + v[1] * lam + v[2] * mu + v[3] * mod(lam * mu, n), n);
}

Int determinant(const std::vector<IntVec>& rows) {
  std::size_t d = rows.size();
  for (const auto& r : rows) {
    if (r.size() != d) throw DimensionMismatch("determinant of a non-square matrix");
  }
  if (d == 0) return 1;
  std::vector<IntVec> a = rows;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < d && a[piv][k] == 0) ++piv;
      if (piv == d) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j) {
        Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
    }
    prev = a[k][k];
  }
  return sign * a[d - 1][d - 1];
}

DecompBasis DecompBasis::make(std::vector<IntVec> rows, const Int& n, const Int& lambda,
                              const Int& mu) {
  DecompBasis b;
  b.dim = static_cast<int>(rows.size());
  if (b.dim != 2 && b.dim != 4) throw DimensionMismatch("basis dimension must be 2 or 4");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != b.dim) throw DimensionMismatch("ragged basis");
  }
  b.v = std::move(rows);
  b.n = n;
  b.lambda = lambda;
  b.mu = mu;
  b.det_ = determinant(b.v);
  if (b.det_ == 0) throw SingularBasis("basis vectors are linearly dependent");
  b.adj0_.resize(b.dim);
  for (int j = 0; j < b.dim; ++j) {
    std::vector<IntVec> minor;
    for (int i = 0; i < b.dim; ++i) {
      if (i == j) continue;
      minor.emplace_back(b.v[i].begin() + 1, b.v[i].end());
    }
    Int m = determinant(minor);
    b.adj0_[j] = (j % 2 == 0) ? m : Int(-m);
  }
  return b;
}

std::pair<Int, Int> kappa_sq(int r, int s) {
  long D = 4L * s - static_cast<long>(r) * r;
  if (D <= 0) throw DomainError("r^2 - 4s must be negative");
  if (r % 2 != 0) {
    Int num = Int(s) * (D + 1) * (D + 1);
    Int den = Int(4) * D * D;
    return {num, den};
  }
  return {Int(s) * (D + 4), Int(4) * D};
}

DecompBasis glv2_reduce(const Int& n, const Int& lam) {
  if (lam <= 0 || lam >= n) throw PreconditionFailed("lambda must lie in [1, n-1]");
  IntVec r{n, lam}, t{0, 1};
  while (r.back() != 0) {
    Int q = floor_div(r[r.size() - 2], r.back());
    r.push_back(r[r.size() - 2] - q * r.back());
    t.push_back(t[t.size() - 2] - q * t.back());
  }
  std::size_t l = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] * r[i] >= n) l = i;
  }
  IntVec v1{r[l + 1], Int(-t[l + 1])};
  IntVec a{r[l], Int(-t[l])};
  IntVec v2 = a;
  if (l + 2 < r.size()) {
    IntVec b{r[l + 2], Int(-t[l + 2])};
    if (b[0] * b[0] + b[1] * b[1] < a[0] * a[0] + a[1] * a[1]) v2 = b;
  }
  return DecompBasis::make({v1, v2}, n, lam);
}

GaussianInt cornacchia_z(const Int& n, const Int& mu, EgeaStats* stats) {
  if (mu <= 1 || mu >= n || mod(mu * mu + 1, n) != 0) {
    throw PreconditionFailed("mu must satisfy 1 < mu < n and mu^2 = -1 mod n");
  }
  // r_j = s_j n + t_j mu throughout
  Int r0 = n, r1 = mu, r2 = n;
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  std::uint64_t iters = 0, checks = 0, fails = 0;
  auto check = [&](const Int& r, const Int& s, const Int& t) {
    ++checks;
    if (s * n + t * mu != r) ++fails;
  };
  check(r0, s0, t0);
  check(r1, s1, t1);
  while (r2 * r2 >= n) {
    Int q = floor_div(r0, r1);
    r2 = r0 - q * r1;
    Int s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
    check(r1, s1, t1);
    ++iters;
  }
  GaussianInt nu{r1, Int(-t1)};
  if (mod(nu.re + nu.im * mu, n) != 0) nu = nu.conj();
  ++checks;
  if (nu.norm() != n) ++fails;
  if (stats) {
    stats->runs += 1;
    stats->iterations += iters;
    stats->checks += checks;
    stats->failures += fails;
  }
  return nu;
}

namespace {

IntVec split(const GaussianInt& z1, const GaussianInt& z2) {
  return {z1.re, z2.re, z1.im, z2.im};
}

}  // namespace

DecompBasis cornacchia_zi(const GaussianInt& nu, const Int& lam, int r, int s, const Int& n,
                          EgeaStats* stats) {
  if (nu.norm() != n) throw PreconditionFailed("norm(nu) must equal n");
  if (nu.im == 0 || mod(nu.im, n) == 0) throw PreconditionFailed("nu must not be rational");
  if (lam <= 0 || lam >= n) throw PreconditionFailed("lambda must lie in [1, n-1]");
  Int mu = mod(-nu.re * invmod(nu.im, n), n);
  const Int c = c_rs(r, s);
  const Int c2 = c * c;

  GaussianInt r0{lam * lam >= 2 * n ? lam : Int(lam + n), 0};
  GaussianInt r1 = nu, r2{n, 0};
  GaussianInt s0{1, 0}, s1{0, 0};
  std::uint64_t iters = 0, checks = 0, fails = 0;
  // s_{j+1} r_j - s_j r_{j+1} = (-1)^{j+1} nu
  int parity = 1;
  auto check = [&]() {
    ++checks;
    GaussianInt lhs = s1 * r0 - s0 * r1;
    GaussianInt rhs = parity % 2 ? -nu : nu;
    if (!(lhs == rhs)) ++fails;
  };
  check();
  while (r2.norm() * r2.norm() * c2 >= n) {
    GaussianInt q = gaussian_quotient(r0, r1);
    r2 = r0 - q * r1;
    GaussianInt s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    ++parity;
    ++iters;
    check();
  }
  if (stats) {
    stats->runs += 1;
    stats->iterations += iters;
    stats->checks += checks;
    stats->failures += fails;
  }
  GaussianInt z1a = r0, z2a = -s0, z1b = r1, z2b = -s1;
  GaussianInt I{0, 1};
  std::vector<IntVec> rows{split(z1a, z2a), split(z1b, z2b), split(I * z1a, I * z2a),
                           split(I * z1b, I * z2b)};
  return DecompBasis::make(std::move(rows), n, lam, mu);
}

DecompBasis kernel_basis_raw(const Int& n, const Int& lam, const Int& mu) {
  std::vector<IntVec> rows{
      {n, 0, 0, 0},
      {Int(-lam), 1, 0, 0},
      {Int(-mu), 0, 1, 0},
      {Int(lam * mu), Int(-mu), Int(-lam), 1},
  };
  return DecompBasis::make(std::move(rows), n, lam, mu);
}

namespace {

Int dot(const IntVec& x, const IntVec& y) {
  Int r = 0;
  for (std::size_t i = 0; i < x.size(); ++i) r += x[i] * y[i];
  return r;
}

}  // namespace

// Cohen, integral LLL, 1-based indices as in the usual presentation.
DecompBasis lll_reduce(const DecompBasis& basis) {
  const int nb = basis.dim;
  std::vector<IntVec> b(nb + 1);
  for (int i = 1; i <= nb; ++i) b[i] = basis.v[i - 1];
  std::vector<Int> d(nb + 1);
  std::vector<IntVec> lam(nb + 1, IntVec(nb + 1));
  d[0] = 1;
  d[1] = dot(b[1], b[1]);
  if (d[1] == 0) throw RankDeficient("zero basis vector");
  int k = 2, kmax = 1;

  auto redi = [&](int kk, int l) {
    Int twice = 2 * lam[kk][l];
    if (abs(twice) <= d[l]) return;
    Int q = round_div(lam[kk][l], d[l]);
    for (int c = 0; c < nb; ++c) b[kk][c] -= q * b[l][c];
    lam[kk][l] -= q * d[l];
    for (int i = 1; i <= l - 1; ++i) lam[kk][i] -= q * lam[l][i];
  };
  auto swapi = [&](int kk) {
    std::swap(b[kk], b[kk - 1]);
    for (int j = 1; j <= kk - 2; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    Int l = lam[kk][kk - 1];
    Int B = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (int i = kk + 1; i <= kmax; ++i) {
      Int t = lam[i][kk];
      lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
      lam[i][kk - 1] = (B * t + l * lam[i][kk]) / d[kk];
    }
    d[kk - 1] = B;
  };

  while (k <= nb) {
    if (k > kmax) {
      kmax = k;
      for (int j = 1; j <= k; ++j) {
        Int u = dot(b[k], b[j]);
        for (int i = 1; i <= j - 1; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k) {
          lam[k][j] = u;
        } else {
          d[k] = u;
          if (d[k] == 0) throw RankDeficient("basis vectors are linearly dependent");
        }
      }
    }
    for (;;) {
      redi(k, k - 1);
      if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
        swapi(k);
        k = std::max(2, k - 1);
        continue;
      }
      for (int l = k - 2; l >= 1; --l) redi(k, l);
      ++k;
      break;
    }
  }
  std::vector<IntVec> rows(b.begin() + 1, b.end());
  return DecompBasis::make(std::move(rows), basis.n, basis.lambda, basis.mu);
}

Decomposition babai_decompose(const Int& k, const DecompBasis& basis, Rounding rounding) {
  const int dim = basis.dim;
  if (dim != 2 && dim != 4) throw DimensionMismatch("basis dimension must be 2 or 4");
  const Int& det = basis.det();
  if (det == 0) throw SingularBasis("basis has zero determinant");

  auto offset = [&](const IntVec& coef) {
    IntVec u(dim, 0);
    u[0] = k;
    for (int j = 0; j < dim; ++j) {
      if (coef[j] == 0) continue;
      for (int c = 0; c < dim; ++c) u[c] -= coef[j] * basis.v[j][c];
    }
    return u;
  };

  IntVec best;
  if (rounding == Rounding::nearest) {
    IntVec coef(dim);
    for (int j = 0; j < dim; ++j) coef[j] = round_div(k * basis.adj_row0()[j], det);
    best = offset(coef);
  } else {
    IntVec fl(dim);
    for (int j = 0; j < dim; ++j) fl[j] = floor_div(k * basis.adj_row0()[j], det);
    Int best_norm = -1;
    for (int mask = 0; mask < (1 << dim); ++mask) {
      IntVec coef = fl;
      for (int j = 0; j < dim; ++j) {
        if (mask & (1 << j)) coef[j] += 1;
      }
      IntVec u = offset(coef);
      Int rn = rect_norm(u);
      if (best_norm < 0 || rn < best_norm) {
        best_norm = rn;
        best = std::move(u);
      }
    }
  }
  Decomposition out;
  out.k = k;
  out.parts = IntVec(4, 0);
  for (int c = 0; c < dim; ++c) out.parts[c] = best[c];
  out.rect_norm = rect_norm(out.parts);
  return out;
}

BoundConstants bound_constants(int r, int s) {
  if (static_cast<long>(r) * r - 4L * s >= 0) throw DomainError("r^2 - 4s must be negative");
  BoundConstants bc;
  bc.r = r;
  bc.s = s;
  long ar = r < 0 ? -r : r;
  long r2 = static_cast<long>(r) * r;
  long d = r2 - 2L * s;
  bc.B4 = 4 + 4L * s * s + 8L * s + 8 * ar + 8 * ar * s + 2 * (r2 + 2L * s) + 2 * (d < 0 ? -d : d);
  bc.B = std::pow(bc.B4.get_d(), 0.25);
  bc.thm1_bound = 16.0 * bc.B * bc.B * bc.B;
  double sq = std::sqrt(static_cast<double>(c_rs(r, s)));
  bc.thm3_bound = 103.0 * sq;
  bc.alg_bound = 51.5 * sq;
  double D = static_cast<double>(4L * s - r2);
  bc.kappa = (r % 2 != 0) ? std::sqrt(double(s)) / 2 * (1 + 1 / D)
                          : std::sqrt(double(s)) / 2 * std::sqrt(1 + 4 / D);

  // 2u^3 - 3u^2 - 2u + 1 is decreasing on (0, 1) with a sign change.
  auto f = [](long double x) { return ((2 * x - 3) * x - 2) * x + 1; };
  long double lo = 0, hi = 1;
  for (int it = 0; it < 200; ++it) {
    long double mid = (lo + hi) / 2;
    if (f(mid) > 0) lo = mid; else hi = mid;
  }
  bc.u = (lo + hi) / 2;
  bc.cubic_residual = f(bc.u);
  bc.theta = 2 * std::atan(1 / bc.u);
  const long double pi = std::acos(-1.0L);
  bc.Theta = std::atan(2.0L) - pi / 3;
  bc.A = 1 / std::sin(bc.Theta);
  return bc;
}

namespace {

Int pow4(const Int& x) {
  Int x2 = x * x;
  return x2 * x2;
}

const Int k103_4 = Int(103) * 103 * 103 * 103;

}  // namespace

bool within_thm3(const Int& max, int r, int s, const Int& n) {
  Int c = c_rs(r, s);
  return pow4(max) < k103_4 * c * c * n;
}

bool within_alg_bound(const Int& max, int r, int s, const Int& n) {
  Int c = c_rs(r, s);
  return 16 * pow4(max) < k103_4 * c * c * n;
}

bool within_thm1(const Int& max, const Int& B4, const Int& n) {
  return pow4(max) <= Int(65536) * B4 * B4 * B4 * n;
}

bool above_norm_floor(const Int& rect, const Int& B4, const Int& n) {
  return pow4(rect) * B4 >= n;
}

bool above_gaussian_floor(const IntVec& v, int r, int s, const Int& n) {
  if (v.size() != 4) throw DimensionMismatch("expected a 4-vector");
  Int n1 = v[0] * v[0] + v[2] * v[2];
  Int n2 = v[1] * v[1] + v[3] * v[3];
  Int m = n1 > n2 ? n1 : n2;
  Int c = c_rs(r, s);
  return m * m * c * c >= n;
}

bool within_kappa(const Int& max, int r, int s, const Int& n) {
  auto [num, den] = kappa_sq(r, s);
  return max * max * den < num * n;
}

}  // namespace glv4
