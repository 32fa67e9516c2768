#include "glv4/catalog.hpp"

#include <algorithm>
#include <cctype>

#include "glv4/errors.hpp"

namespace glv4 {

const std::vector<FamilyInfo>& families() {
  // E6 has End = Z[sqrt(-3)], which sits inside Z[omega]; its order search
  // enumerates the six associates of Frobenius and lets the points decide.
  static const std::vector<FamilyInfo> table{
      {Family::E1, "E1", 0, 1, -4, 4, "p = 1 mod 4", "y^2 = x^3 + a x",
       "(x, y) -> (-x, beta y), beta^2 = -1"},
      {Family::E2, "E2", 1, 1, -3, 6, "p = 1 mod 3", "y^2 = x^3 + b",
       "(x, y) -> (gamma x, y), gamma^3 = 1"},
      {Family::E3, "E3", -1, 2, -7, 2, "-7 is a square mod p", "y^2 = x^3 - 3/4 x^2 - 2x - 1",
       "((x^2 - xi) / (xi^2 (x - a)), y (x^2 - 2ax + xi) / (xi^3 (x - a)^2)), "
       "xi = (1 + sqrt(-7))/2, a = (xi - 3)/4"},
      {Family::E4, "E4", 0, 2, -8, 2, "-2 is a square mod p", "y^2 = 4x^3 - 30x - 28",
       "(-(2x^2 + 4x + 9) / (4(x + 2)), y (2x^2 + 8x - 1) / (4 sqrt(-2) (x + 2)^2))"},
      {Family::E5, "E5", -1, 3, -11, 2, "-11 is a square mod p",
       "y^2 = x^3 - 13824/539 x + 27648/539", "degree 3, a = (1 + sqrt(-11))/2"},
      {Family::E6, "E6", 0, 3, -3, 6, "-3 is a square mod p",
       "y^2 = x^3 - 3375/121 x + 6750/121",
       "(-(1331x^3 - 10890x^2 + 81675x - 189000) / (33 (11x - 45)^2), "
       "y (1331x^3 - 16335x^2 + 7425x + 43875) / (3 sqrt(-3) (11x - 45)^3))"},
  };
  return table;
}

const FamilyInfo& family_info(Family f) {
  for (const auto& fi : families()) {
    if (fi.id == f) return fi;
  }
  throw UnsupportedFamily("unknown family");
}

Family parse_family(std::string_view s) {
  std::string t(s);
  for (char& ch : t) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (const auto& fi : families()) {
    if (t == fi.name) return fi.id;
  }
  throw UnsupportedFamily("no family named '" + std::string(s) + "'");
}

namespace {

using Poly = std::vector<Fp>;

Fp rat(const PrimeField* f, const Int& num, const Int& den) {
  Int d = mod(den, f->p());
  if (d == 0) throw ResidueConditionFailed("p divides a denominator of the family constants");
  return Fp(f, num) * Fp(f, d).inv();
}

void trim(Poly& a) {
  while (a.size() > 1 && a.back().is_zero()) a.pop_back();
}

Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), a.empty() ? b[0].zero() : a[0].zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  trim(r);
  return r;
}

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, a[0].zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly pscale(const Poly& a, const Fp& c) {
  Poly r = a;
  for (auto& x : r) x = x * c;
  trim(r);
  return r;
}

// a(alpha X + beta)
Poly pcompose_linear(const Poly& a, const Fp& alpha, const Fp& beta) {
  Poly lin{beta, alpha};
  Poly r{a.back()};
  for (std::size_t k = a.size() - 1; k-- > 0;) r = padd(pmul(r, lin), Poly{a[k]});
  return r;
}

struct Published {
  Fp c3, c2, c1, c0;
  RationalMap<Fp> map;  // on the published equation
};

Published build_family(Family f, const PrimeField* F, const Fp& root, const Int& coeff) {
  auto c = [&](long v) { return Fp(F, Int(v)); };
  auto q = [&](const char* num, const char* den) { return rat(F, from_dec(num), from_dec(den)); };
  Fp zero = c(0), one = c(1);
  Published P;
  switch (f) {
    case Family::E1: {
      P.c3 = one; P.c2 = zero; P.c1 = Fp(F, coeff); P.c0 = zero;
      P.map.xn = {zero, -one};
      P.map.xd = {one};
      P.map.yn = {root};
      P.map.yd = {one};
      break;
    }
    case Family::E2: {
      P.c3 = one; P.c2 = zero; P.c1 = zero; P.c0 = Fp(F, coeff);
      P.map.xn = {zero, root};
      P.map.xd = {one};
      P.map.yn = {one};
      P.map.yd = {one};
      break;
    }
    case Family::E3: {
      P.c3 = one; P.c2 = q("-3", "4"); P.c1 = c(-2); P.c0 = c(-1);
      Fp xi = (one + root) * rat(F, 1, 2);
      Fp a = (xi - c(3)) * rat(F, 1, 4);
      Fp xi2 = xi.sqr(), xi3 = xi2 * xi;
      P.map.xn = {-xi, zero, one};
      P.map.xd = {-(xi2 * a), xi2};
      P.map.yn = {xi, -(a + a), one};
      P.map.yd = {xi3 * a.sqr(), -(xi3 * (a + a)), xi3};
      break;
    }
    case Family::E4: {
      P.c3 = c(4); P.c2 = zero; P.c1 = c(-30); P.c0 = c(-28);
      P.map.xn = {c(-9), c(-4), c(-2)};
      P.map.xd = {c(8), c(4)};
      P.map.yn = {c(-1), c(8), c(2)};
      Fp r4 = c(4) * root;
      P.map.yd = {r4 * c(4), r4 * c(4), r4};
      break;
    }
    case Family::E5: {
      P.c3 = one; P.c2 = zero; P.c1 = q("-13824", "539"); P.c0 = q("27648", "539");
      Fp a = (one + root) * rat(F, 1, 2);
      auto lin = [&](const char* n1, const char* d1, const char* n0, const char* d0) {
        return q(n1, d1) * a + q(n0, d0);
      };
      P.map.xn = {lin("1728", "77", "192", "77"), lin("-92", "9", "8", "3"),
                  lin("28", "27", "-35", "18"), lin("-539", "5184", "539", "1728")};
      P.map.xd = {lin("64", "9", "-4", "3"), lin("-217", "54", "49", "18"),
                  lin("2695", "5184", "-539", "864")};
      P.map.yn = {lin("20", "27", "1", "9"), lin("7", "432", "-91", "144"),
                  lin("-2695", "20736", "539", "3456"), lin("3773", "373248", "-18865", "995328")};
      P.map.yd = {lin("74", "27", "-35", "9"), lin("-791", "432", "581", "144"),
                  lin("7007", "20736", "-539", "432"),
                  lin("-18865", "1492992", "116963", "995328")};
      break;
    }
    case Family::E6: {
      P.c3 = one; P.c2 = zero; P.c1 = q("-3375", "121"); P.c0 = q("6750", "121");
      P.map.xn = {c(189000), c(-81675), c(10890), c(-1331)};
      P.map.xd = {c(66825), c(-32670), c(3993)};
      P.map.yn = {c(43875), c(7425), c(-16335), c(1331)};
      Fp r3 = c(3) * root;
      P.map.yd = {r3 * c(-91125), r3 * c(66825), r3 * c(-16335), r3 * c(1331)};
      break;
    }
  }
  for (auto* poly : {&P.map.xn, &P.map.xd, &P.map.yn, &P.map.yd}) trim(*poly);
  return P;
}

// Moves y^2 = c3 x^3 + c2 x^2 + c1 x + c0 to X = c3 x + c2/3, Y = c3 y.
void normalize(GlvCurve& g, const Published& pub) {
  const PrimeField* F = g.field.get();
  Fp third = rat(F, 1, 3);
  Fp c2_3 = pub.c2 * third;
  Fp A = pub.c1 * pub.c3 - pub.c2.sqr() * third;
  Fp B = pub.c0 * pub.c3.sqr() - c2_3 * pub.c1 * pub.c3 +
         rat(F, 2, 27) * pub.c2.sqr() * pub.c2;
  g.curve = Curve<Fp>(A, B);
  Fp alpha = pub.c3.inv();
  Fp beta = -(c2_3 * alpha);
  Poly N = pcompose_linear(pub.map.xn, alpha, beta);
  Poly D = pcompose_linear(pub.map.xd, alpha, beta);
  g.endo.xn = padd(pscale(N, pub.c3), pscale(D, c2_3));
  g.endo.xd = D;
  g.endo.yn = pcompose_linear(pub.map.yn, alpha, beta);
  g.endo.yd = pcompose_linear(pub.map.yd, alpha, beta);
}

// phi^2 + r phi + s on a few points of the short form.
bool char_poly_holds(const GlvCurve& g, Rng& rng, int tries = 3) {
  const auto& C = g.curve;
  int done = 0, attempts = 0;
  while (done < tries && attempts < 50) {
    ++attempts;
    Affine<Fp> Q = random_point(C, rng);
    try {
      Affine<Fp> f1 = g.phi(Q);
      if (!is_on_curve(C, f1)) return false;
      Affine<Fp> f2 = g.phi(f1);
      Affine<Fp> sum = affine_add(C, f2, scalar_mul_reference(C, Int(g.info->r), f1));
      sum = affine_add(C, sum, scalar_mul_reference(C, Int(g.info->s), Q));
      if (!sum.inf) return false;
      ++done;
    } catch (const PoleAtInput&) {
    }
  }
  return done > 0;
}

std::vector<Fp> root_candidates(Family f, const PrimeField* F) {
  const Int& p = F->p();
  auto sq = [&](long d) -> std::vector<Fp> {
    auto r = sqrt_mod(Int(d), p);
    if (!r || *r == 0) {
      throw ResidueConditionFailed(std::to_string(d) + " is not a nonzero square mod " + to_hex(p));
    }
    Int lo = std::min(*r, Int(p - *r)), hi = std::max(*r, Int(p - *r));
    return {Fp(F, lo), Fp(F, hi)};
  };
  switch (f) {
    case Family::E1:
      if (mod(p, 4) != 1) throw ResidueConditionFailed("E1 needs p = 1 mod 4");
      return sq(-1);
    case Family::E2: {
      if (mod(p, 3) != 1) throw ResidueConditionFailed("E2 needs p = 1 mod 3");
      auto r = sq(-3);
      Fp half = rat(F, 1, 2);
      Fp g1 = (r[0] - Fp(F, 1)) * half, g2 = (r[1] - Fp(F, 1)) * half;
      if (g2.value() < g1.value()) std::swap(g1, g2);
      return {g1, g2};
    }
    case Family::E3:
      if (p <= 7) throw ResidueConditionFailed("E3 needs p > 7");
      return sq(-7);
    case Family::E4:
      if (p <= 3) throw ResidueConditionFailed("E4 needs p > 3");
      return sq(-2);
    case Family::E5:
      if (p <= 11) throw ResidueConditionFailed("E5 needs p > 11");
      return sq(-11);
    case Family::E6:
      if (p <= 11) throw ResidueConditionFailed("E6 needs p > 11");
      return sq(-3);
  }
  throw UnsupportedFamily("unknown family");
}

bool valid_root(Family f, const Fp& root) {
  Uncounted u;
  Fp one = root.one();
  switch (f) {
    case Family::E1: return (root.sqr() + one).is_zero();
    case Family::E2: return !root.is_one() && (root.sqr() * root).is_one();
    case Family::E3: return (root.sqr() + root.from_int(7)).is_zero();
    case Family::E4: return (root.sqr() + root.from_int(2)).is_zero();
    case Family::E5: return (root.sqr() + root.from_int(11)).is_zero();
    case Family::E6: return (root.sqr() + root.from_int(3)).is_zero();
  }
  return false;
}

}  // namespace

std::pair<Fp, Fp> GlvCurve::to_published(const Affine<Fp>& P) const {
  Uncounted u;
  Fp ci = c3.inv();
  return {(P.x - c2 * rat(field.get(), 1, 3)) * ci, P.y * ci};
}

bool GlvCurve::on_published(const Fp& x, const Fp& y) const {
  Uncounted u;
  return y.sqr() == ((c3 * x + c2) * x + c1) * x + c0;
}

GlvCurve catalog_get(Family f, const Int& p, std::optional<Int> coeff, std::optional<Int> root) {
  Uncounted uc;
  GlvCurve g;
  g.info = &family_info(f);
  g.field = PrimeField::make(p);
  const PrimeField* F = g.field.get();
  if (f == Family::E1) g.coeff = coeff.value_or(1);
  if (f == Family::E2) g.coeff = coeff.value_or(9);
  if ((f == Family::E1 || f == Family::E2) && mod(g.coeff, p) == 0) {
    throw InvalidCurve("the free coefficient must be nonzero mod p");
  }
  std::vector<Fp> cands = root_candidates(f, F);
  if (root) {
    Fp r(F, *root);
    if (!valid_root(f, r)) throw InvalidCurve("stored root does not fit the family");
    cands = {r};
  }
  // Deterministic test points: the check is behavioural, not random.
  Rng rng(0x676c7634ULL ^ static_cast<std::uint64_t>(mpz_get_ui(p.get_mpz_t())));
  for (const Fp& r : cands) {
    Published pub = build_family(f, F, r, g.coeff);
    g.c3 = pub.c3; g.c2 = pub.c2; g.c1 = pub.c1; g.c0 = pub.c0;
    g.root = r;
    normalize(g, pub);
    if (char_poly_holds(g, rng)) return g;
  }
  throw InvalidCurve(std::string("no root choice satisfies the characteristic polynomial of ") +
                     g.info->name);
}

// ---------------------------------------------------------------- orders

namespace {

// 4p = t^2 + |D| v^2.
std::optional<std::pair<Int, Int>> cornacchia_4p(const Int& p, int D) {
  Int absD = -D;
  auto x0 = sqrt_mod(Int(D), p);
  if (!x0) return std::nullopt;
  Int b = *x0;
  if (mod(b, 2) != mod(Int(D), 2)) b = p - b;
  Int a = 2 * p;
  Int l = isqrt(4 * p);
  while (b > l) {
    Int r = mod(a, b);
    a = b;
    b = r;
  }
  Int c = 4 * p - b * b;
  if (mod(c, absD) != 0) return std::nullopt;
  c /= absD;
  if (!is_perfect_square(c)) return std::nullopt;
  return std::make_pair(b, isqrt(c));
}

struct Quad {
  Int x, y;  // (x + y sqrt(D)) / 2
};

Quad qmul(const Quad& u, const Quad& v, int D) {
  return {(u.x * v.x + D * u.y * v.y) / 2, (u.x * v.y + v.x * u.y) / 2};
}

}  // namespace

std::vector<Int> cm_order_candidates(const Int& p, int disc, int units, int degree) {
  auto tv = cornacchia_4p(p, disc);
  if (!tv) throw InvalidCurve("p is not a norm from the CM order");
  Quad pi{tv->first, tv->second};
  Quad pk{2, 0};
  for (int k = 0; k < degree; ++k) pk = qmul(pk, pi, disc);
  std::vector<Quad> us{{2, 0}, {-2, 0}};
  if (units == 4) {
    us.push_back({0, 1});
    us.push_back({0, -1});
  } else if (units == 6) {
    us = {{2, 0}, {-2, 0}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  }
  Int q = 1;
  for (int k = 0; k < degree; ++k) q *= p;
  std::vector<Int> out;
  for (const auto& e : us) {
    Quad z = qmul(e, pk, disc);
    out.push_back(q + 1 - z.x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Int field_size(const Fp& like) { return like.field()->p(); }
Int field_size(const Fp2& like) {
  const Int& p = like.ext()->base()->p();
  return p * p;
}

std::vector<Fp> all_elements(const Fp& like) {
  std::vector<Fp> v;
  for (Int k = 0; k < like.field()->p(); ++k) v.push_back(like.from_int(k));
  return v;
}
std::vector<Fp2> all_elements(const Fp2& like) {
  std::vector<Fp2> v;
  const Int& p = like.ext()->base()->p();
  for (Int a = 0; a < p; ++a) {
    for (Int b = 0; b < p; ++b) v.emplace_back(like.ext(), a, b);
  }
  return v;
}

}  // namespace

template <class F>
Int count_points_naive(const Curve<F>& C) {
  if (field_size(C.b) > Int(1) << 22) throw PreconditionFailed("field too large to enumerate");
  Uncounted u;
  Int N = 1;
  for (const F& x : all_elements(C.b)) {
    F r = C.rhs(x);
    if (r.is_zero()) N += 1;
    else if (r.is_square()) N += 2;
  }
  return N;
}

template <class F>
Int find_group_order(const Curve<F>& C, const std::vector<Int>& candidates, Rng& rng) {
  Uncounted u;
  Int q = field_size(C.b);
  Int two_sqrt = 2 * isqrt(q) + 2;
  std::vector<Int> cands;
  for (const Int& N : candidates) {
    if (N > 0 && abs(N - (q + 1)) <= two_sqrt) cands.push_back(N);
  }
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Int> alive = cands;
    for (int k = 0; k < 20 && alive.size() > 0; ++k) {
      Affine<F> Q = random_point(C, rng);
      std::vector<Int> keep;
      for (const Int& N : alive) {
        if (scalar_mul_reference(C, N, Q).inf) keep.push_back(N);
      }
      alive = std::move(keep);
    }
    if (alive.size() == 1) return alive[0];
    if (alive.empty()) throw InvalidCurve("no order candidate annihilates the test points");
    if (q <= Int(1) << 22) {
      Int N = count_points_naive(C);
      if (std::find(alive.begin(), alive.end(), N) != alive.end()) return N;
    }
  }
  throw AmbiguousOrder("several order candidates annihilate every test point");
}

template Int count_points_naive<Fp>(const Curve<Fp>&);
template Int count_points_naive<Fp2>(const Curve<Fp2>&);
template Int find_group_order<Fp>(const Curve<Fp>&, const std::vector<Int>&, Rng&);
template Int find_group_order<Fp2>(const Curve<Fp2>&, const std::vector<Int>&, Rng&);

std::vector<Int> quadratic_roots(const Int& r, const Int& s, const Int& n) {
  if (n < 3) throw PreconditionFailed("modulus must be an odd prime");
  Int disc = mod(r * r - 4 * s, n);
  auto sq = sqrt_mod(disc, n);
  if (!sq) throw NoRoot("X^2 + " + r.get_str() + "X + " + s.get_str() + " has no root mod n");
  Int inv2 = invmod(Int(2), n);
  std::vector<Int> out{mod((-r + *sq) * inv2, n), mod((-r - *sq) * inv2, n)};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class F>
Int eigenvalue_solve(const Int& r, const Int& s, const Int& n, const Curve<F>& C,
                     const Affine<F>& P, const std::function<Affine<F>(const Affine<F>&)>& endo) {
  Uncounted u;
  Affine<F> target = endo(P);
  for (const Int& e : quadratic_roots(r, s, n)) {
    if (scalar_mul_reference(C, e, P) == target) return e;
  }
  throw NeitherRootMatches("the endomorphism does not act as a root of X^2 + " + r.get_str() +
                           "X + " + s.get_str());
}

template Int eigenvalue_solve<Fp>(const Int&, const Int&, const Int&, const Curve<Fp>&,
                                  const Affine<Fp>&,
                                  const std::function<Affine<Fp>(const Affine<Fp>&)>&);
template Int eigenvalue_solve<Fp2>(const Int&, const Int&, const Int&, const Curve<Fp2>&,
                                   const Affine<Fp2>&,
                                   const std::function<Affine<Fp2>(const Affine<Fp2>&)>&);

// ---------------------------------------------------------------- twists

namespace {

Fp2 embed(const QuadExt* e, const Fp& x) { return Fp2(e, x); }

std::vector<Fp2> embed_poly(const QuadExt* e, const std::vector<Fp>& c) {
  std::vector<Fp2> r;
  for (const Fp& x : c) r.push_back(embed(e, x));
  return r;
}

bool is_cube(const Fp2& u) {
  const Int& p = u.ext()->base()->p();
  Int q1 = p * p - 1;
  if (mod(q1, 3) != 0) return true;
  return u.pow(q1 / 3).is_one();
}

bool u_qualifies(const Fp2& u, bool j0) {
  if (u.is_zero() || u.is_square()) return false;
  return !j0 || is_cube(u);
}

// Common tail: curve, maps and Psi constants for a chosen u.
void install_twist(TwistInstance& T, const GlvCurve& c, const Fp2& u) {
  const QuadExt* E = T.ext.get();
  const Int& p = c.p();
  T.u = u;
  T.j0 = c.info->id == Family::E2;
  Fp2 a = embed(E, c.curve.a), b = embed(E, c.curve.b);
  if (T.j0) {
    T.curve = Curve<Fp2>(a, u * b);
    T.phi_map.xn = embed_poly(E, c.endo.xn);
    T.phi_map.xd = embed_poly(E, c.endo.xd);
    T.phi_map.yn = embed_poly(E, c.endo.yn);
    T.phi_map.yd = embed_poly(E, c.endo.yd);
    T.psi_x = u.pow(Int((1 - p) / 3));
    T.psi_y = u.pow(Int((1 - p) / 2));
  } else {
    Fp2 u2 = u.sqr();
    T.curve = Curve<Fp2>(u2 * a, u2 * u * b);
    Fp2 ui = u.inv();
    auto scaled = [&](const std::vector<Fp>& poly, const Fp2& lead) {
      std::vector<Fp2> r;
      Fp2 w = lead;
      for (const Fp& x : poly) {
        r.push_back(embed(E, x) * w);
        w = w * ui;
      }
      return r;
    };
    // (x, y) -> (u f(x/u), y g(x/u))
    T.phi_map.xn = scaled(c.endo.xn, u);
    T.phi_map.xd = scaled(c.endo.xd, u.one());
    T.phi_map.yn = scaled(c.endo.yn, u.one());
    T.phi_map.yd = scaled(c.endo.yd, u.one());
    T.psi_x = u.pow(Int(1 - p));
    Fp2 half = u.pow(Int((1 - p) / 2));
    T.psi_y = half.sqr() * half;
  }
}

Int cofactor_split(const Int& N, Int& n) {
  for (int h = 1; h <= 4; ++h) {
    if (mod(N, h) != 0) continue;
    Int m = N / h;
    if (m > 4 && is_probable_prime(m)) {
      n = m;
      return h;
    }
  }
  throw NoLargePrimeSubgroup("order " + N.get_str() + " is not h n with h <= 4 and n prime");
}

template <class F>
Affine<F> find_generator(const Curve<F>& C, const Int& h, Rng& rng) {
  for (;;) {
    Affine<F> Q = scalar_mul_reference(C, h, random_point(C, rng));
    if (!Q.inf) return Q;
  }
}

}  // namespace

TwistInstance make_twist(const GlvCurve& c, Rng& rng, std::optional<std::pair<Int, Int>> u_in) {
  Uncounted uc;
  if (c.info->id == Family::E1) {
    throw UnsupportedFamily("E1 has Phi^2 = -1 = Psi^2; it needs a quartic twist");
  }
  TwistInstance T;
  T.base = c;
  T.ext = QuadExt::make(c.field);
  const QuadExt* E = T.ext.get();
  bool j0 = c.info->id == Family::E2;
  Fp2 u;
  if (u_in) {
    u = Fp2(E, u_in->first, u_in->second);
    if (!u_qualifies(u, j0)) {
      throw ResidueConditionFailed(j0 ? "u must be a non-square cube in F_{p^2}"
                                      : "u must be a non-square in F_{p^2}");
    }
  } else {
    for (Int k = 1;; ++k) {
      u = Fp2(E, k, Int(1));
      if (u_qualifies(u, j0)) break;
    }
  }
  install_twist(T, c, u);
  auto cands = cm_order_candidates(c.p(), c.info->disc, c.info->units, 2);
  Int N = find_group_order(T.curve, cands, rng);
  T.h = cofactor_split(N, T.n);
  T.curve.n = T.n;
  T.curve.h = T.h;
  T.P = find_generator(T.curve, T.h, rng);
  T.lambda = eigenvalue_solve<Fp2>(Int(c.info->r), Int(c.info->s), T.n, T.curve, T.P,
                                   [&](const Affine<Fp2>& Q) { return T.Phi(Q); });
  T.mu = eigenvalue_solve<Fp2>(Int(0), Int(1), T.n, T.curve, T.P,
                               [&](const Affine<Fp2>& Q) { return T.Psi(Q); });
  if (T.Psi(T.Psi(T.P)) != neg(T.P)) throw InvalidCurve("Psi^2 != -1 on the generator");
  return T;
}

TwistInstance rebuild_twist(const GlvCurve& c, const Int& beta, const std::pair<Int, Int>& u,
                            const Int& n,
                            const Int& h, const Int& lambda, const Int& mu,
                            const std::string& generator_hex) {
  Uncounted uc;
  if (c.info->id == Family::E1) throw UnsupportedFamily("E1 has no quadratic 4-GLV twist");
  TwistInstance T;
  T.base = c;
  T.ext = QuadExt::make(c.field, beta);
  Fp2 uu(T.ext.get(), u.first, u.second);
  if (!u_qualifies(uu, c.info->id == Family::E2)) throw InvalidCurve("u does not qualify");
  install_twist(T, c, uu);
  if (h < 1 || h > 4 || !is_probable_prime(n)) throw InvalidCurve("bad n or h");
  T.n = n;
  T.h = h;
  T.curve.n = n;
  T.curve.h = h;
  T.lambda = mod(lambda, n);
  T.mu = mod(mu, n);
  T.P = deserialize(T.curve, generator_hex);
  if (T.P.inf || !scalar_mul_reference(T.curve, n, T.P).inf) {
    throw InvalidCurve("generator does not have order n");
  }
  if (T.Phi(T.P) != scalar_mul_reference(T.curve, T.lambda, T.P)) {
    throw InvalidCurve("Phi(P) != lambda P");
  }
  if (T.Psi(T.P) != scalar_mul_reference(T.curve, T.mu, T.P)) {
    throw InvalidCurve("Psi(P) != mu P");
  }
  return T;
}

BaseInstance make_base_instance(const GlvCurve& c, Rng& rng) {
  Uncounted uc;
  BaseInstance B;
  B.base = c;
  B.curve = c.curve;
  auto cands = cm_order_candidates(c.p(), c.info->disc, c.info->units, 1);
  Int N = find_group_order(B.curve, cands, rng);
  B.h = cofactor_split(N, B.n);
  B.curve.n = B.n;
  B.curve.h = B.h;
  B.P = find_generator(B.curve, B.h, rng);
  B.lambda = eigenvalue_solve<Fp>(Int(c.info->r), Int(c.info->s), B.n, B.curve, B.P,
                                  [&](const Affine<Fp>& Q) { return B.Phi(Q); });
  return B;
}

BaseInstance rebuild_base(const GlvCurve& c, const Int& n, const Int& h, const Int& lambda,
                          const std::string& generator_hex) {
  Uncounted uc;
  BaseInstance B;
  B.base = c;
  B.curve = c.curve;
  if (h < 1 || h > 4 || !is_probable_prime(n)) throw InvalidCurve("bad n or h");
  B.n = n;
  B.h = h;
  B.curve.n = n;
  B.curve.h = h;
  B.lambda = mod(lambda, n);
  B.P = deserialize(B.curve, generator_hex);
  if (B.P.inf || !scalar_mul_reference(B.curve, n, B.P).inf) {
    throw InvalidCurve("generator does not have order n");
  }
  if (B.Phi(B.P) != scalar_mul_reference(B.curve, B.lambda, B.P)) {
    throw InvalidCurve("Phi(P) != lambda P");
  }
  return B;
}

TwistInstance reference_twist(Rng& rng) {
  Int p = (Int(1) << 127) - 58309;
  GlvCurve c = catalog_get(Family::E2, p, Int(9));
  return make_twist(c, rng, std::make_pair(Int(1), Int(1)));
}

BaseInstance reference_base(Rng& rng) {
  Int p = (Int(1) << 256) - 11733;
  GlvCurve c = catalog_get(Family::E2, p, Int(2));
  return make_base_instance(c, rng);
}

}  // namespace glv4
