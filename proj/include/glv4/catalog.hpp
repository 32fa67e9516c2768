#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glv4/arith.hpp"
#include "glv4/curve.hpp"

namespace glv4 {

enum class Family { E1 = 1, E2, E3, E4, E5, E6 };

struct FamilyInfo {
  Family id;
  const char* name;
  int r, s;      // phi^2 + r phi + s = 0
  int disc;      // discriminant of the maximal order containing Z[phi]
  int units;     // unit count of that order, 4 for j = 1728, 6 for j = 0, else 2
  const char* condition;
  const char* equation;
  const char* endomorphism;
};

const std::vector<FamilyInfo>& families();
const FamilyInfo& family_info(Family f);
// "E1".."E6", case-insensitive. Throws UnsupportedFamily.
Family parse_family(std::string_view s);

// (x, y) -> (xn(x)/xd(x), y * yn(x)/yd(x)); coefficients lowest degree first.
template <class F>
struct RationalMap {
  std::vector<F> xn, xd, yn, yd;
};

template <class F>
F horner(const std::vector<F>& c, const F& x) {
  F acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc = acc * x;
    if (!c[k].is_zero()) acc = acc + c[k];
  }
  return acc;
}

namespace detail {
template <class F>
bool is_const_one(const std::vector<F>& c) {
  return c.size() == 1 && c[0].is_one();
}
}  // namespace detail

// Throws PoleAtInput when a denominator vanishes at x(P).
template <class F>
Affine<F> endo_eval(const RationalMap<F>& e, const Affine<F>& P) {
  if (P.inf) return P;
  F x = horner(e.xn, P.x);
  if (!detail::is_const_one(e.xd)) {
    F d = horner(e.xd, P.x);
    if (d.is_zero()) throw PoleAtInput("x-denominator vanishes");
    x = x * d.inv();
  }
  F y = P.y;
  bool num_one = detail::is_const_one(e.yn), den_one = detail::is_const_one(e.yd);
  if (!(num_one && den_one)) {
    F f = num_one ? P.y.one() : horner(e.yn, P.x);
    if (!den_one) {
      F d = horner(e.yd, P.x);
      if (d.is_zero()) throw PoleAtInput("y-denominator vanishes");
      f = f * d.inv();
    }
    y = y * f;
  }
  return Affine<F>::at(x, y);
}

// A catalog curve over F_p, moved to short Weierstrass form when the
// published equation is not.
struct GlvCurve {
  const FamilyInfo* info = nullptr;
  std::shared_ptr<const PrimeField> field;
  Fp c3, c2, c1, c0;  // published form y^2 = c3 x^3 + c2 x^2 + c1 x + c0
  Curve<Fp> curve;    // y^2 = x^3 + a x + b, via X = c3 x + c2/3, Y = c3 y
  RationalMap<Fp> endo;
  Fp root;            // the square or cube root the map was built from
  Int coeff;          // free coefficient of E1 / E2 (a resp. b), else 0

  const Int& p() const { return field->p(); }
  Affine<Fp> phi(const Affine<Fp>& P) const { return endo_eval(endo, P); }
  // Maps a short-form point back to the published equation.
  std::pair<Fp, Fp> to_published(const Affine<Fp>& P) const;
  bool on_published(const Fp& x, const Fp& y) const;
};

// coeff sets a for E1 (default 1) and b for E2 (default 9); ignored otherwise.
// root forces the root choice, as read back from an instance file.
GlvCurve catalog_get(Family f, const Int& p, std::optional<Int> coeff = std::nullopt,
                     std::optional<Int> root = std::nullopt);

// Trace candidates p^deg + 1 - Tr(eps pi^deg) over the units eps, where
// 4p = t^2 + |disc| v^2 and pi = (t + v sqrt(disc)) / 2. Sorted, unique.
std::vector<Int> cm_order_candidates(const Int& p, int disc, int units, int degree);

// Exhaustive count for tiny fields; tests and ambiguity fallback only.
template <class F>
Int count_points_naive(const Curve<F>& C);

// Unique candidate N with N Q = infinity for 20 random Q. Throws
// AmbiguousOrder, or InvalidCurve when no candidate fits.
template <class F>
Int find_group_order(const Curve<F>& C, const std::vector<Int>& candidates, Rng& rng);

// Roots of X^2 + rX + s mod n, ascending. Throws NoRoot.
std::vector<Int> quadratic_roots(const Int& r, const Int& s, const Int& n);

// The root e with endo(P) = eP. Throws NoRoot or NeitherRootMatches.
template <class F>
Int eigenvalue_solve(const Int& r, const Int& s, const Int& n, const Curve<F>& C,
                     const Affine<F>& P, const std::function<Affine<F>(const Affine<F>&)>& endo);

// Quadratic twist E'/F_{p^2} with Phi and Psi.
struct TwistInstance {
  GlvCurve base;
  std::shared_ptr<const QuadExt> ext;
  Fp2 u;
  bool j0 = false;  // E2 twisted as y^2 = x^3 + u b with u a non-square cube
  Curve<Fp2> curve;
  RationalMap<Fp2> phi_map;
  Fp2 psi_x, psi_y;  // Psi(x, y) = (psi_x x^p, psi_y y^p)
  Affine<Fp2> P;
  Int n, h, lambda, mu;

  const FamilyInfo& info() const { return *base.info; }
  const Int& p() const { return base.p(); }
  // A pole of the rational map falls back to lambda Q, exact on the
  // order-n subgroup.
  Affine<Fp2> Phi(const Affine<Fp2>& Q) const {
    try {
      return endo_eval(phi_map, Q);
    } catch (const PoleAtInput&) {
      return scalar_mul_reference(curve, lambda, Q);
    }
  }
  Affine<Fp2> Psi(const Affine<Fp2>& Q) const {
    if (Q.inf) return Q;
    return Affine<Fp2>::at(psi_x * Q.x.conj(), psi_y * Q.y.conj());
  }
};

// Builds the twist, its order, a generator and both eigenvalues. u defaults
// to the first c + t (c = 1, 2, ...) that qualifies: a non-square, and for E2
// also a cube. Throws UnsupportedFamily for E1, NoLargePrimeSubgroup when the
// order is not h n with h <= 4 and n prime.
TwistInstance make_twist(const GlvCurve& c, Rng& rng,
                         std::optional<std::pair<Int, Int>> u = std::nullopt);

// Rebuilds a twist from stored data, checking every invariant. Throws
// InvalidCurve on any mismatch.
TwistInstance rebuild_twist(const GlvCurve& c, const Int& beta, const std::pair<Int, Int>& u,
                            const Int& n,
                            const Int& h, const Int& lambda, const Int& mu,
                            const std::string& generator_hex);

// A GLV curve over F_p itself, for the classic 2-dimensional method.
struct BaseInstance {
  GlvCurve base;
  Curve<Fp> curve;
  Affine<Fp> P;
  Int n, h, lambda;

  const FamilyInfo& info() const { return *base.info; }
  const Int& p() const { return base.p(); }
  Affine<Fp> Phi(const Affine<Fp>& Q) const {
    try {
      return endo_eval(base.endo, Q);
    } catch (const PoleAtInput&) {
      return scalar_mul_reference(curve, lambda, Q);
    }
  }
};

BaseInstance make_base_instance(const GlvCurve& c, Rng& rng);
BaseInstance rebuild_base(const GlvCurve& c, const Int& n, const Int& h, const Int& lambda,
                          const std::string& generator_hex);

// The instance of the worked example: E2, b = 9, p = 2^127 - 58309, u = 1 + i.
TwistInstance reference_twist(Rng& rng);
// E2, b = 2 over p = 2^256 - 11733.
BaseInstance reference_base(Rng& rng);

}  // namespace glv4
