#pragma once

#include <string>
#include <vector>

#include "glv4/arith.hpp"
#include "glv4/errors.hpp"

namespace glv4 {

// y^2 = x^3 + a x + b over F (Fp or Fp2).
template <class F>
struct Curve {
  F a, b;
  Int n = 0;  // prime subgroup order, 0 while unknown
  Int h = 0;  // cofactor, 0 while unknown

  Curve() = default;
  Curve(const F& a_, const F& b_, const Int& n_ = 0, const Int& h_ = 0)
      : a(a_), b(b_), n(n_), h(h_) {
    Uncounted u;
    F four = a.from_int(4), tws = a.from_int(27);
    if ((four * a.sqr() * a + tws * b.sqr()).is_zero()) {
      throw InvalidCurve("singular curve (4a^3 + 27b^2 = 0)");
    }
    if (h > 4) throw InvalidCurve("cofactor " + h.get_str() + " exceeds 4");
  }
  bool a_zero() const { return a.is_zero(); }
  F rhs(const F& x) const { return (x.sqr() + a) * x + b; }
};

template <class F>
struct Affine {
  F x, y;
  bool inf = true;

  static Affine infinity() { return Affine{}; }
  static Affine at(const F& x, const F& y) { return Affine{x, y, false}; }
  bool operator==(const Affine& o) const {
    if (inf || o.inf) return inf == o.inf;
    return x == o.x && y == o.y;
  }
  bool operator!=(const Affine& o) const { return !(*this == o); }
};

// (X : Y : Z) stands for (X/Z^2, Y/Z^3); any Z = 0 is the point at infinity.
template <class F>
struct Jacobian {
  F X, Y, Z;

  static Jacobian infinity(const F& like) { return {like.one(), like.one(), like.zero()}; }
  bool is_inf() const { return Z.is_zero(); }
};

// Jacobian point with Z^2 and Z^3 kept, the right operand of add_full.
template <class F>
struct Cached {
  F X, Y, Z, ZZ, ZZZ;
  bool is_inf() const { return Z.is_zero(); }
};

// ---------------------------------------------------------------- helpers

inline Fp random_like(const Fp& like, Rng& rng) {
  return Fp(like.field(), rng.below(like.field()->p()));
}
inline Fp2 random_like(const Fp2& like, Rng& rng) {
  const Int& p = like.ext()->base()->p();
  Int re = rng.below(p);
  Int im = rng.below(p);
  return Fp2(like.ext(), re, im);
}

// Inverse of Fp::hex / Fp2::hex.
inline Fp parse_like(const Fp& like, std::string_view hex) {
  if (hex.size() != 2 * like.field()->bytes()) throw FormatError("bad field element length");
  Int v = from_hex(hex);
  if (v >= like.field()->p()) throw FormatError("field element not reduced");
  return Fp(like.field(), v);
}
inline Fp2 parse_like(const Fp2& like, std::string_view hex) {
  std::size_t w = 2 * like.ext()->base()->bytes();
  if (hex.size() != 2 * w) throw FormatError("bad field element length");
  Fp re = parse_like(like.re(), hex.substr(0, w));
  Fp im = parse_like(like.re(), hex.substr(w));
  return Fp2(like.ext(), re, im);
}

// ---------------------------------------------------------------- predicates

template <class F>
bool is_on_curve(const Curve<F>& C, const Affine<F>& P) {
  if (P.inf) return true;
  Uncounted u;
  return P.y.sqr() == C.rhs(P.x);
}

template <class F>
bool is_on_curve(const Curve<F>& C, const Jacobian<F>& P) {
  if (P.is_inf()) return true;
  Uncounted u;
  F Z2 = P.Z.sqr();
  F Z4 = Z2.sqr();
  F Z6 = Z4 * Z2;
  return P.Y.sqr() == P.X.sqr() * P.X + C.a * P.X * Z4 + C.b * Z6;
}

// ---------------------------------------------------------------- affine

template <class F>
Affine<F> neg(const Affine<F>& P) {
  if (P.inf) return P;
  return Affine<F>::at(P.x, -P.y);
}

template <class F>
Affine<F> affine_dbl(const Curve<F>& C, const Affine<F>& P) {
  if (P.inf || P.y.is_zero()) return Affine<F>::infinity();
  F three = P.x.from_int(3);
  F l = (three * P.x.sqr() + C.a) * P.y.dbl().inv();
  F x3 = l.sqr() - P.x.dbl();
  F y3 = l * (P.x - x3) - P.y;
  return Affine<F>::at(x3, y3);
}

template <class F>
Affine<F> affine_add(const Curve<F>& C, const Affine<F>& P, const Affine<F>& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  if (P.x == Q.x) {
    if (P.y == Q.y) return affine_dbl(C, P);
    return Affine<F>::infinity();
  }
  F l = (Q.y - P.y) * (Q.x - P.x).inv();
  F x3 = l.sqr() - P.x - Q.x;
  F y3 = l * (P.x - x3) - P.y;
  return Affine<F>::at(x3, y3);
}

// Left-to-right double-and-add in affine coordinates. Independent of the
// Jacobian formulas so it can serve as an oracle for them.
template <class F>
Affine<F> scalar_mul_reference(const Curve<F>& C, const Int& k, const Affine<F>& P) {
  Affine<F> base = k < 0 ? neg(P) : P;
  Int e = abs(k);
  Affine<F> R = Affine<F>::infinity();
  for (std::size_t j = bitlen(e); j-- > 0;) {
    R = affine_dbl(C, R);
    if (mpz_tstbit(e.get_mpz_t(), j)) R = affine_add(C, R, base);
  }
  return R;
}

template <class F>
Affine<F> random_point(const Curve<F>& C, Rng& rng) {
  Uncounted u;
  for (;;) {
    F x = random_like(C.b, rng);
    auto y = C.rhs(x).sqrt();
    if (!y) continue;
    F yy = *y;
    if (rng.next_u64() & 1) yy = -yy;
    return Affine<F>::at(x, yy);
  }
}

// 04 || x || y with every coordinate padded to the field size; 00 for infinity.
template <class F>
std::string serialize(const Affine<F>& P) {
  if (P.inf) return "00";
  return "04" + P.x.hex() + P.y.hex();
}

template <class F>
Affine<F> deserialize(const Curve<F>& C, std::string_view hex) {
  if (hex == "00") return Affine<F>::infinity();
  if (hex.size() < 2 || hex.substr(0, 2) != "04" || (hex.size() - 2) % 2 != 0) {
    throw FormatError("point encoding must start with 04 or be 00");
  }
  std::size_t half = (hex.size() - 2) / 2;
  Affine<F> P = Affine<F>::at(parse_like(C.b, hex.substr(2, half)),
                              parse_like(C.b, hex.substr(2 + half)));
  if (!is_on_curve(C, P)) throw FormatError("point is not on the curve");
  return P;
}

// ---------------------------------------------------------------- Jacobian

template <class F>
Jacobian<F> to_jacobian(const Affine<F>& P, const F& like) {
  if (P.inf) return Jacobian<F>::infinity(like);
  return {P.x, P.y, like.one()};
}

template <class F>
Jacobian<F> neg(const Jacobian<F>& P) {
  return {P.X, -P.Y, P.Z};
}

// a = 0: 3m + 4s + 7a, computing (3X^2/2)^2 - 2XY^2 and friends, which is 2P
// scaled by 1/2. Branch-free; Z = 0 stays Z = 0.
template <class F>
Jacobian<F> dbl(const Curve<F>& C, const Jacobian<F>& P) {
  if (C.a_zero()) {
    F A = P.X.sqr();
    F B = P.Y.sqr();
    F Cc = (A + A + A).halve();
    F XB = P.X * B;
    F X3 = Cc.sqr() - (XB + XB);
    F Y3 = Cc * (XB - X3) - B.sqr();
    F Z3 = P.Y * P.Z;
    return {X3, Y3, Z3};
  }
  // generic a: dbl-2007-bl
  F XX = P.X.sqr();
  F YY = P.Y.sqr();
  F YYYY = YY.sqr();
  F ZZ = P.Z.sqr();
  F S = ((P.X + YY).sqr() - XX - YYYY).dbl();
  F M = XX + XX + XX + C.a * ZZ.sqr();
  F T = M.sqr() - S.dbl();
  F Y3 = M * (S - T) - YYYY.dbl().dbl().dbl();
  F Z3 = (P.Y + P.Z).sqr() - YY - ZZ;
  return {T, Y3, Z3};
}

// Jacobian + affine: 8m + 3s + 7a.
template <class F>
Jacobian<F> madd(const Curve<F>& C, const Jacobian<F>& P, const Affine<F>& Q) {
  if (Q.inf) return P;
  if (P.is_inf()) return to_jacobian(Q, P.X);
  F Z1Z1 = P.Z.sqr();
  F U2 = Q.x * Z1Z1;
  F S2 = Q.y * P.Z * Z1Z1;
  F H = U2 - P.X;
  F r = S2 - P.Y;
  if (H.is_zero()) {
    if (r.is_zero()) return dbl(C, P);
    return Jacobian<F>::infinity(P.X);
  }
  F HH = H.sqr();
  F HHH = H * HH;
  F V = P.X * HH;
  F X3 = r.sqr() - HHH - (V + V);
  F Y3 = r * (V - X3) - P.Y * HHH;
  F Z3 = P.Z * H;
  return {X3, Y3, Z3};
}

// 1m + 1s.
template <class F>
Cached<F> cache(const Jacobian<F>& P) {
  F ZZ = P.Z.sqr();
  return {P.X, P.Y, P.Z, ZZ, P.Z * ZZ};
}

// Jacobian + cached Jacobian: 11m + 3s + 7a.
template <class F>
Jacobian<F> add_full(const Curve<F>& C, const Jacobian<F>& P, const Cached<F>& Q) {
  if (Q.is_inf()) return P;
  if (P.is_inf()) return {Q.X, Q.Y, Q.Z};
  F Z1Z1 = P.Z.sqr();
  F U1 = P.X * Q.ZZ;
  F U2 = Q.X * Z1Z1;
  F S1 = P.Y * Q.ZZZ;
  F S2 = Q.Y * P.Z * Z1Z1;
  F H = U2 - U1;
  F r = S2 - S1;
  if (H.is_zero()) {
    if (r.is_zero()) return dbl(C, P);
    return Jacobian<F>::infinity(P.X);
  }
  F HH = H.sqr();
  F HHH = H * HH;
  F V = U1 * HH;
  F X3 = r.sqr() - HHH - (V + V);
  F Y3 = r * (V - X3) - S1 * HHH;
  F Z3 = P.Z * Q.Z * H;
  return {X3, Y3, Z3};
}

template <class F>
Jacobian<F> add_full(const Curve<F>& C, const Jacobian<F>& P, const Jacobian<F>& Q) {
  return add_full(C, P, cache(Q));
}

// 1i + 3m + 1s.
template <class F>
Affine<F> to_affine(const Jacobian<F>& P) {
  if (P.is_inf()) return Affine<F>::infinity();
  F zi = P.Z.inv();
  F zi2 = zi.sqr();
  F x = P.X * zi2;
  F zi3 = zi2 * zi;
  F y = P.Y * zi3;
  return Affine<F>::at(x, y);
}

// Montgomery's simultaneous inversion: one inversion for the whole batch.
template <class F>
std::vector<Affine<F>> batch_to_affine(const std::vector<Jacobian<F>>& pts) {
  std::vector<Affine<F>> out(pts.size());
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!pts[k].is_inf()) idx.push_back(k);
  }
  if (idx.empty()) return out;
  std::vector<F> prefix;
  prefix.reserve(idx.size());
  prefix.push_back(pts[idx[0]].Z);
  for (std::size_t j = 1; j < idx.size(); ++j) prefix.push_back(prefix.back() * pts[idx[j]].Z);
  F acc = prefix.back().inv();
  for (std::size_t j = idx.size(); j-- > 0;) {
    const Jacobian<F>& P = pts[idx[j]];
    F zi = j == 0 ? acc : acc * prefix[j - 1];
    if (j > 0) acc = acc * P.Z;
    F zi2 = zi.sqr();
    out[idx[j]] = Affine<F>::at(P.X * zi2, P.Y * (zi2 * zi));
  }
  return out;
}

template <class F>
bool same_point(const Jacobian<F>& P, const Jacobian<F>& Q) {
  if (P.is_inf() || Q.is_inf()) return P.is_inf() == Q.is_inf();
  Uncounted u;
  F PZ2 = P.Z.sqr(), QZ2 = Q.Z.sqr();
  return P.X * QZ2 == Q.X * PZ2 && P.Y * QZ2 * Q.Z == Q.Y * PZ2 * P.Z;
}

}  // namespace glv4
