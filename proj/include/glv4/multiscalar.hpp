#pragma once

#include <string_view>
#include <vector>

#include "glv4/catalog.hpp"
#include "glv4/curve.hpp"
#include "glv4/lattice.hpp"

namespace glv4 {

// Signed digits, least significant first.
struct WnafDigits {
  std::vector<int> digits;
  int w = 0;

  std::size_t nonzero() const;
};

// Width-w NAF of k >= 0, 2 <= w <= 8. Throws PreconditionFailed.
WnafDigits wnaf_encode(const Int& k, int w);
Int wnaf_value(const WnafDigits& d);

// {1, 3, ..., 2^(w-1) - 1} Q in affine form.
template <class F>
struct PrecompTable {
  int w = 0;
  std::vector<Affine<F>> odd;

  // Entries beyond Q itself.
  std::size_t precomputed() const { return odd.empty() ? 0 : odd.size() - 1; }
};

// Q, 2Q, 3Q = 2Q + Q, then repeated + 2Q with 2Q cached, one batch inversion.
template <class F>
PrecompTable<F> precompute(const Curve<F>& C, const Affine<F>& Q, int w) {
  PrecompTable<F> t;
  t.w = w;
  std::size_t size = std::size_t(1) << (w - 2);
  t.odd.push_back(Q);
  if (size == 1) return t;
  Jacobian<F> Q2 = dbl(C, to_jacobian(Q, C.b));
  std::vector<Jacobian<F>> chain;
  chain.push_back(madd(C, Q2, Q));
  if (size > 2) {
    Cached<F> c2 = cache(Q2);
    while (chain.size() + 1 < size) chain.push_back(add_full(C, chain.back(), c2));
  }
  for (auto& P : batch_to_affine(chain)) t.odd.push_back(P);
  return t;
}

// Applies an endomorphism entry by entry: f(jQ) = j f(Q).
template <class F, class Fn>
PrecompTable<F> map_table(const PrecompTable<F>& t, Fn&& f) {
  PrecompTable<F> r;
  r.w = t.w;
  for (const auto& P : t.odd) r.odd.push_back(f(P));
  return r;
}

struct ChainStats {
  std::uint64_t dbl = 0;
  std::uint64_t madd = 0;
  std::uint64_t add = 0;

  ChainStats& operator+=(const ChainStats& o) {
    dbl += o.dbl; madd += o.madd; add += o.add;
    return *this;
  }
};

// Shared doubling chain over max(positions, longest wNAF) digit positions;
// one doubling between consecutive positions, so positions - 1 in total.
// Negative scalars and digits use the negated table entry.
template <class F>
Jacobian<F> interleave(const Curve<F>& C, const std::vector<Int>& scalars,
                       const std::vector<const PrecompTable<F>*>& tables, std::size_t positions,
                       ChainStats* stats = nullptr) {
  if (scalars.size() != tables.size()) throw DimensionMismatch("one table per scalar");
  std::vector<WnafDigits> naf;
  std::vector<int> sign;
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    naf.push_back(wnaf_encode(abs(scalars[i]), tables[i]->w));
    sign.push_back(scalars[i] < 0 ? -1 : 1);
    positions = std::max(positions, naf.back().digits.size());
  }
  ChainStats st;
  Jacobian<F> acc = Jacobian<F>::infinity(C.b);
  for (std::size_t j = positions; j-- > 0;) {
    if (j + 1 != positions) {
      acc = dbl(C, acc);
      ++st.dbl;
    }
    for (std::size_t i = 0; i < naf.size(); ++i) {
      if (j >= naf[i].digits.size()) continue;
      int d = naf[i].digits[j];
      if (d == 0) continue;
      const Affine<F>& T = tables[i]->odd[static_cast<std::size_t>(d < 0 ? -d : d) >> 1];
      bool negative = (d < 0) != (sign[i] < 0);
      Affine<F> pt = negative ? neg(T) : T;
      if (acc.is_inf()) {
        acc = to_jacobian(pt, C.b);
      } else {
        acc = madd(C, acc, pt);
        ++st.madd;
      }
    }
  }
  if (stats) *stats += st;
  return acc;
}

// sum scalars[i] points[i] for 1, 2 or 4 terms. Throws DimensionMismatch.
template <class F>
Affine<F> msm_interleaved(const Curve<F>& C, const std::vector<Int>& scalars,
                          const std::vector<Affine<F>>& points, int w = 5,
                          ChainStats* stats = nullptr) {
  std::size_t d = scalars.size();
  if (d != points.size() || (d != 1 && d != 2 && d != 4)) {
    throw DimensionMismatch("msm_interleaved takes 1, 2 or 4 matching scalars and points");
  }
  std::vector<PrecompTable<F>> tables;
  for (const auto& P : points) tables.push_back(precompute(C, P, w));
  std::vector<const PrecompTable<F>*> tp;
  for (const auto& t : tables) tp.push_back(&t);
  return to_affine(interleave(C, scalars, tp, 0, stats));
}

enum class Mode { non_glv, glv2, glv4 };
enum class Method { cornacchia, lll };

const char* mode_name(Mode m);
Mode parse_mode(std::string_view s);  // non-glv | glv2 | glv4
int mode_dim(Mode m);
const char* method_name(Method m);
Method parse_method(std::string_view s);  // cornacchia | lll

// Everything that depends only on the instance: both reduced bases.
struct GlvContext {
  const TwistInstance* inst = nullptr;
  int w = 5;
  Method method = Method::cornacchia;
  GaussianInt nu;
  DecompBasis basis4, basis2;
  EgeaStats egea;

  static GlvContext make(const TwistInstance& inst, Method method = Method::cornacchia,
                         int w = 5);
  Decomposition decompose(const Int& k, Mode mode) const;
  // ceil(bitlen(n) / dim) + 1 digit positions, i.e. that many doublings + 1.
  std::size_t positions(Mode mode) const;
};

struct MulResult {
  Affine<Fp2> point;
  OpCounter ops;    // the whole run on one core, the critical path otherwise
  OpCounter total;  // all work over all cores
  ChainStats chain;  // doublings and additions on the critical path
  Decomposition dec;
  unsigned endo_maps = 0;   // whole-table applications of Phi, Psi, Psi Phi
  unsigned endo_evals = 0;  // single point evaluations
  int cores = 1;
};

// kP on the twist. cores is 1 or the mode's dimension; with more than one
// core every stream builds its own table and chain and the partial sums are
// merged pairwise. parallel runs the streams on OpenMP threads.
MulResult glv_multiply(const Int& k, const GlvContext& ctx, Mode mode, int cores = 1,
                       bool parallel = false);

// Classic 2-GLV over F_p with an inversion-free table: affine P for digits
// +-1, cached Jacobian multiples for the rest. Needs Phi(x, y) = (cx x, cy y)
// (E1, E2); other families throw UnsupportedFamily.
struct BaseGlvContext {
  const BaseInstance* inst = nullptr;
  int w = 5;
  DecompBasis basis2;

  static BaseGlvContext make(const BaseInstance& inst, int w = 5);
  std::size_t positions() const;
};

struct BaseMulResult {
  Affine<Fp> point;
  OpCounter ops, total;
  ChainStats chain;
  Decomposition dec;
  int cores = 1;
};

BaseMulResult glv2_base_multiply(const Int& k, const BaseGlvContext& ctx, int cores = 1,
                                 bool parallel = false);

}  // namespace glv4
