#include "glv4/multiscalar.hpp"

#include <exception>
#include <functional>

#include "glv4/costmodel.hpp"

namespace glv4 {

std::size_t WnafDigits::nonzero() const {
  std::size_t c = 0;
  for (int d : digits) c += d != 0;
  return c;
}

WnafDigits wnaf_encode(const Int& k, int w) {
  if (w < 2 || w > 8) throw PreconditionFailed("wNAF width must be in [2, 8]");
  if (k < 0) throw PreconditionFailed("wNAF of a negative scalar");
  WnafDigits r;
  r.w = w;
  Int x = k;
  const long full = 1L << w, half = 1L << (w - 1);
  while (x != 0) {
    int d = 0;
    if (mpz_odd_p(x.get_mpz_t())) {
      long low = long(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(full)));
      d = int(low >= half ? low - full : low);
      x -= d;
    }
    r.digits.push_back(d);
    x >>= 1;
  }
  return r;
}

Int wnaf_value(const WnafDigits& d) {
  Int v = 0;
  for (std::size_t j = d.digits.size(); j-- > 0;) v = 2 * v + d.digits[j];
  return v;
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::non_glv: return "non-glv";
    case Mode::glv2: return "glv2";
    case Mode::glv4: return "glv4";
  }
  return "?";
}

Mode parse_mode(std::string_view s) {
  if (s == "non-glv" || s == "non_glv" || s == "nonglv") return Mode::non_glv;
  if (s == "glv2") return Mode::glv2;
  if (s == "glv4") return Mode::glv4;
  throw PreconditionFailed("unknown mode '" + std::string(s) + "'");
}

int mode_dim(Mode m) { return m == Mode::glv4 ? 4 : m == Mode::glv2 ? 2 : 1; }

const char* method_name(Method m) { return m == Method::lll ? "lll" : "cornacchia"; }

Method parse_method(std::string_view s) {
  if (s == "cornacchia") return Method::cornacchia;
  if (s == "lll") return Method::lll;
  throw PreconditionFailed("unknown method '" + std::string(s) + "'");
}

GlvContext GlvContext::make(const TwistInstance& inst, Method method, int w) {
  Uncounted quiet;
  GlvContext c;
  c.inst = &inst;
  c.w = w;
  c.method = method;
  const FamilyInfo& fi = inst.info();
  c.nu = cornacchia_z(inst.n, inst.mu, &c.egea);
  if (method == Method::cornacchia) {
    c.basis4 = cornacchia_zi(c.nu, inst.lambda, fi.r, fi.s, inst.n, &c.egea);
  } else {
    c.basis4 = lll_reduce(kernel_basis_raw(inst.n, inst.lambda, inst.mu));
  }
  c.basis2 = glv2_reduce(inst.n, inst.lambda);
  return c;
}

Decomposition GlvContext::decompose(const Int& k, Mode mode) const {
  switch (mode) {
    case Mode::glv4: return babai_decompose(k, basis4, Rounding::nearest);
    case Mode::glv2: return babai_decompose(k, basis2, Rounding::best_vertex);
    case Mode::non_glv: {
      Decomposition d;
      d.k = k;
      d.parts = {mod(k, inst->n), 0, 0, 0};
      d.rect_norm = d.parts[0];
      return d;
    }
  }
  throw PreconditionFailed("unknown mode");
}

std::size_t GlvContext::positions(Mode mode) const {
  std::size_t d = std::size_t(mode_dim(mode));
  return (bitlen(inst->n) + d - 1) / d + 1;
}

namespace {

// Runs body(i) for every stream, each on its own counter, optionally on
// OpenMP threads. Exceptions are rethrown after the loop.
void run_streams(int count, bool parallel, std::vector<OpCounter>& ops,
                 const std::function<void(int)>& body) {
  ops.assign(std::size_t(count), OpCounter{});
  std::vector<std::exception_ptr> err(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static, 1) if (parallel)
  for (int i = 0; i < count; ++i) {
    CountingScope scope(&ops[std::size_t(i)]);
    try {
      body(i);
    } catch (...) {
      err[std::size_t(i)] = std::current_exception();
    }
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
}

// Pairwise merge of the partial sums; returns the critical-path cost of the
// merge levels and adds everything to total.
template <class F, class Weight>
Jacobian<F> merge_tree(const Curve<F>& C, std::vector<Jacobian<F>> parts, OpCounter& critical,
                       OpCounter& total, ChainStats& chain, Weight weight) {
  while (parts.size() > 1) {
    std::vector<Jacobian<F>> next;
    OpCounter worst;
    for (std::size_t j = 0; j + 1 < parts.size(); j += 2) {
      OpCounter c;
      {
        CountingScope scope(&c);
        next.push_back(add_full(C, parts[j], parts[j + 1]));
      }
      total += c;
      if (weight(c) > weight(worst)) worst = c;
    }
    if (parts.size() % 2) next.push_back(parts.back());
    critical += worst;
    ++chain.add;
    parts = std::move(next);
  }
  return parts.front();
}

template <class Weight>
std::size_t slowest(const std::vector<OpCounter>& ops, Weight weight) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < ops.size(); ++i)
    if (weight(ops[i]) > weight(ops[best])) best = i;
  return best;
}

}  // namespace

MulResult glv_multiply(const Int& k_in, const GlvContext& ctx, Mode mode, int cores,
                       bool parallel) {
  const TwistInstance& I = *ctx.inst;
  const Curve<Fp2>& C = I.curve;
  int dim = mode_dim(mode);
  if (cores != 1 && cores != dim) {
    throw PreconditionFailed("cores must be 1 or the mode's dimension");
  }
  MulResult r;
  r.cores = cores;
  Int k = mod(k_in, I.n);
  r.dec = ctx.decompose(k, mode);
  if (k == 0) return r;

  std::vector<Int> sc(r.dec.parts.begin(), r.dec.parts.begin() + dim);
  std::size_t positions = ctx.positions(mode);
  auto phi = [&](const Affine<Fp2>& Q) { return I.Phi(Q); };
  auto psi = [&](const Affine<Fp2>& Q) { return I.Psi(Q); };
  auto weight = [](const OpCounter& c) { return weighted_ext(c); };

  if (cores == 1) {
    OpCounter ops;
    {
      CountingScope scope(&ops);
      std::vector<PrecompTable<Fp2>> tables;
      tables.push_back(precompute(C, I.P, ctx.w));
      std::size_t entries = tables[0].odd.size();
      if (dim >= 2) {
        tables.push_back(map_table(tables[0], phi));
        r.endo_maps += 1;
        r.endo_evals += unsigned(entries);
      }
      if (dim == 4) {
        tables.push_back(map_table(tables[0], psi));
        tables.push_back(map_table(tables[1], psi));
        r.endo_maps += 2;
        r.endo_evals += 2 * unsigned(entries);
      }
      std::vector<const PrecompTable<Fp2>*> tp;
      for (const auto& t : tables) tp.push_back(&t);
      r.point = to_affine(interleave(C, sc, tp, positions, &r.chain));
    }
    r.ops = r.total = ops;
    return r;
  }

  // One stream per sub-scalar, each on its own simulated core.
  std::vector<Jacobian<Fp2>> partial(std::size_t(dim), Jacobian<Fp2>::infinity(C.b));
  std::vector<ChainStats> chains(static_cast<std::size_t>(dim));
  std::vector<OpCounter> ops;
  run_streams(dim, parallel, ops, [&](int i) {
    Affine<Fp2> Q = I.P;
    if (i == 1 || i == 3) Q = I.Phi(Q);
    if (i >= 2) Q = I.Psi(Q);
    PrecompTable<Fp2> t = precompute(C, Q, ctx.w);
    partial[std::size_t(i)] = interleave(C, {sc[std::size_t(i)]}, {&t}, positions,
                                         &chains[std::size_t(i)]);
  });
  r.endo_evals = dim == 4 ? 4 : 1;
  for (const auto& o : ops) r.total += o;
  std::size_t s = slowest(ops, weight);
  r.ops = ops[s];
  r.chain = chains[s];
  Jacobian<Fp2> acc = merge_tree(C, partial, r.ops, r.total, r.chain, weight);
  OpCounter fin;
  {
    CountingScope scope(&fin);
    r.point = to_affine(acc);
  }
  r.ops += fin;
  r.total += fin;
  return r;
}

// ---- 2-GLV over F_p ----

namespace {

struct CachedTable {
  int w = 0;
  Affine<Fp> one;               // Q itself, for mixed additions
  std::vector<Cached<Fp>> odd;  // odd[j] = (2j + 1) Q; odd[0] is Q with Z = 1
};

CachedTable precompute_cached(const Curve<Fp>& C, const Affine<Fp>& Q, int w) {
  CachedTable t;
  t.w = w;
  t.one = Q;
  Fp one = C.b.one();
  t.odd.push_back({Q.x, Q.y, one, one, one});
  std::size_t size = std::size_t(1) << (w - 2);
  if (size == 1) return t;
  Jacobian<Fp> Q2 = dbl(C, to_jacobian(Q, C.b));
  Jacobian<Fp> T = madd(C, Q2, Q);
  t.odd.push_back(cache(T));
  if (size > 2) {
    Cached<Fp> c2 = cache(Q2);
    while (t.odd.size() < size) {
      T = add_full(C, T, c2);
      t.odd.push_back(cache(T));
    }
  }
  return t;
}

Jacobian<Fp> interleave_cached(const Curve<Fp>& C, const std::vector<Int>& scalars,
                               const std::vector<const CachedTable*>& tables,
                               std::size_t positions, ChainStats* stats) {
  std::vector<WnafDigits> naf;
  std::vector<int> sign;
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    naf.push_back(wnaf_encode(abs(scalars[i]), tables[i]->w));
    sign.push_back(scalars[i] < 0 ? -1 : 1);
    positions = std::max(positions, naf.back().digits.size());
  }
  ChainStats st;
  Jacobian<Fp> acc = Jacobian<Fp>::infinity(C.b);
  for (std::size_t j = positions; j-- > 0;) {
    if (j + 1 != positions) {
      acc = dbl(C, acc);
      ++st.dbl;
    }
    for (std::size_t i = 0; i < naf.size(); ++i) {
      if (j >= naf[i].digits.size()) continue;
      int d = naf[i].digits[j];
      if (d == 0) continue;
      bool negative = (d < 0) != (sign[i] < 0);
      std::size_t idx = std::size_t(d < 0 ? -d : d) >> 1;
      if (idx == 0) {
        Affine<Fp> pt = negative ? neg(tables[i]->one) : tables[i]->one;
        if (acc.is_inf()) {
          acc = to_jacobian(pt, C.b);
        } else {
          acc = madd(C, acc, pt);
          ++st.madd;
        }
      } else {
        Cached<Fp> c = tables[i]->odd[idx];
        if (negative) c.Y = -c.Y;
        if (acc.is_inf()) {
          acc = {c.X, c.Y, c.Z};
        } else {
          acc = add_full(C, acc, c);
          ++st.add;
        }
      }
    }
  }
  if (stats) *stats += st;
  return acc;
}

// Phi(x, y) = (cx x, cy y), the shape of the j = 0 and j = 1728 maps and the
// only one the cached table can carry without inversions.
struct LinearEndo {
  Fp cx, cy;

  static LinearEndo of(const BaseInstance& inst) {
    const auto& e = inst.base.endo;
    bool ok = e.xn.size() == 2 && e.xn[0].is_zero() && e.xd.size() == 1 && e.xd[0].is_one() &&
              e.yn.size() == 1 && e.yd.size() == 1 && e.yd[0].is_one();
    if (!ok) throw UnsupportedFamily("F_p 2-GLV needs Phi(x, y) = (cx x, cy y)");
    return {e.xn[1], e.yn[0]};
  }
  static Fp scale(const Fp& c, const Fp& v) {
    if (c.is_one()) return v;
    if ((c + c.one()).is_zero()) return -v;
    return c * v;
  }
  Affine<Fp> apply(const Affine<Fp>& P) const {
    return Affine<Fp>::at(scale(cx, P.x), scale(cy, P.y));
  }
};

CachedTable phi_table(const CachedTable& t, const LinearEndo& e) {
  CachedTable r = t;
  r.one = e.apply(t.one);
  r.odd[0].X = r.one.x;
  r.odd[0].Y = r.one.y;
  for (std::size_t j = 1; j < r.odd.size(); ++j) {
    r.odd[j].X = LinearEndo::scale(e.cx, t.odd[j].X);
    r.odd[j].Y = LinearEndo::scale(e.cy, t.odd[j].Y);
  }
  return r;
}

}  // namespace

BaseGlvContext BaseGlvContext::make(const BaseInstance& inst, int w) {
  Uncounted quiet;
  LinearEndo::of(inst);
  BaseGlvContext c;
  c.inst = &inst;
  c.w = w;
  c.basis2 = glv2_reduce(inst.n, inst.lambda);
  return c;
}

std::size_t BaseGlvContext::positions() const { return (bitlen(inst->n) + 1) / 2 + 1; }

BaseMulResult glv2_base_multiply(const Int& k_in, const BaseGlvContext& ctx, int cores,
                                 bool parallel) {
  const BaseInstance& I = *ctx.inst;
  const Curve<Fp>& C = I.curve;
  if (cores != 1 && cores != 2) throw PreconditionFailed("cores must be 1 or 2");
  BaseMulResult r;
  r.cores = cores;
  Int k = mod(k_in, I.n);
  r.dec = babai_decompose(k, ctx.basis2, Rounding::best_vertex);
  if (k == 0) return r;
  LinearEndo endo = LinearEndo::of(I);
  std::vector<Int> sc{r.dec.parts[0], r.dec.parts[1]};
  auto weight = [](const OpCounter& c) { return weighted_base(c); };

  if (cores == 1) {
    OpCounter ops;
    {
      CountingScope scope(&ops);
      CachedTable t0 = precompute_cached(C, I.P, ctx.w);
      CachedTable t1 = phi_table(t0, endo);
      r.point = to_affine(interleave_cached(C, sc, {&t0, &t1}, ctx.positions(), &r.chain));
    }
    r.ops = r.total = ops;
    return r;
  }

  std::vector<Jacobian<Fp>> partial(2, Jacobian<Fp>::infinity(C.b));
  std::vector<ChainStats> chains(2);
  std::vector<OpCounter> ops;
  run_streams(2, parallel, ops, [&](int i) {
    Affine<Fp> Q = I.P;
    if (i == 1) Q = endo.apply(Q);
    CachedTable t = precompute_cached(C, Q, ctx.w);
    partial[std::size_t(i)] = interleave_cached(C, {sc[std::size_t(i)]}, {&t}, ctx.positions(),
                                                &chains[std::size_t(i)]);
  });
  for (const auto& o : ops) r.total += o;
  std::size_t s = slowest(ops, weight);
  r.ops = ops[s];
  r.chain = chains[s];
  Jacobian<Fp> acc = merge_tree(C, partial, r.ops, r.total, r.chain, weight);
  OpCounter fin;
  {
    CountingScope scope(&fin);
    r.point = to_affine(acc);
  }
  r.ops += fin;
  r.total += fin;
  return r;
}

}  // namespace glv4
