#include "glv4/arith.hpp"

#include "glv4/errors.hpp"

namespace glv4 {

namespace detail {
thread_local OpCounter* tls_counter = nullptr;
}

using detail::tally;

OpCounter& OpCounter::operator+=(const OpCounter& o) {
  M += o.M; S += o.S; A += o.A; I += o.I;
  m += o.m; s += o.s; a += o.a; i += o.i;
  return *this;
}

OpCounter operator-(const OpCounter& x, const OpCounter& y) {
  OpCounter r;
  r.M = x.M - y.M; r.S = x.S - y.S; r.A = x.A - y.A; r.I = x.I - y.I;
  r.m = x.m - y.m; r.s = x.s - y.s; r.a = x.a - y.a; r.i = x.i - y.i;
  return r;
}

OpCounter* active_counter() { return detail::tls_counter; }

CountingScope::CountingScope(OpCounter* c) : prev_(detail::tls_counter) {
  detail::tls_counter = c;
}

CountingScope::~CountingScope() { detail::tls_counter = prev_; }

// ---------------------------------------------------------------- F_p

PrimeField::PrimeField(const Int& p)
    : p_(p), half_((p + 1) / 2), bytes_((bitlen(p) + 7) / 8) {}

std::shared_ptr<const PrimeField> PrimeField::make(const Int& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p)) {
    throw InvalidField("modulus " + to_hex(p) + " is not an odd prime");
  }
  return std::shared_ptr<const PrimeField>(new PrimeField(p));
}

namespace {

inline void same_field(const PrimeField* a, const PrimeField* b) {
  if (a == b && a) return;
  if (!a || !b || a->p() != b->p()) {
    throw ContextMismatch("operands belong to different prime fields");
  }
}

}  // namespace

Fp::Fp(const PrimeField* f, const Int& v) : f_(f) {
  if (!f) throw ContextMismatch("field element without a field");
  mpz_mod(v_.get_mpz_t(), v.get_mpz_t(), f->p().get_mpz_t());
}

Fp operator+(const Fp& x, const Fp& y) {
  same_field(x.f_, y.f_);
  tally(&OpCounter::A);
  Fp r;
  r.f_ = x.f_;
  mpz_add(r.v_.get_mpz_t(), x.v_.get_mpz_t(), y.v_.get_mpz_t());
  if (r.v_ >= x.f_->p()) r.v_ -= x.f_->p();
  return r;
}

Fp operator-(const Fp& x, const Fp& y) {
  same_field(x.f_, y.f_);
  tally(&OpCounter::A);
  Fp r;
  r.f_ = x.f_;
  mpz_sub(r.v_.get_mpz_t(), x.v_.get_mpz_t(), y.v_.get_mpz_t());
  if (r.v_ < 0) r.v_ += x.f_->p();
  return r;
}

Fp operator*(const Fp& x, const Fp& y) {
  same_field(x.f_, y.f_);
  tally(&OpCounter::M);
  Fp r;
  r.f_ = x.f_;
  mpz_mul(r.v_.get_mpz_t(), x.v_.get_mpz_t(), y.v_.get_mpz_t());
  mpz_mod(r.v_.get_mpz_t(), r.v_.get_mpz_t(), x.f_->p().get_mpz_t());
  return r;
}

Fp Fp::operator-() const {
  same_field(f_, f_);
  tally(&OpCounter::A);
  Fp r;
  r.f_ = f_;
  if (v_ != 0) r.v_ = f_->p() - v_;
  return r;
}

bool Fp::operator==(const Fp& y) const {
  same_field(f_, y.f_);
  return v_ == y.v_;
}

Fp Fp::sqr() const {
  same_field(f_, f_);
  tally(&OpCounter::S);
  Fp r;
  r.f_ = f_;
  mpz_mul(r.v_.get_mpz_t(), v_.get_mpz_t(), v_.get_mpz_t());
  mpz_mod(r.v_.get_mpz_t(), r.v_.get_mpz_t(), f_->p().get_mpz_t());
  return r;
}

Fp Fp::halve() const {
  same_field(f_, f_);
  tally(&OpCounter::A);
  Fp r;
  r.f_ = f_;
  r.v_ = v_;
  if (mpz_odd_p(r.v_.get_mpz_t())) r.v_ += f_->p();
  r.v_ >>= 1;
  return r;
}

Fp Fp::inv() const {
  same_field(f_, f_);
  if (v_ == 0) throw DivisionByZero("inverse of zero in F_p");
  tally(&OpCounter::I);
  Fp r;
  r.f_ = f_;
  mpz_invert(r.v_.get_mpz_t(), v_.get_mpz_t(), f_->p().get_mpz_t());
  return r;
}

Fp Fp::pow(const Int& e) const {
  same_field(f_, f_);
  return Fp(f_, powmod(v_, e, f_->p()));
}

bool Fp::is_square() const {
  same_field(f_, f_);
  return legendre(v_, f_->p()) >= 0;
}

std::optional<Fp> Fp::sqrt() const {
  same_field(f_, f_);
  auto r = sqrt_mod(v_, f_->p());
  if (!r) return std::nullopt;
  return Fp(f_, *r);
}

std::string Fp::hex() const {
  same_field(f_, f_);
  return to_hex_padded(v_, f_->bytes());
}

// ---------------------------------------------------------------- F_{p^2}

QuadExt::QuadExt(std::shared_ptr<const PrimeField> base, const Int& beta)
    : base_(std::move(base)),
      beta_(base_.get(), beta),
      beta_int_(beta),
      minus_one_(beta_.value() == base_->p() - 1) {}

std::shared_ptr<const QuadExt> QuadExt::make(std::shared_ptr<const PrimeField> base) {
  if (!base) throw InvalidField("missing base field");
  const Int& p = base->p();
  if (mod(p, 4) == 3) return make(base, Int(-1));
  Int b = 2;
  while (legendre(b, p) != -1) ++b;
  return make(base, b);
}

std::shared_ptr<const QuadExt> QuadExt::make(std::shared_ptr<const PrimeField> base,
                                             const Int& beta) {
  if (!base) throw InvalidField("missing base field");
  if (legendre(beta, base->p()) != -1) {
    throw InvalidField("beta = " + beta.get_str() + " is not a non-residue");
  }
  return std::shared_ptr<const QuadExt>(new QuadExt(std::move(base), beta));
}

std::shared_ptr<const QuadExt> QuadExt::make_ring(std::shared_ptr<const PrimeField> base,
                                                  const Int& beta) {
  if (!base) throw InvalidField("missing base field");
  return std::shared_ptr<const QuadExt>(new QuadExt(std::move(base), beta));
}

Fp2::Fp2(const QuadExt* e, const Fp& re, const Fp& im) : e_(e), re_(re), im_(im) {
  if (!e) throw ContextMismatch("extension element without a context");
  same_field(e->base(), re.field());
  same_field(e->base(), im.field());
}

Fp2::Fp2(const QuadExt* e, const Int& re, const Int& im)
    : Fp2(e, Fp(e ? e->base() : nullptr, re), Fp(e ? e->base() : nullptr, im)) {}

Fp2::Fp2(const QuadExt* e, const Fp& re) : Fp2(e, re, re.zero()) {}

Fp2 Fp2::zero() const { return Fp2(e_, re_.zero(), re_.zero()); }
Fp2 Fp2::one() const { return Fp2(e_, re_.one(), re_.zero()); }
Fp2 Fp2::from_int(const Int& v) const { return Fp2(e_, re_.from_int(v), re_.zero()); }

void Fp2::check(const Fp2& y) const {
  if (e_ == y.e_ && e_) return;
  if (!e_ || !y.e_ || e_->base()->p() != y.e_->base()->p() ||
      e_->beta() != y.e_->beta()) {
    throw ContextMismatch("operands belong to different quadratic extensions");
  }
}

Fp2 operator+(const Fp2& x, const Fp2& y) {
  x.check(y);
  tally(&OpCounter::a);
  Fp2 r;
  r.e_ = x.e_;
  r.re_ = x.re_ + y.re_;
  r.im_ = x.im_ + y.im_;
  return r;
}

Fp2 operator-(const Fp2& x, const Fp2& y) {
  x.check(y);
  tally(&OpCounter::a);
  Fp2 r;
  r.e_ = x.e_;
  r.re_ = x.re_ - y.re_;
  r.im_ = x.im_ - y.im_;
  return r;
}

// Karatsuba: 3M + 5A, plus one M for a general beta.
Fp2 operator*(const Fp2& x, const Fp2& y) {
  x.check(y);
  tally(&OpCounter::m);
  Fp t0 = x.re_ * y.re_;
  Fp t1 = x.im_ * y.im_;
  Fp t2 = (x.re_ + x.im_) * (y.re_ + y.im_);
  Fp2 r;
  r.e_ = x.e_;
  r.re_ = x.e_->beta_is_minus_one() ? t0 - t1 : t0 + x.e_->beta() * t1;
  r.im_ = t2 - t0 - t1;
  return r;
}

Fp2 Fp2::operator-() const {
  check(*this);
  tally(&OpCounter::a);
  Fp2 r;
  r.e_ = e_;
  r.re_ = -re_;
  r.im_ = -im_;
  return r;
}

bool Fp2::operator==(const Fp2& y) const {
  check(y);
  return re_ == y.re_ && im_ == y.im_;
}

Fp2 Fp2::sqr() const {
  check(*this);
  tally(&OpCounter::s);
  Fp2 r;
  r.e_ = e_;
  if (e_->beta_is_minus_one()) {
    r.re_ = (re_ + im_) * (re_ - im_);
    Fp t = re_ * im_;
    r.im_ = t + t;
  } else {
    r.re_ = re_.sqr() + e_->beta() * im_.sqr();
    Fp t = re_ * im_;
    r.im_ = t + t;
  }
  return r;
}

Fp2 Fp2::halve() const {
  check(*this);
  tally(&OpCounter::a);
  Fp2 r;
  r.e_ = e_;
  r.re_ = re_.halve();
  r.im_ = im_.halve();
  return r;
}

Fp2 Fp2::conj() const {
  check(*this);
  tally(&OpCounter::a);
  Fp2 r;
  r.e_ = e_;
  r.re_ = re_;
  r.im_ = -im_;
  return r;
}

Fp Fp2::norm() const {
  Uncounted u;
  return re_.sqr() - e_->beta() * im_.sqr();
}

Fp2 Fp2::inv() const {
  check(*this);
  if (is_zero()) throw DivisionByZero("inverse of zero in F_{p^2}");
  Fp n = e_->beta_is_minus_one() ? re_.sqr() + im_.sqr()
                                 : re_.sqr() - e_->beta() * im_.sqr();
  // Cannot vanish for a genuine non-residue; guard anyway.
  if (n.is_zero()) throw DivisionByZero("element has zero norm");
  tally(&OpCounter::i);
  Fp ni = n.inv();
  Fp2 r;
  r.e_ = e_;
  r.re_ = re_ * ni;
  r.im_ = -(im_ * ni);
  return r;
}

Fp2 Fp2::pow(const Int& e) const {
  check(*this);
  Uncounted u;
  if (e < 0) return inv().pow(-e);
  Fp2 result = one();
  Fp2 base = *this;
  std::size_t n = bitlen(e);
  for (std::size_t k = n; k-- > 0;) {
    result = result.sqr();
    if (mpz_tstbit(e.get_mpz_t(), k)) result = result * base;
  }
  return result;
}

bool Fp2::is_square() const {
  check(*this);
  return norm().is_square();
}

std::optional<Fp2> Fp2::sqrt() const {
  check(*this);
  Uncounted u;
  if (is_zero()) return *this;
  const Fp& beta = e_->beta();
  if (im_.is_zero()) {
    if (auto c = re_.sqrt()) return Fp2(e_, *c, re_.zero());
    // re = beta d^2
    if (auto d = (re_ * beta.inv()).sqrt()) return Fp2(e_, re_.zero(), *d);
    return std::nullopt;
  }
  auto n = norm().sqrt();
  if (!n) return std::nullopt;
  // c^2 = (re +- sqrt(N)) / 2, d = im / (2c)
  for (int sign : {1, -1}) {
    Fp c2 = (sign > 0 ? re_ + *n : re_ - *n).halve();
    auto c = c2.sqrt();
    if (!c || c->is_zero()) continue;
    Fp d = im_ * (c->dbl()).inv();
    Fp2 cand(e_, *c, d);
    if (cand.sqr() == *this) return cand;
  }
  return std::nullopt;
}

std::string Fp2::hex() const { return re_.hex() + im_.hex(); }

}  // namespace glv4
