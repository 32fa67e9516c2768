#include "glv4/bigint.hpp"

#include <cmath>

#include "glv4/errors.hpp"

namespace glv4 {

std::string to_hex(const Int& x) {
  return x.get_str(16);
}

std::string to_hex_padded(const Int& x, std::size_t bytes) {
  std::string h = x.get_str(16);
  if (x < 0 || h.size() > 2 * bytes) {
    throw FormatError("value does not fit in " + std::to_string(bytes) + " bytes");
  }
  return std::string(2 * bytes - h.size(), '0') + h;
}

namespace {

Int parse_base(std::string_view s, int base, bool allow_prefix) {
  std::string t(s);
  bool neg = false;
  std::size_t pos = 0;
  if (pos < t.size() && (t[pos] == '-' || t[pos] == '+')) {
    neg = t[pos] == '-';
    ++pos;
  }
  if (allow_prefix && t.size() >= pos + 2 && t[pos] == '0' &&
      (t[pos + 1] == 'x' || t[pos + 1] == 'X')) {
    pos += 2;
  }
  std::string digits = t.substr(pos);
  if (digits.empty()) throw FormatError("empty integer literal '" + t + "'");
  Int r;
  if (r.set_str(digits, base) != 0) {
    throw FormatError("malformed integer literal '" + t + "'");
  }
  return neg ? Int(-r) : r;
}

}  // namespace

Int from_hex(std::string_view s) { return parse_base(s, 16, true); }
Int from_dec(std::string_view s) { return parse_base(s, 10, false); }

std::size_t bitlen(const Int& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int powmod(const Int& base, const Int& exp, const Int& m) {
  Int r;
  if (exp < 0) {
    Int inv = invmod(base, m);
    Int e = -exp;
    mpz_powm(r.get_mpz_t(), inv.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  } else {
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  }
  return r;
}

Int invmod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw DivisionByZero("element not invertible modulo " + to_hex(m));
  }
  return r;
}

Int isqrt(const Int& x) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

bool is_perfect_square(const Int& x) {
  return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

bool is_probable_prime(const Int& x) {
  return x > 1 && mpz_probab_prime_p(x.get_mpz_t(), 32) != 0;
}

int legendre(const Int& a, const Int& p) {
  Int r = mod(a, p);
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

std::optional<Int> sqrt_mod(const Int& a_in, const Int& p) {
  Int a = mod(a_in, p);
  if (a == 0) return Int(0);
  if (p == 2) return a;
  if (legendre(a, p) != 1) return std::nullopt;
  if (mod(p, 4) == 3) {
    return powmod(a, (p + 1) / 4, p);
  }
  // p - 1 = q * 2^e with q odd
  Int q = p - 1;
  unsigned long e = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q >>= 1;
    ++e;
  }
  Int z = 2;
  while (legendre(z, p) != -1) ++z;
  Int c = powmod(z, q, p);
  Int x = powmod(a, (q + 1) / 2, p);
  Int t = powmod(a, q, p);
  unsigned long m = e;
  while (t != 1) {
    unsigned long i = 0;
    Int t2 = t;
    while (t2 != 1) {
      t2 = mod(t2 * t2, p);
      ++i;
    }
    Int b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = mod(b * b, p);
    x = mod(x * b, p);
    c = mod(b * b, p);
    t = mod(t * c, p);
    m = i;
  }
  return x;
}

Int floor_div(const Int& num, const Int& den) {
  if (den == 0) throw DivisionByZero("floor_div by zero");
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Int round_div(const Int& num, const Int& den) {
  if (den == 0) throw DivisionByZero("round_div by zero");
  // floor((2*num + den) / (2*den)) with the sign of den folded into num.
  Int n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Int t = 2 * n + d;
  Int dd = 2 * d;
  return floor_div(t, dd);
}

Int abs(const Int& x) {
  Int r;
  mpz_abs(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

double log_abs(const Int& x) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), state_(gmp_randinit_mt) {
  state_.seed(Int(std::to_string(seed)));
}

Int Rng::below(const Int& bound) {
  if (bound <= 0) throw PreconditionFailed("Rng::below needs a positive bound");
  return state_.get_z_range(bound);
}

Int Rng::between(const Int& lo, const Int& hi) {
  return lo + below(hi - lo + 1);
}

Int Rng::bits(std::size_t nbits) {
  return state_.get_z_bits(static_cast<mp_bitcnt_t>(nbits));
}

std::uint64_t Rng::next_u64() {
  Int r = state_.get_z_bits(64);
  return std::stoull(r.get_str(16), nullptr, 16);
}

}  // namespace glv4
