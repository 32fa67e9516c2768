#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "glv4/bigint.hpp"

namespace glv4 {

// Operation tallies. Upper-case fields are F_p operations, lower-case ones
// are F_{p^2} operations. An F_{p^2} operation also books the F_p work it is
// made of, so both levels stay consistent.
struct OpCounter {
  std::uint64_t M = 0, S = 0, A = 0, I = 0;
  std::uint64_t m = 0, s = 0, a = 0, i = 0;

  OpCounter& operator+=(const OpCounter& o);
  friend OpCounter operator+(OpCounter x, const OpCounter& y) { return x += y; }
  friend OpCounter operator-(const OpCounter& x, const OpCounter& y);
  bool operator==(const OpCounter&) const = default;
  void reset() { *this = OpCounter{}; }
};

// The counter receiving tallies on this thread, or nullptr.
OpCounter* active_counter();

// Routes this thread's tallies into `c` for the lifetime of the scope. Scopes
// nest; only the innermost one is charged. Passing nullptr suspends counting.
class CountingScope {
 public:
  explicit CountingScope(OpCounter* c);
  ~CountingScope();
  CountingScope(const CountingScope&) = delete;
  CountingScope& operator=(const CountingScope&) = delete;

 private:
  OpCounter* prev_;
};

// Setup work (exponentiation, square roots, random sampling) is not part of
// any cost figure.
struct Uncounted : CountingScope {
  Uncounted() : CountingScope(nullptr) {}
};

namespace detail {
extern thread_local OpCounter* tls_counter;
inline void tally(std::uint64_t OpCounter::*f) {
  if (tls_counter) ++(tls_counter->*f);
}
}  // namespace detail

class PrimeField {
 public:
  // Throws InvalidField unless p is an odd probable prime.
  static std::shared_ptr<const PrimeField> make(const Int& p);

  const Int& p() const { return p_; }
  // (p + 1) / 2, the inverse of 2.
  const Int& half() const { return half_; }
  std::size_t bytes() const { return bytes_; }

 private:
  explicit PrimeField(const Int& p);
  Int p_, half_;
  std::size_t bytes_;
};

class Fp {
 public:
  Fp() = default;
  Fp(const PrimeField* f, const Int& v);  // reduces v mod p
  static Fp zero(const PrimeField* f) { return Fp(f, Int(0)); }
  static Fp one(const PrimeField* f) { return Fp(f, Int(1)); }

  const PrimeField* field() const { return f_; }
  const Int& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp zero() const { return Fp(f_, Int(0)); }
  Fp one() const { return Fp(f_, Int(1)); }
  Fp from_int(const Int& v) const { return Fp(f_, v); }

  friend Fp operator+(const Fp& x, const Fp& y);
  friend Fp operator-(const Fp& x, const Fp& y);
  friend Fp operator*(const Fp& x, const Fp& y);
  Fp operator-() const;
  Fp& operator+=(const Fp& y) { return *this = *this + y; }
  Fp& operator-=(const Fp& y) { return *this = *this - y; }
  Fp& operator*=(const Fp& y) { return *this = *this * y; }
  bool operator==(const Fp& y) const;
  bool operator!=(const Fp& y) const { return !(*this == y); }

  Fp sqr() const;
  Fp dbl() const { return *this + *this; }
  Fp halve() const;
  // Throws DivisionByZero for zero.
  Fp inv() const;
  // Uncounted.
  Fp pow(const Int& e) const;
  bool is_square() const;
  std::optional<Fp> sqrt() const;
  // Frobenius is the identity on F_p.
  Fp conj() const { return *this; }

  std::string hex() const;

 private:
  const PrimeField* f_ = nullptr;
  Int v_;
};

inline Fp fp_add(const Fp& x, const Fp& y) { return x + y; }
inline Fp fp_sub(const Fp& x, const Fp& y) { return x - y; }
inline Fp fp_mul(const Fp& x, const Fp& y) { return x * y; }
inline Fp fp_sqr(const Fp& x) { return x.sqr(); }
inline Fp fp_inv(const Fp& x) { return x.inv(); }

// F_p[t] / (t^2 - beta).
class QuadExt {
 public:
  // beta = -1 when p = 3 mod 4, otherwise the smallest positive non-residue.
  static std::shared_ptr<const QuadExt> make(std::shared_ptr<const PrimeField> base);
  // Explicit non-residue; throws InvalidField if beta is a square.
  static std::shared_ptr<const QuadExt> make(std::shared_ptr<const PrimeField> base,
                                             const Int& beta);
  // No residue check: F_p[t] / (t^2 - beta) may be a split ring with zero
  // divisors. For toy arithmetic only; inversion of a zero-norm element
  // throws DivisionByZero.
  static std::shared_ptr<const QuadExt> make_ring(std::shared_ptr<const PrimeField> base,
                                                  const Int& beta);

  const PrimeField* base() const { return base_.get(); }
  const std::shared_ptr<const PrimeField>& base_ptr() const { return base_; }
  const Fp& beta() const { return beta_; }
  // beta as the signed integer used in configuration files.
  const Int& beta_int() const { return beta_int_; }
  bool beta_is_minus_one() const { return minus_one_; }

 private:
  QuadExt(std::shared_ptr<const PrimeField> base, const Int& beta);
  std::shared_ptr<const PrimeField> base_;
  Fp beta_;
  Int beta_int_;
  bool minus_one_;
};

class Fp2 {
 public:
  Fp2() = default;
  Fp2(const QuadExt* e, const Fp& re, const Fp& im);
  Fp2(const QuadExt* e, const Int& re, const Int& im);
  // Embeds an F_p element.
  Fp2(const QuadExt* e, const Fp& re);

  const QuadExt* ext() const { return e_; }
  const Fp& re() const { return re_; }
  const Fp& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool in_base() const { return im_.is_zero(); }

  Fp2 zero() const;
  Fp2 one() const;
  Fp2 from_int(const Int& v) const;

  friend Fp2 operator+(const Fp2& x, const Fp2& y);
  friend Fp2 operator-(const Fp2& x, const Fp2& y);
  friend Fp2 operator*(const Fp2& x, const Fp2& y);
  Fp2 operator-() const;
  Fp2& operator+=(const Fp2& y) { return *this = *this + y; }
  Fp2& operator-=(const Fp2& y) { return *this = *this - y; }
  Fp2& operator*=(const Fp2& y) { return *this = *this * y; }
  bool operator==(const Fp2& y) const;
  bool operator!=(const Fp2& y) const { return !(*this == y); }

  Fp2 sqr() const;
  Fp2 dbl() const { return *this + *this; }
  Fp2 halve() const;
  // x^p, i.e. re - im t.
  Fp2 conj() const;
  // Throws DivisionByZero for zero.
  Fp2 inv() const;
  // re^2 - beta im^2, uncounted.
  Fp norm() const;
  // Uncounted.
  Fp2 pow(const Int& e) const;
  bool is_square() const;
  std::optional<Fp2> sqrt() const;

  std::string hex() const;  // re||im, each padded to the field size

 private:
  void check(const Fp2& y) const;
  const QuadExt* e_ = nullptr;
  Fp re_, im_;
};

inline Fp2 fp2_mul(const Fp2& x, const Fp2& y) { return x * y; }
inline Fp2 fp2_sqr(const Fp2& x) { return x.sqr(); }
inline Fp2 fp2_inv(const Fp2& x) { return x.inv(); }

}  // namespace glv4
