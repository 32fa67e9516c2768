#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glv4 {

using Int = mpz_class;
using IntVec = std::vector<Int>;

// Lowercase big-endian hex, '-' prefix for negatives, "0" for zero.
std::string to_hex(const Int& x);
// Nonnegative value left-padded with zeros to exactly 2*bytes digits.
std::string to_hex_padded(const Int& x, std::size_t bytes);
// Accepts an optional sign and an optional 0x prefix. Throws FormatError.
Int from_hex(std::string_view s);
Int from_dec(std::string_view s);

// Bit length of |x|; 0 for x = 0.
std::size_t bitlen(const Int& x);
// Residue in [0, m).
Int mod(const Int& a, const Int& m);
Int powmod(const Int& base, const Int& exp, const Int& m);
// Throws DivisionByZero when a is not invertible mod m.
Int invmod(const Int& a, const Int& m);
Int isqrt(const Int& x);
bool is_perfect_square(const Int& x);
bool is_probable_prime(const Int& x);
// Legendre symbol for odd prime p: -1, 0 or 1.
int legendre(const Int& a, const Int& p);
// Tonelli-Shanks; any square root, or nullopt for a non-residue.
std::optional<Int> sqrt_mod(const Int& a, const Int& p);
// floor(num/den + 1/2) for den != 0, exact.
Int round_div(const Int& num, const Int& den);
// floor(num/den) for den != 0, exact.
Int floor_div(const Int& num, const Int& den);
Int abs(const Int& x);
// Natural log of |x| for x != 0, finite for any size.
double log_abs(const Int& x);

// Seeded generator for arbitrary-precision samples. Not thread-safe; give
// each task its own instance.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  // Uniform in [0, bound).
  Int below(const Int& bound);
  // Uniform in [lo, hi].
  Int between(const Int& lo, const Int& hi);
  Int bits(std::size_t nbits);
  std::uint64_t next_u64();

 private:
  std::uint64_t seed_;
  gmp_randclass state_;
};

}  // namespace glv4
