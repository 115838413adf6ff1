#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lmat {

using Int = mpz_class;
using Rat = mpq_class;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/// Residue of a rational modulo p; nullopt when p divides the denominator.
std::optional<std::uint64_t> reduce_mod(const Rat& x, std::uint64_t p);

/// Binomial coefficient C(n, k) as a big integer; C(n, 0) = 1 for n >= -1.
Int binomial(long n, long k);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

/// Bezout: returns g = gcd(a, b) >= 0 and sets x, y with a*x + b*y = g.
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);

/// Parses "a" or "a/b" (optional sign). Throws std::invalid_argument.
Rat parse_rational(const std::string& text);

}  // namespace lmat
