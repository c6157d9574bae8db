#pragma once

// Exact integer number theory shared by the rest of the library.

#include "oddtau/bigint.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace oddtau {

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime decomposition of |value|. Primes are strictly increasing.
struct Factorization {
    BigInt value;
    std::vector<PrimePower> factors;

    BigInt product() const;
    bool is_prime() const { return factors.size() == 1 && factors.front().exponent == 1; }
    std::vector<BigInt> primes() const;
};

/// Deterministic factorization of |n|: trial division, then Brent-Pollard rho.
/// Throws std::invalid_argument for n == 0.
Factorization factor(const BigInt& n);

/// Deterministic Miller-Rabin below 2^64; Baillie-PSW (GMP) above.
bool is_prime(const BigInt& n);
bool is_prime_u64(std::uint64_t n);

std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// sigma_v(n) = sum of d^v over positive divisors d of n, by direct enumeration.
BigInt sigma(unsigned v, const BigInt& n);

/// sigma_v(n) through the multiplicative formula.
BigInt sigma_from_factorization(unsigned v, const Factorization& f);

/// Kronecker symbol (a|b).
int kronecker(const BigInt& a, const BigInt& b);

/// r with r^k == n exactly, if one exists (n >= 0, k >= 1).
std::optional<BigInt> integer_root(const BigInt& n, unsigned k);

/// Exact k-th root for odd k and any sign of n.
std::optional<BigInt> signed_integer_root(const BigInt& n, unsigned k);

/// Positive divisors, ascending.
std::vector<BigInt> divisors(const Factorization& f);

/// D = d * q^2 with d squarefree (sign carried by d) and q >= 1.
struct SquarefreeSplit {
    BigInt d;
    BigInt q;
};
SquarefreeSplit squarefree_split(const BigInt& D);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);

}  // namespace oddtau
