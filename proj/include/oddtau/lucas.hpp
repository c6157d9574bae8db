#pragma once

// The Lucas sequence m -> a_f(p^m) attached to a prime p and a weight 2k:
// a(1) = 1, a(p) = A, a(p^m) = A a(p^{m-1}) - p^{2k-1} a(p^{m-2}).

#include "oddtau/bigint.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace oddtau::lucas {

struct LucasContext {
    BigInt p;
    int weight = 12;
    BigInt A;  // a_f(p)
    BigInt B;  // p^{2k-1}

    /// Throws std::invalid_argument when p is not prime or A^2 > 4 p^{2k-1}.
    static LucasContext make(const BigInt& p, int weight, const BigInt& A);
};

/// a_f(p^m), i.e. u_{m+1} of the root pair of x^2 - A x + B.
BigInt lucas_term(const LucasContext& ctx, unsigned m);

/// a_f(p^0), ..., a_f(p^m_max).
std::vector<BigInt> lucas_terms(const LucasContext& ctx, unsigned m_max);

/// Least n >= 1 with ell | a_f(p^{n-1}); nullopt when the sequence mod ell never vanishes.
std::optional<std::uint64_t> rank_of_apparition(const LucasContext& ctx, std::uint64_t ell);

/// lucas_term(r) divides lucas_term(t) exactly.
bool divisibility_check(const LucasContext& ctx, unsigned r, unsigned t);

/// Whether u_n = a_f(p^{n-1}) has a prime divisor coprime to (alpha - beta)^2 u_1 ... u_{n-1}.
bool has_primitive_divisor(const LucasContext& ctx, unsigned n);

}  // namespace oddtau::lucas
