#include "oddtau/lucas.hpp"

#include "oddtau/arith.hpp"
#include "oddtau/modforms.hpp"

#include <stdexcept>

namespace oddtau::lucas {

LucasContext LucasContext::make(const BigInt& p, int weight, const BigInt& A) {
    if (weight < 2 || weight % 2) throw std::invalid_argument("LucasContext: weight must be even and positive");
    if (!is_prime(p)) throw std::invalid_argument("LucasContext: p = " + to_string(p) + " is not prime");
    LucasContext ctx{p, weight, A, pow(p, static_cast<unsigned long>(weight - 1))};
    if (A * A > 4 * ctx.B) {
        throw std::invalid_argument("LucasContext: A = " + to_string(A) + " violates the Deligne bound");
    }
    return ctx;
}

BigInt lucas_term(const LucasContext& ctx, unsigned m) {
    BigInt prev = 1, cur = ctx.A;
    if (m == 0) return prev;
    for (unsigned i = 2; i <= m; ++i) {
        BigInt next = ctx.A * cur - ctx.B * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<BigInt> lucas_terms(const LucasContext& ctx, unsigned m_max) {
    std::vector<BigInt> out;
    out.reserve(m_max + 1);
    out.push_back(1);
    if (m_max >= 1) out.push_back(ctx.A);
    for (unsigned m = 2; m <= m_max; ++m) out.push_back(ctx.A * out[m - 1] - ctx.B * out[m - 2]);
    return out;
}

std::optional<std::uint64_t> rank_of_apparition(const LucasContext& ctx, std::uint64_t ell) {
    if (ell < 3 || !is_prime_u64(ell)) throw std::invalid_argument("rank_of_apparition: ell must be an odd prime");
    const std::uint64_t a = mod_u64(ctx.A, ell);
    const std::uint64_t b = mod_u64(ctx.B, ell);
    // State (u_n, u_{n+1}) mod ell, starting at (a(p^0), a(p^1)). The step map is
    // invertible when b != 0, so the orbit is purely periodic and returns to the start.
    // For b == 0 the orbit is eventually periodic; ell^2 steps bound both cases.
    std::uint64_t u = 1 % ell, v = a;
    const std::uint64_t limit = ell * ell + 1;
    for (std::uint64_t n = 1; n <= limit; ++n) {
        if (u == 0) return n;
        const std::uint64_t w = (mulmod_u64(a, v, ell) + ell - mulmod_u64(b, u, ell)) % ell;
        u = v;
        v = w;
        if (b != 0 && u == 1 % ell && v == a) return std::nullopt;
    }
    return std::nullopt;
}

bool divisibility_check(const LucasContext& ctx, unsigned r, unsigned t) {
    if (r > t) throw std::invalid_argument("divisibility_check: r must not exceed t");
    const BigInt ur = lucas_term(ctx, r);
    const BigInt ut = lucas_term(ctx, t);
    if (ur == 0) return ut == 0;
    return mpz_divisible_p(ut.get_mpz_t(), ur.get_mpz_t()) != 0;
}

bool has_primitive_divisor(const LucasContext& ctx, unsigned n) {
    if (n < 1) throw std::invalid_argument("has_primitive_divisor: n must be positive");
    const auto terms = lucas_terms(ctx, n - 1);
    BigInt rest = abs(terms[n - 1]);
    if (rest == 0) return false;
    BigInt forbidden = abs(ctx.A * ctx.A - 4 * ctx.B);
    for (unsigned j = 0; j + 1 < n; ++j) forbidden *= abs(terms[j]);
    if (forbidden == 0) return false;
    BigInt g;
    for (;;) {
        mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), forbidden.get_mpz_t());
        if (g == 1) break;
        rest /= g;
    }
    return rest > 1;
}

}  // namespace oddtau::lucas
