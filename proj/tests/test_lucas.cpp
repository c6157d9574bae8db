#include "oddtau/arith.hpp"
#include "oddtau/lucas.hpp"
#include "oddtau/modforms.hpp"

#include <doctest.h>

using namespace oddtau;
using namespace oddtau::lucas;

TEST_SUITE("lucas") {

TEST_CASE("terms at p = 2, weight 12") {
    const auto ctx = LucasContext::make(2, 12, -24);
    CHECK(lucas_term(ctx, 0) == 1);
    CHECK(lucas_term(ctx, 1) == -24);
    CHECK(lucas_term(ctx, 2) == -1472);
    // 576^2 - 3 * 2^11 * 576 + 2^22
    CHECK(lucas_term(ctx, 4) == 987136);
    CHECK(lucas_term(ctx, 4) == modforms::delta_series(16).at(16));
}

TEST_CASE("bad contexts") {
    CHECK_THROWS_AS(LucasContext::make(4, 12, 0), std::invalid_argument);
    CHECK_THROWS_AS(LucasContext::make(2, 12, 100), std::invalid_argument);  // 100^2 > 4 * 2^11
}

TEST_CASE("rank of apparition examples") {
    const auto c2 = LucasContext::make(2, 12, -24);
    CHECK(rank_of_apparition(c2, 3) == 2u);
    // 1, -24, -1472, 84480: 5 first divides a(2^3)
    CHECK(rank_of_apparition(c2, 5) == 4u);
    CHECK(rank_of_apparition(LucasContext::make(3, 12, 252), 7) == 2u);
}

TEST_CASE("divisibility examples") {
    const auto c = LucasContext::make(2, 12, -24);
    CHECK(divisibility_check(c, 1, 3));
    CHECK(divisibility_check(c, 0, 5));
    CHECK(divisibility_check(c, 2, 8));
}

TEST_CASE("agreement with the series at prime powers up to 10^4") {
    const std::size_t N = 10000;
    for (int w : modforms::kWeights) {
        const auto s = modforms::eigenform_series(w, N);
        for (auto p : primes_up_to(N)) {
            const auto ctx = LucasContext::make(static_cast<unsigned long>(p), w, s[p]);
            unsigned m = 1;
            for (std::size_t q = p; q <= N; q *= p, ++m) REQUIRE(lucas_term(ctx, m) == s[q]);
        }
    }
}

TEST_CASE("parity: a(p^m) is odd exactly for even m at odd p") {
    for (int w : modforms::kWeights) {
        const auto s = modforms::eigenform_series(w, 50);
        for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul, 43ul, 47ul}) {
            const auto ctx = LucasContext::make(p, w, s[p]);
            const auto t = lucas_terms(ctx, 30);
            for (unsigned m = 0; m <= 30; ++m) REQUIRE((mpz_odd_p(t[m].get_mpz_t()) != 0) == (m % 2 == 0));
        }
    }
}

TEST_CASE("rank of apparition is the first vanishing index") {
    const auto s = modforms::eigenform_series(12, 50);
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        const auto ctx = LucasContext::make(p, 12, s[p]);
        const auto t = lucas_terms(ctx, 700);
        for (std::uint64_t ell : {3ul, 5ul, 7ul, 23ul, 691ul}) {
            const auto r = rank_of_apparition(ctx, ell);
            if (!r) continue;
            REQUIRE(*r <= 700);
            for (std::uint64_t j = 1; j < *r; ++j) CHECK(t[j - 1] % ell != 0);
            CHECK(t[*r - 1] % ell == 0);
        }
    }
}

TEST_CASE("divisibility whenever (r + 1) | (t + 1)") {
    for (int w : {12, 16, 22}) {
        const auto s = modforms::eigenform_series(w, 20);
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
            const auto ctx = LucasContext::make(p, w, s[p]);
            for (unsigned t = 0; t <= 20; ++t)
                for (unsigned r = 0; r <= t; ++r)
                    if ((t + 1) % (r + 1) == 0) REQUIRE(divisibility_check(ctx, r, t));
        }
    }
}

TEST_CASE("primitive divisors: definition oracle, and always present past 30") {
    const auto s = modforms::eigenform_series(12, 5);
    for (unsigned long p : {2ul, 3ul}) {
        const auto ctx = LucasContext::make(p, 12, s[p]);
        const auto t = lucas_terms(ctx, 60);
        const BigInt disc = ctx.A * ctx.A - 4 * ctx.B;
        for (unsigned n = 2; n <= 11; ++n) {
            bool want = false;
            for (const auto& q : factor(t[n - 1]).primes()) {
                bool old = disc % q == 0;
                for (unsigned j = 0; j + 1 < n && !old; ++j) old = t[j] % q == 0;
                want = want || !old;
            }
            CHECK(has_primitive_divisor(ctx, n) == want);
        }
        for (unsigned n = 31; n <= 60; ++n) CHECK(has_primitive_divisor(ctx, n));
    }
}

}
