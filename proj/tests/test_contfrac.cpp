#include "oddtau/contfrac.hpp"
#include "oddtau/thue.hpp"

#include <doctest.h>

#include <cmath>
#include <optional>

using namespace oddtau;
using namespace oddtau::contfrac;

namespace {

std::vector<std::pair<long, long>> pq(const std::vector<Convergent>& v) {
    std::vector<std::pair<long, long>> out;
    for (const auto& c : v) out.emplace_back(c.p.get_si(), c.q.get_si());
    return out;
}

// The two sign-matched (1, 4) points in F-coordinates.
std::vector<thue::ThueSolution> unit_points(unsigned ell) {
    const auto& f = thue::thue_poly(ell - 1);
    return {{-1, -4, f.eval(-1, -4)}, {1, 4, f.eval(1, 4)}};
}

}  // namespace

TEST_SUITE("contfrac") {

TEST_CASE("certified cosines") {
    const auto a = cosine_value(5, 1, 128);
    const mpq_class err = a.error_bound;
    CHECK(std::fabs(a.approx() - (std::sqrt(5.0L) - 1) / 2) < 1e-15L);
    CHECK(err > 0);
    CHECK(err < mpq_class(1, 1) / mpq_class(BigInt(1) << 128));

    const auto b = cosine_value(3, 1, 128);
    CHECK(b.value == -1);
    CHECK(b.error_bound == 0);

    // 2cos(2 pi / 7) is a root of x^3 + x^2 - 2x - 1, which changes sign across the interval.
    const auto c = cosine_value(7, 1, 128);
    auto f = [](const mpq_class& x) -> mpq_class { return x * x * x + x * x - 2 * x - 1; };
    CHECK(std::fabs(c.approx() - 1.2469796037174670L) < 1e-15L);
    CHECK(sgn(f(c.lower())) * sgn(f(c.upper())) <= 0);

    CHECK_THROWS_AS(cosine_value(9, 1, 128), std::invalid_argument);
    CHECK_THROWS_AS(cosine_value(7, 4, 128), std::invalid_argument);
    CHECK_THROWS_AS(cosine_value(7, 1, 32), std::invalid_argument);
}

TEST_CASE("convergent examples") {
    const std::vector<std::pair<long, long>> c7{{1, 1}, {5, 4}, {101, 81}};
    CHECK(pq(convergents_below(cosine_value(7, 1, 256), 100)) == c7);
    const std::vector<std::pair<long, long>> c5{{0, 1}, {1, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 8}};
    CHECK(pq(convergents_below(cosine_value(5, 1, 256), 10)) == c5);
    const std::vector<std::pair<long, long>> c3{{-1, 1}};
    CHECK(pq(convergents_below(cosine_value(3, 1, 256), 1000)) == c3);
}

TEST_CASE("convergent law |x - p/q| < 1/q^2") {
    for (unsigned ell : {7u, 11u, 13u, 131u}) {
        for (unsigned k = 1; k <= (ell - 1) / 2; ++k) {
            const auto x = cosine_value(ell, k, 512);
            for (const auto& c : convergents_below(x, 1000000)) {
                const mpq_class r(c.p, c.q);
                const mpq_class bound = mpq_class(1) / (c.q * c.q);
                CHECK(abs(x.lower() - r) < bound);
                CHECK(abs(x.upper() - r) < bound);
            }
        }
    }
}

TEST_CASE("precision doubling never changes the answer silently") {
    const BigInt qmax = BigInt(1) << 200;
    for (unsigned ell : {31u, 131u}) {
        for (unsigned k = 1; k <= 4; ++k) {
            const auto hi = convergents_below(cosine_value(ell, k, 1024), qmax);
            for (unsigned bits : {64u, 128u, 256u, 512u}) {
                std::optional<std::vector<Convergent>> lo;
                try {
                    lo = convergents_below(cosine_value(ell, k, bits), qmax);
                } catch (const PrecisionExhausted&) {
                    // acceptable: the lower setting refused to decide
                }
                if (lo) CHECK(*lo == hi);
            }
        }
    }
    unsigned used = 0;
    CHECK_FALSE(convergents_with_retry(131, 3, qmax, &used).empty());
    CHECK(used >= 256);
}

TEST_CASE("the point (1, 4) always has value ell") {
    for (unsigned ell : {31u, 37u, 101u, 131u, 283u}) CHECK(thue::thue_poly(ell - 1).eval(1, 4) == ell);
}

TEST_CASE("certify 131") {
    const auto r = certify_prime_thue(131);
    CHECK(r.solutions == unit_points(131));
    CHECK(r.midsize_checked_pairs > 0);
    CHECK(r.small_checked_pairs > 0);
    CHECK(r.large_regime == "e8-exclusion");
}

TEST_CASE("certify 31 agrees with the bounded solver on |X| < e^8") {
    const auto r = certify_prime_thue(31);
    const auto b = thue::bounded_solve(thue::thue_poly(30), {31, -31}, kE8Ceil);
    CHECK(r.solutions == b.solutions);
    CHECK(r.solutions == unit_points(31));
    CHECK_THROWS_AS(certify_prime_thue(29), std::invalid_argument);
    CHECK_THROWS_AS(certify_prime_thue(33), std::invalid_argument);
}

TEST_CASE("e^8 exclusion examples") {
    for (auto [ell, w] : std::vector<std::pair<unsigned, int>>{{43867, 18}, {657931, 26}, {131, 22}, {3617, 16}}) {
        const auto v = prime_power_exclusion(ell, w);
        CHECK(v.no_prime);
        CHECK(v.primes_checked.empty());
        CHECK(v.survivors.empty());
    }
    // weight 12: 2^11 = 2048 < e^8, so p = 2 must be checked directly.
    const auto v12 = prime_power_exclusion(131, 12);
    CHECK(v12.primes_checked == std::vector<BigInt>{2});
    CHECK(v12.no_prime);
}

}

TEST_SUITE("contfrac-extended") {

TEST_CASE("certify 283, 593, 617") {
    for (unsigned ell : {283u, 593u, 617u}) {
        CAPTURE(ell);
        CHECK(certify_prime_thue(ell).solutions == unit_points(ell));
    }
}

}
