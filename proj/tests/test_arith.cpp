#include "oddtau/arith.hpp"

#include <doctest.h>

#include <random>

using namespace oddtau;

namespace {

// Plain trial division, independent of the library's factoring path.
std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace

TEST_SUITE("arith") {

TEST_CASE("factor examples") {
    auto f = factor(60);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == PrimePower{2, 2});
    CHECK(f.factors[1] == PrimePower{3, 1});
    CHECK(f.factors[2] == PrimePower{5, 1});

    f = factor(2184);
    std::vector<PrimePower> want{{2, 3}, {3, 1}, {7, 1}, {13, 1}};
    CHECK(f.factors == want);
    CHECK(factor(3617).is_prime());
    CHECK(factor(-15).product() == 15);
    CHECK_THROWS_AS(factor(0), std::invalid_argument);
}

TEST_CASE("factor agrees with trial division") {
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        const auto f = factor(BigInt(static_cast<unsigned long>(n)));
        const auto t = trial_factor(n);
        REQUIRE(f.factors.size() == t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            CHECK(f.factors[i].prime == BigInt(static_cast<unsigned long>(t[i].first)));
            CHECK(f.factors[i].exponent == t[i].second);
        }
    }
}

TEST_CASE("factor round-trips on large composites") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        BigInt n = 1;
        for (int j = 0; j < 4; ++j) n *= BigInt(static_cast<unsigned long>(rng() % 1000003 + 2));
        const auto f = factor(n);
        CHECK(f.product() == n);
        for (const auto& pp : f.factors) CHECK(is_prime(pp.prime));
    }
    const BigInt big = BigInt("1000000000000000003") * BigInt("1000000007");
    CHECK(factor(big).product() == big);
}

TEST_CASE("sigma examples") {
    CHECK(sigma(1, 6) == 12);
    CHECK(sigma(3, 2) == 9);
    CHECK(sigma(11, 2) == 2049);
}

TEST_CASE("sigma by definition equals multiplicative sigma") {
    for (unsigned long n = 1; n <= 10000; ++n) {
        for (unsigned v : {1u, 3u, 11u}) {
            REQUIRE(sigma(v, BigInt(n)) == sigma_from_factorization(v, factor(BigInt(n))));
        }
    }
}

TEST_CASE("kronecker examples") {
    CHECK(kronecker(-1, 5) == 1);
    CHECK(kronecker(-1, 7) == -1);
    CHECK(kronecker(4, 2) == 0);
}

TEST_CASE("kronecker matches Euler's criterion at odd primes") {
    for (std::uint64_t p : primes_up_to(200)) {
        if (p == 2) continue;
        for (long a = -30; a <= 30; ++a) {
            const std::uint64_t r = static_cast<std::uint64_t>(((a % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
            const std::uint64_t e = powmod_u64(r, (p - 1) / 2, p);
            const int want = r == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(kronecker(a, static_cast<unsigned long>(p)) == want);
        }
    }
}

TEST_CASE("integer roots") {
    CHECK(*integer_root(576, 2) == 24);
    CHECK(*integer_root(2048, 11) == 2);
    CHECK(*integer_root(529, 2) == 23);
    CHECK_FALSE(integer_root(530, 2));
    CHECK(*signed_integer_root(-27, 3) == -3);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const BigInt r = static_cast<unsigned long>(rng() % 1000000 + 1);
        const unsigned k = static_cast<unsigned>(rng() % 29 + 2);
        const BigInt n = pow(r, k);
        REQUIRE(integer_root(n, k));
        CHECK(*integer_root(n, k) == r);
        if (r > 1) CHECK_FALSE(integer_root(n + 1, k));
    }
}

TEST_CASE("is_prime against a sieve") {
    const auto ps = primes_up_to(100000);
    std::vector<bool> sieve(100001, false);
    for (auto p : ps) sieve[p] = true;
    for (std::uint64_t n = 0; n <= 100000; ++n) REQUIRE(is_prime_u64(n) == sieve[n]);
    CHECK(is_prime(BigInt("170141183460469231731687303715884105727")));  // 2^127 - 1
    CHECK_FALSE(is_prime(BigInt("3825123056546413051")));             // strong pseudoprime to bases 2..23
}

TEST_CASE("squarefree split") {
    auto s = squarefree_split(-60);
    CHECK(s.d == -15);
    CHECK(s.q == 2);
    s = squarefree_split(9);
    CHECK(s.d == 1);
    CHECK(s.q == 3);
    s = squarefree_split(691);
    CHECK(s.d == 691);
    CHECK(s.q == 1);
}

TEST_CASE("divisors") {
    const auto d = divisors(factor(60));
    std::vector<BigInt> want{1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60};
    CHECK(d == want);
}

}
