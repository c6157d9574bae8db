#include "oddtau/arith.hpp"
#include "oddtau/binform.hpp"
#include "oddtau/lucas.hpp"
#include "oddtau/modforms.hpp"
#include "oddtau/thue.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace oddtau;
using namespace oddtau::thue;

namespace {

using Poly = std::vector<BigInt>;  // Poly[j] = coefficient of X^j Y^{deg-j}

// Expand P(X, Y + s X) with s an integer; binomial expansion in plain code.
Poly shift(const Poly& p, long s) {
    const std::size_t n = p.size() - 1;
    Poly out(n + 1, 0);
    for (std::size_t j = 0; j <= n; ++j) {
        // X^j (Y + sX)^{n-j} = sum_i C(n-j, i) s^i X^{j+i} Y^{n-j-i}
        BigInt binom = 1;
        for (std::size_t i = 0; i + j <= n; ++i) {
            out[j + i] += p[j] * binom * pow(BigInt(s), static_cast<unsigned long>(i));
            binom = binom * static_cast<unsigned long>(n - j - i) / static_cast<unsigned long>(i + 1);
        }
    }
    return out;
}

// Coefficients of prod_k (Y - r_k X) from the roots, in long double.
std::vector<long double> from_roots(const std::vector<long double>& roots) {
    std::vector<long double> c{1.0L};
    for (long double r : roots) {
        std::vector<long double> next(c.size() + 1, 0.0L);
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j] += c[j];
            next[j + 1] -= r * c[j];
        }
        c = next;
    }
    return c;
}

std::vector<ThueSolution> naive_box(const ThuePolynomial& poly, const std::vector<BigInt>& targets, long box) {
    std::vector<ThueSolution> out;
    for (long x = -box; x <= box; ++x)
        for (long y = -box; y <= box; ++y) {
            const BigInt v = poly.eval(x, y);
            if (std::find(targets.begin(), targets.end(), v) != targets.end()) out.push_back({x, y, v});
        }
    return out;
}

}  // namespace

TEST_SUITE("thue") {

TEST_CASE("small polynomials") {
    CHECK(thue_poly(2).coeffs == Poly{1, -1});
    CHECK(thue_poly(4).coeffs == Poly{1, -3, 1});
    CHECK(thue_poly(6).eval(1, 4) == 7);
    CHECK(fhat_poly(5).coeffs == Poly{1, 1, -1});
    CHECK(fhat_poly(3).coeffs == Poly{1, 1});
    CHECK(fhat_poly(5).eval(1, 2) == 5);
    CHECK(fhat_poly(7).eval(1, 2) == 7);
    CHECK_THROWS_AS(thue_poly(3), std::invalid_argument);
    CHECK_THROWS_AS(thue_poly(0), std::invalid_argument);
    CHECK_THROWS_AS(fhat_poly(9), std::invalid_argument);
}

TEST_CASE("F4 at (2^11, 576) is tau(16)") {
    CHECK(thue_poly(4).eval(pow(BigInt(2), 11), 576) == modforms::delta_series(16).at(16));
}

TEST_CASE("coefficients agree with the cosine product") {
    const long double pi = std::acos(-1.0L);
    for (unsigned m = 1; m <= 10; ++m) {
        std::vector<long double> roots;
        for (unsigned k = 1; k <= m; ++k) {
            const long double c = std::cos(pi * k / (2 * m + 1));
            roots.push_back(4 * c * c);
        }
        const auto want = from_roots(roots);
        const auto& p = thue_poly(2 * m);
        REQUIRE(p.coeffs.size() == want.size());
        for (std::size_t j = 0; j < want.size(); ++j) CHECK(p.coeffs[j] == BigInt(static_cast<long>(std::llround(want[j]))));
    }
}

TEST_CASE("substitution identity Fhat(X, Y - 2X) = F(X, Y) for odd primes up to 131") {
    for (auto ell : primes_up_to(131)) {
        if (ell == 2) continue;
        CAPTURE(ell);
        CHECK(shift(fhat_poly(static_cast<unsigned>(ell)).coeffs, -2) == thue_poly(static_cast<unsigned>(ell - 1)).coeffs);
    }
}

TEST_CASE("root product F_2m(1, 4) = 2m + 1") {
    for (unsigned m = 1; m <= 65; ++m) {
        CHECK(thue_poly(2 * m).eval(1, 4) == 2 * m + 1);
        CHECK(eval_even(2 * m, 1, 4) == 2 * m + 1);
    }
}

TEST_CASE("monic in Y, homogeneous, eval_even agrees with the polynomial") {
    std::mt19937_64 rng(5);
    for (unsigned m = 1; m <= 65; ++m) {
        const auto& p = thue_poly(2 * m);
        CHECK(p.degree == m);
        REQUIRE(p.coeffs.size() == m + 1);
        CHECK(p.coeffs.front() == 1);
        const long x = static_cast<long>(rng() % 41) - 20, y = static_cast<long>(rng() % 41) - 20;
        CHECK(p.eval(x, y) == eval_even(2 * m, x, y));
        // homogeneity: F(tX, tY) = t^m F(X, Y)
        CHECK(p.eval(3 * x, 3 * y) == pow(BigInt(3), m) * p.eval(x, y));
    }
}

TEST_CASE("sequence identity with Lucas terms") {
    for (int w : modforms::kWeights) {
        const auto s = modforms::eigenform_series(w, 13);
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
            const BigInt X = pow(BigInt(p), static_cast<unsigned long>(w - 1));
            // a(p) from the series plus a few other values that respect the Deligne bound
            for (BigInt a : {BigInt(s[p]), BigInt(0), BigInt(1), BigInt(-7)}) {
                const auto ctx = lucas::LucasContext::make(p, w, a);
                for (unsigned two_m = 2; two_m <= 12; two_m += 2) {
                    REQUIRE(thue_poly(two_m).eval(X, a * a) == lucas::lucas_term(ctx, two_m));
                }
            }
        }
    }
}

TEST_CASE("bounded_solve examples") {
    const auto r6 = bounded_solve(thue_poly(6), {91, -91}, 50);
    CHECK(std::find(r6.solutions.begin(), r6.solutions.end(), ThueSolution{-1, 3, 91}) != r6.solutions.end());

    const auto r2 = bounded_solve(thue_poly(2), {0}, 10);
    REQUIRE(r2.solutions.size() == 21);
    for (const auto& s : r2.solutions) CHECK(s.X == s.Y);
    CHECK_FALSE(r2.complete);

    const auto r12 = bounded_solve(thue_poly(12), {-131}, 10);
    CHECK(std::find(r12.solutions.begin(), r12.solutions.end(), ThueSolution{3, 4, -131}) != r12.solutions.end());
    CHECK(std::find(r12.solutions.begin(), r12.solutions.end(), ThueSolution{-3, -4, -131}) != r12.solutions.end());
}

TEST_CASE("bounded_solve matches a naive double loop") {
    const long box = 30;
    for (unsigned two_m = 2; two_m <= 12; two_m += 2) {
        const auto& p = thue_poly(two_m);
        const std::vector<BigInt> targets{1, -1, 5, -5, 7, -7, 13, 91, -91, 11, -131};
        auto naive = naive_box(p, targets, box);
        auto got = bounded_solve(p, targets, box).solutions;
        std::vector<ThueSolution> got_in_box;
        for (const auto& s : got) {
            CHECK(p.eval(s.X, s.Y) == s.value);
            if (abs(s.Y) <= box) got_in_box.push_back(s);
        }
        auto key = [](const ThueSolution& a, const ThueSolution& b) {
            return std::tie(a.X, a.Y) < std::tie(b.X, b.Y);
        };
        std::sort(naive.begin(), naive.end(), key);
        std::sort(got_in_box.begin(), got_in_box.end(), key);
        CAPTURE(two_m);
        CHECK(got_in_box == naive);
    }
}

TEST_CASE("Hecke shape filter") {
    const auto r = bounded_solve(thue_poly(6), {91, -91}, 1000);
    CHECK(filter_hecke_shape(r.solutions, 12).empty());

    const BigInt X = pow(BigInt(2), 11);
    const auto c = filter_hecke_shape({{X, 576, modforms::delta_series(16).at(16)}}, 12);
    REQUIRE(c.size() == 1);
    CHECK(c[0].p == 2);
    CHECK(c[0].a == 24);
    CHECK(filter_hecke_shape({{3, 4, -131}}, 12).empty());
    CHECK(prime_with_power(pow(BigInt(7), 11), 11) == BigInt(7));
    CHECK_FALSE(prime_with_power(pow(BigInt(6), 11), 11));
}

}

TEST_SUITE("binform") {

TEST_CASE("solve_form agrees with brute force on random cubic and quartic forms") {
    std::mt19937_64 rng(3);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const unsigned n = 3 + static_cast<unsigned>(trial % 2);
        BinaryForm g;
        for (unsigned j = 0; j <= n; ++j) g.coeffs.push_back(static_cast<long>(rng() % 7) - 3);
        if (g.coeffs[0] == 0) g.coeffs[0] = 1;
        const std::vector<BigInt> targets{static_cast<long>(rng() % 40) - 20};
        FormSolveOptions opts;
        opts.v_bound = 40;
        opts.threads = 1;
        const auto r = solve_form(g, targets, opts);
        if (r.infinite_family) continue;
        std::set<std::pair<long, long>> got, want;
        for (const auto& p : r.points) {
            CHECK(g.eval(p.U, p.V) == p.value);
            if (abs(p.U) <= 40 && abs(p.V) <= 40) got.insert({p.U.get_si(), p.V.get_si()});
        }
        for (long v = -40; v <= 40; ++v)
            for (long u = -40; u <= 40; ++u)
                if (g.eval(u, v) == targets[0]) want.insert({u, v});
        CAPTURE(trial);
        CHECK(got == want);
        ++compared;
    }
    CHECK(compared > 40);
}

TEST_CASE("zero leading coefficient makes the search exhaustive") {
    // U^0 coefficient zero: G = V (U^2 + 3 V^2); V divides the target.
    BinaryForm g{{0, 1, 0, 3}};
    const auto r = solve_form(g, {28});
    CHECK(r.complete);
    for (const auto& p : r.points) CHECK(g.eval(p.U, p.V) == 28);
    std::set<std::pair<long, long>> want;
    for (long v = -28; v <= 28; ++v)
        for (long u = -30; u <= 30; ++u)
            if (v != 0 && g.eval(u, v) == 28) want.insert({u, v});
    std::set<std::pair<long, long>> got;
    for (const auto& p : r.points) got.insert({p.U.get_si(), p.V.get_si()});
    CHECK(got == want);
}

TEST_CASE("local obstructions are genuine") {
    // U^2 + V^2 = 3 mod 4 has no solution.
    BinaryForm g{{1, 0, 1}};
    const auto m = form_local_obstruction(g, 3, default_form_moduli());
    REQUIRE(m);
    CHECK_FALSE(form_solvable_mod(g, 3, *m));
    CHECK(form_solvable_mod(g, 5, 4));
    CHECK_FALSE(form_local_obstruction(thue_poly(12).as_form(), -131, default_form_moduli()));
    CHECK(form_local_obstruction(thue_poly(12).as_form(), 131, default_form_moduli()));
}

}
