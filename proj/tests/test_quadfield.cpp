#include "oddtau/arith.hpp"
#include "oddtau/lucas.hpp"
#include "oddtau/modforms.hpp"
#include "oddtau/quadfield.hpp"

#include <doctest.h>
#include <json.hpp>

#include <random>
#include <set>

using namespace oddtau;
using namespace oddtau::quadfield;

namespace {

std::set<std::pair<BigInt, BigInt>> as_set(const std::vector<Solution>& v) {
    std::set<std::pair<BigInt, BigInt>> out;
    for (const auto& s : v) out.insert({s.x, s.y});
    return out;
}

// x^2 + D = C y^n over |x| <= bound, with GMP's root directly.
std::set<std::pair<BigInt, BigInt>> brute(const BigInt& C, const BigInt& D, unsigned n, long bound) {
    std::set<std::pair<BigInt, BigInt>> out;
    for (long x = -bound; x <= bound; ++x) {
        const BigInt t = BigInt(x) * x + D;
        if (t % C != 0) continue;
        BigInt m = t / C, r;
        const bool neg = m < 0;
        if (neg && n % 2 == 0) continue;
        if (neg) m = -m;
        if (mpz_root(r.get_mpz_t(), m.get_mpz_t(), n) == 0) continue;
        out.insert({BigInt(x), neg ? BigInt(-r) : r});
    }
    return out;
}

// Analytic class number of a fundamental discriminant disc < -4: -(1/|disc|) sum chi(a) a.
long analytic_h(long disc) {
    long s = 0;
    for (long a = 1; a < -disc; ++a) s += kronecker(disc, a) * a;
    const long w = disc == -3 ? 6 : disc == -4 ? 4 : 2;
    return -w * s / (2 * -disc);
}

bool squarefree(long d) {
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

}  // namespace

TEST_SUITE("quadfield") {

TEST_CASE("split D") {
    auto s = split_D(-60);
    CHECK(s.d == -15);
    CHECK(s.q == 2);
    s = split_D(9);
    CHECK(s.d == 1);
    CHECK(s.q == 3);
    s = split_D(691);
    CHECK(s.d == 691);
    CHECK(s.q == 1);
}

TEST_CASE("class group examples") {
    CHECK(class_group(QuadField::make(1)) == std::vector<QuadIdealClass>{{1, 0, 1}});
    CHECK(class_group(QuadField::make(5)) == std::vector<QuadIdealClass>{{1, 0, 5}, {2, 2, 3}});
    const auto g23 = class_group(QuadField::make(23));
    const std::set<std::tuple<long, long, long>> want{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}};
    std::set<std::tuple<long, long, long>> got;
    for (const auto& f : g23) got.insert({f.a.get_si(), f.b.get_si(), f.c.get_si()});
    CHECK(got == want);
    CHECK_THROWS_AS(QuadField::make(-5), UnsupportedRealQuadratic);
    CHECK_THROWS_AS(QuadField::make(12), std::invalid_argument);
}

TEST_CASE("class numbers match the analytic formula for |disc| <= 200") {
    int fields = 0;
    for (long d = 1; d <= 200; ++d) {
        if (!squarefree(d)) continue;
        const auto K = QuadField::make(d);
        const long disc = K.disc.get_si();
        if (-disc > 200) continue;
        CAPTURE(disc);
        CHECK(static_cast<long>(class_group(K).size()) == analytic_h(disc));
        ++fields;
    }
    CHECK(fields > 50);
}

TEST_CASE("ideal products land in the reduced set; norms multiply") {
    for (long d : {1L, 2L, 5L, 14L, 23L, 47L, 71L, 89L}) {
        const auto K = QuadField::make(d);
        const auto G = class_group(K);
        for (const auto& f : G)
            for (const auto& g : G) {
                const auto I = ideal_of_form(K, f), J = ideal_of_form(K, g);
                const auto IJ = ideal_mul(K, I, J);
                CHECK(ideal_norm(IJ) == ideal_norm(I) * ideal_norm(J));
                CHECK(std::find(G.begin(), G.end(), class_of(K, IJ)) != G.end());
            }
        // the class of f^h is trivial
        for (const auto& f : G) {
            const auto P = ideal_pow(K, ideal_of_form(K, f), static_cast<unsigned>(G.size()));
            CHECK(class_of(K, P) == G.front());
            const auto gen = principal_generator(K, P);
            REQUIRE(gen);
            CHECK(elem_norm(K, *gen) == mpq_class(ideal_norm(P)));
        }
    }
}

TEST_CASE("norms multiply on principal ideals of random elements") {
    std::mt19937_64 rng(9);
    for (long d : {1L, 3L, 5L, 7L, 15L, 31L}) {
        const auto K = QuadField::make(d);
        for (int i = 0; i < 30; ++i) {
            const BigInt u1 = static_cast<long>(rng() % 21) - 10, v1 = static_cast<long>(rng() % 21) - 10;
            const BigInt u2 = static_cast<long>(rng() % 21) - 10, v2 = static_cast<long>(rng() % 21) - 10;
            if ((u1 == 0 && v1 == 0) || (u2 == 0 && v2 == 0)) continue;
            const auto A = principal_ideal(K, u1, v1), B = principal_ideal(K, u2, v2);
            const auto a = from_basis(K, u1, v1), b = from_basis(K, u2, v2);
            CHECK(ideal_norm(ideal_mul(K, A, B)) == ideal_norm(A) * ideal_norm(B));
            CHECK(mpq_class(ideal_norm(A)) == elem_norm(K, a));
            CHECK(elem_norm(K, elem_mul(K, a, b)) == elem_norm(K, a) * elem_norm(K, b));
            CHECK(class_of(K, A) == class_group(K).front());
        }
    }
}

TEST_CASE("prime splitting") {
    const auto K = QuadField::make(1);
    CHECK(prime_ideals_above(K, 5).type == SplitType::Split);
    CHECK(prime_ideals_above(K, 2).type == SplitType::Ramified);
    CHECK(prime_ideals_above(K, 7).type == SplitType::Inert);
    for (long d : {2L, 5L, 23L}) {
        const auto F = QuadField::make(d);
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 23L}) {
            const auto s = prime_ideals_above(F, p);
            BigInt prod = 1;
            for (const auto& I : s.ideals) prod *= ideal_norm(I);
            CHECK(prod * (s.type == SplitType::Ramified ? prod : BigInt(1)) == p * p);
            const int chi = kronecker(F.disc, p);
            CHECK((s.type == SplitType::Split) == (chi == 1));
            CHECK((s.type == SplitType::Inert) == (chi == -1));
        }
    }
}

TEST_CASE("unit representatives") {
    CHECK(unit_representatives(QuadField::make(3), 15).size() == 3);
    CHECK(unit_representatives(QuadField::make(5), 15).size() == 1);
    CHECK(unit_representatives(QuadField::make(5), 7).size() == 1);
    CHECK(unit_representatives(QuadField::make(1), 4).size() == 4);
    CHECK(unit_representatives(QuadField::make(1), 6).size() == 2);
    // every unit of Q(sqrt(-3)) is a representative times a 15th power
    const auto K = QuadField::make(3);
    const auto reps = unit_representatives(K, 15);
    const auto zeta = from_basis(K, 0, 1);
    std::set<std::pair<mpq_class, mpq_class>> covered;
    for (const auto& r : reps)
        for (unsigned j = 0; j < 6; ++j) {
            const auto u = elem_mul(K, r, elem_pow(K, elem_pow(K, zeta, j), 15));
            covered.insert({u.r, u.s});
        }
    CHECK(covered.size() == 6);
}

TEST_CASE("gamma pairs are conjugate") {
    for (auto [C, D, n] : std::vector<std::tuple<long, long, unsigned>>{
             {1, 2, 3}, {1, 7, 3}, {1, 23, 5}, {5, 60, 11}, {1, 9, 11}, {1, 25, 11}, {1, 37, 15}, {5, 28, 5}}) {
        const auto G = build_gamma_set(C, D, n);
        CHECK(G.kappa_vectors <= G.kappa_space);
        for (const auto& p : G.pairs) CHECK(p.minus == elem_conj(p.plus));
        for (const auto& t : imaginary_thue_problems(G)) {
            CHECK(t.form.degree() == n);
            CHECK(t.target > 0);
        }
    }
    CHECK_THROWS(build_gamma_set(1, -5, 3));
}

TEST_CASE("rational case") {
    const auto t = rational_case(1, -49, 15);
    bool found = false;
    for (const auto& p : t) {
        CHECK(p.target == 14);
        if (p.a == 1 && p.b == 1 && p.c1 == 1 && p.c2 == 1) {
            found = true;
            std::vector<BigInt> want(16, 0);
            want.front() = 1;
            want.back() = -1;
            CHECK(p.form.coeffs == want);
        }
    }
    CHECK(found);

    const auto t3 = rational_case(1, -1, 3);
    bool has_cubic = false;
    for (const auto& p : t3) {
        CHECK(p.target == 2);
        if (p.form.coeffs == std::vector<BigInt>{1, 0, 0, -1}) {
            has_cubic = true;
            CHECK(p.form.eval(1, -1) == 2);
        }
    }
    CHECK(has_cubic);

    for (const auto& p : rational_case(1, -9, 11)) {
        for (long q : {2L, 3L}) CHECK((p.a % q == 0) == (p.b % q == 0));
    }
}

TEST_CASE("local obstructions") {
    const auto hp = HyperellipticInstance::h_curve(12, 15), hm = HyperellipticInstance::h_curve(12, -15);
    // The residue enumeration mod 5 is solvable (Y = 0); the 5-adic argument lives mod 25.
    CHECK_FALSE(obstructed_mod(hp, 5));
    CHECK_FALSE(obstructed_mod(hm, 5));
    CHECK(obstructed_mod(hp, 25));
    CHECK(obstructed_mod(hm, 25));
    CHECK(local_obstruction(hp, basic_moduli()).has_value());
    CHECK(local_obstruction(hm, basic_moduli()).has_value());
    CHECK_FALSE(obstructed_mod(HyperellipticInstance::c_curve(12, 9), 3));
    CHECK_FALSE(local_obstruction(HyperellipticInstance::raw(1, 2, 3), {3, 4, 5, 7, 8, 9, 11}));
    // a reported obstruction really has no residue solution
    for (long v : {15L, -15L, -25L, 21L, -81L}) {
        const auto inst = HyperellipticInstance::h_curve(12, v);
        const auto m = local_obstruction(inst, extended_moduli());
        if (!m) continue;
        for (std::uint64_t x = 0; x < *m; ++x)
            for (std::uint64_t X = 0; X < *m; ++X) {
                const BigInt lhs = BigInt(static_cast<unsigned long>(x)) * static_cast<unsigned long>(x) + inst.D;
                const BigInt rhs = inst.C * pow(BigInt(static_cast<unsigned long>(X)), 2 * inst.n);
                CHECK((lhs - rhs) % static_cast<unsigned long>(*m) != 0);
            }
    }
}

TEST_CASE("solve examples") {
    const auto r = solve(HyperellipticInstance::raw(1, 2, 3));
    CHECK(r.completeness == Completeness::Complete);
    CHECK(as_set(r.solutions) == std::set<std::pair<BigInt, BigInt>>{{-5, 3}, {5, 3}});

    const auto h = solve(HyperellipticInstance::h_curve(22, 131));
    const std::vector<CurvePoint> hp{{-1, -23}, {-1, 23}, {1, -23}, {1, 23}};
    CHECK(h.curve_points == hp);

    const auto c = solve(HyperellipticInstance::c_curve(16, 37));
    for (const CurvePoint& p : std::vector<CurvePoint>{{-1, 6}, {-1, -6}, {3, 3788}, {3, -3788}})
        CHECK(std::find(c.curve_points.begin(), c.curve_points.end(), p) != c.curve_points.end());

    const auto x1 = solve(HyperellipticInstance::raw(1, -1, 3));
    CHECK(as_set(x1.solutions) == std::set<std::pair<BigInt, BigInt>>{{-3, 2}, {3, 2}, {-1, 0}, {1, 0}, {0, -1}});
}

TEST_CASE("reduction agrees with brute force on the small grid") {
    SolveBounds reduction_only;
    reduction_only.use_direct_search = false;
    int reduced = 0;
    for (long C : {1L, 5L})
        for (unsigned n : {3u, 5u})
            for (long D = -30; D <= 30; ++D) {
                if (D == 0) continue;
                const auto inst = HyperellipticInstance::raw(C, D, n);
                const auto sd = split_D(D);
                const bool real = sd.d < 0 && sd.d != -1;
                const auto r = solve(inst, real ? SolveBounds{} : reduction_only);
                CAPTURE(C);
                CAPTURE(D);
                CAPTURE(n);
                auto got = as_set(r.solutions);
                std::erase_if(got, [](const auto& s) { return abs(s.first) > 10000; });
                CHECK(got == brute(C, D, n, 10000));
                for (const auto& s : r.solutions) CHECK(inst.satisfied_by(s.x, s.y));
                if (!real) {
                    CHECK(r.completeness != Completeness::BoundedOnly);
                    ++reduced;
                }
            }
    CHECK(reduced == 140);  // 30 positive D and 5 negative squares, four (C, n) pairs
}

TEST_CASE("curve points from Hecke data lie on the curves") {
    std::mt19937_64 rng(13);
    for (int w : modforms::kWeights) {
        const auto s = modforms::eigenform_series(w, 13);
        for (int i = 0; i < 4; ++i) {
            const unsigned long p = std::vector<unsigned long>{2, 3, 5, 7, 11, 13}[rng() % 6];
            const auto ctx = lucas::LucasContext::make(p, w, s[p]);
            const BigInt pw = pow(BigInt(p), static_cast<unsigned long>(w - 1));
            const BigInt a = s[p];
            // C-curve: a(p^2) = a^2 - p^w
            CHECK(HyperellipticInstance::c_curve(w, lucas::lucas_term(ctx, 2)).satisfied_by(a, p));
            // H-curve: (2a^2 - 3p^w)^2 = 5 p^{2w} + 4 a(p^4)
            const BigInt Y = 2 * a * a - 3 * pw;
            CHECK(Y * Y == 5 * pw * pw + 4 * lucas::lucas_term(ctx, 4));
            CHECK(HyperellipticInstance::h_curve(w, lucas::lucas_term(ctx, 4)).satisfied_by(Y, BigInt(p * p)));
        }
    }
}

TEST_CASE("direct search against brute force") {
    for (auto [C, D, n] : std::vector<std::tuple<long, long, unsigned>>{{1, -2, 3}, {5, 4, 3}, {1, 7, 5}, {1, -17, 3}}) {
        const auto inst = HyperellipticInstance::raw(C, D, n);
        auto got = as_set(direct_search(inst, 500));
        std::erase_if(got, [](const auto& s) { return abs(s.first) > 2000; });
        auto want = brute(C, D, n, 2000);
        std::erase_if(want, [](const auto& s) { return abs(s.second) > 500; });
        CHECK(got == want);
    }
}

TEST_CASE("report json") {
    const auto r = solve(HyperellipticInstance::h_curve(12, 15));
    CHECK(r.completeness == Completeness::Obstructed);
    REQUIRE(r.obstruction_modulus);
    const auto j = nlohmann::json::parse(report_json(r));
    for (const char* k : {"instance", "completeness", "obstruction_modulus", "solutions", "thue_problems_generated", "bounds"})
        CHECK(j.contains(k));
    CHECK(j["completeness"] == completeness_name(Completeness::Obstructed));
}

}
