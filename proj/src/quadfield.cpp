#include "oddtau/quadfield.hpp"

#include "oddtau/arith.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace oddtau::quadfield {

namespace {

unsigned valuation(BigInt m, const BigInt& p) {
    if (m == 0) throw std::invalid_argument("valuation of zero");
    m = abs(m);
    unsigned v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

BigInt fdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt fmod(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

bool is_integer(const mpq_class& v) { return v.get_den() == 1; }

using Coords = std::pair<BigInt, BigInt>;  // u + v omega

Coords mul_coords(const QuadField& K, const Coords& x, const Coords& y) {
    const auto& [u1, v1] = x;
    const auto& [u2, v2] = y;
    const BigInt vv = v1 * v2;
    return {u1 * u2 - K.omega_norm * vv, u1 * v2 + u2 * v1 + K.trace * vv};
}

// HNF of the lattice spanned by gens; the lattice must have rank 2.
Ideal hnf(const std::vector<Coords>& gens) {
    bool have_pivot = false;
    BigInt pu, pv, a = 0;
    for (const auto& [u, v] : gens) {
        if (v == 0) {
            a = gcd(a, u);
            continue;
        }
        if (!have_pivot) {
            pu = u;
            pv = v;
            have_pivot = true;
            continue;
        }
        BigInt g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pv.get_mpz_t(), v.get_mpz_t());
        const BigInt zero_u = (v / g) * pu - (pv / g) * u;
        a = gcd(a, zero_u);
        pu = s * pu + t * u;
        pv = g;
    }
    if (!have_pivot || a == 0) throw std::logic_error("hnf: lattice is not of full rank");
    if (pv < 0) {
        pu = -pu;
        pv = -pv;
    }
    return Ideal{a, fmod(pu, a), pv};
}

std::vector<Coords> ideal_gens(const Ideal& x) { return {{x.a, 0}, {x.b, x.c}}; }

struct Mat {
    BigInt m00 = 1, m01 = 0, m10 = 0, m11 = 1;
};

// f <- f o M' with M' in SL2(Z) until f is reduced; M accumulates M'.
void reduce_tracked(QuadIdealClass& f, Mat& M) {
    for (;;) {
        if (f.b > f.a || f.b <= -f.a) {
            const BigInt k = fdiv(f.a - f.b, 2 * f.a);
            f.c = f.a * k * k + f.b * k + f.c;
            f.b = f.b + 2 * f.a * k;
            M.m01 += k * M.m00;
            M.m11 += k * M.m10;
        }
        if (f.a > f.c || (f.a == f.c && f.b < 0)) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            BigInt n00 = M.m01, n10 = M.m11;
            M.m01 = -M.m00;
            M.m11 = -M.m10;
            M.m00 = std::move(n00);
            M.m10 = std::move(n10);
            continue;
        }
        return;
    }
}

// Primitive part Z A + Z (B + omega) of x and its norm form.
QuadIdealClass norm_form(const QuadField& K, const Ideal& x, BigInt& A, BigInt& B) {
    A = x.a / x.c;
    B = x.b / x.c;
    const BigInt num = B * B + K.trace * B + K.omega_norm;
    if (!mpz_divisible_p(num.get_mpz_t(), A.get_mpz_t())) throw std::logic_error("norm_form: not an ideal");
    return QuadIdealClass{A, 2 * B + K.trace, num / A};
}

BigInt sqrt_mod_prime(const BigInt& a_in, const BigInt& p) {
    const BigInt a = fmod(a_in, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    BigInt r;
    // Tonelli-Shanks
    BigInt q = p - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    BigInt z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    BigInt c, t, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        BigInt tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
            if (i == m) throw std::invalid_argument("sqrt_mod_prime: not a square");
        }
        BigInt b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

std::string kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::CCurve: return "C-curve";
        case CurveKind::HCurve: return "H-curve";
        case CurveKind::Raw: return "raw";
    }
    return "raw";
}

}  // namespace

// ---------------------------------------------------------------------------
// Instances

HyperellipticInstance HyperellipticInstance::raw(const BigInt& C, const BigInt& D, unsigned n) {
    if (C == 0 || D == 0) throw std::invalid_argument("instance: C and D must be nonzero");
    if (n < 2) throw std::invalid_argument("instance: n must be at least 2");
    HyperellipticInstance h;
    h.C = C;
    h.D = D;
    h.n = n;
    return h;
}

HyperellipticInstance HyperellipticInstance::c_curve(int weight, const BigInt& value) {
    if (weight < 4 || weight % 2) throw std::invalid_argument("c_curve: bad weight");
    if (value == 0) throw std::invalid_argument("c_curve: value must be nonzero");
    HyperellipticInstance h = raw(1, -value, static_cast<unsigned>(weight - 1));
    h.kind = CurveKind::CCurve;
    h.weight = weight;
    h.value = value;
    return h;
}

HyperellipticInstance HyperellipticInstance::h_curve(int weight, const BigInt& value) {
    if (weight < 4 || weight % 2) throw std::invalid_argument("h_curve: bad weight");
    if (value == 0) throw std::invalid_argument("h_curve: value must be nonzero");
    HyperellipticInstance h = raw(5, -4 * value, static_cast<unsigned>(weight - 1));
    h.kind = CurveKind::HCurve;
    h.weight = weight;
    h.value = value;
    h.y_constraint = YConstraint::PerfectSquare;
    return h;
}

bool HyperellipticInstance::satisfied_by(const BigInt& x, const BigInt& y) const {
    if (y_constraint == YConstraint::PerfectSquare && (y < 0 || !mpz_perfect_square_p(y.get_mpz_t()))) return false;
    return x * x + D == C * pow(y, n);
}

std::string HyperellipticInstance::describe() const {
    std::ostringstream os;
    switch (kind) {
        case CurveKind::CCurve:
            os << "Y^2 = X^" << n << (value < 0 ? " - " : " + ") << to_string(abs(value));
            break;
        case CurveKind::HCurve:
            os << "Y^2 = 5 X^" << 2 * n << (value < 0 ? " - " : " + ") << to_string(4 * abs(value));
            break;
        case CurveKind::Raw:
            os << "x^2 " << (D < 0 ? "- " : "+ ") << to_string(abs(D)) << " = ";
            if (C != 1) os << to_string(C) << " ";
            os << "y^" << n;
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Fields and elements

SplitD split_D(const BigInt& D) {
    if (D == 0) throw std::invalid_argument("split_D: D must be nonzero");
    const auto s = squarefree_split(D);
    return SplitD{s.d, s.q};
}

QuadField QuadField::make(const BigInt& d) {
    if (d <= 0) throw UnsupportedRealQuadratic("Q(sqrt(" + to_string(-d) + ")) is not imaginary quadratic");
    if (d > 1) {
        for (const auto& pp : factor(d).factors) {
            if (pp.exponent > 1) throw std::invalid_argument("QuadField: d must be squarefree");
        }
    }
    QuadField K;
    K.d = d;
    if (fmod(-d, 4) == 1) {
        K.disc = -d;
        K.trace = 1;
        K.omega_norm = (1 + d) / 4;
    } else {
        K.disc = -4 * d;
        K.trace = 0;
        K.omega_norm = d;
    }
    K.units = d == 1 ? 4 : d == 3 ? 6 : 2;
    return K;
}

std::string QuadField::omega_name() const {
    return trace == 0 ? "sqrt(-" + to_string(d) + ")" : "(1+sqrt(-" + to_string(d) + "))/2";
}

Elem elem_mul(const QuadField& K, const Elem& a, const Elem& b) {
    return Elem{a.r * b.r - mpq_class(K.d) * a.s * b.s, a.r * b.s + a.s * b.r};
}

Elem elem_pow(const QuadField& K, const Elem& a, unsigned e) {
    Elem result{1, 0}, base = a;
    while (e) {
        if (e & 1) result = elem_mul(K, result, base);
        e >>= 1;
        if (e) base = elem_mul(K, base, base);
    }
    return result;
}

Elem elem_conj(const Elem& a) { return Elem{a.r, -a.s}; }

mpq_class elem_norm(const QuadField& K, const Elem& a) { return a.r * a.r + mpq_class(K.d) * a.s * a.s; }

Elem from_basis(const QuadField& K, const BigInt& u, const BigInt& v) {
    if (K.trace == 0) return Elem{mpq_class(u), mpq_class(v)};
    Elem e{mpq_class(u) + mpq_class(v, 2), mpq_class(v, 2)};
    e.r.canonicalize();
    e.s.canonicalize();
    return e;
}

std::string elem_string(const Elem& a, const QuadField& K) {
    std::ostringstream os;
    os << a.r.get_str() << (a.s < 0 ? " - " : " + ") << mpq_class(abs(a.s)).get_str() << "*sqrt(-" << to_string(K.d)
       << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Ideals and forms

Ideal unit_ideal() { return Ideal{1, 0, 1}; }

Ideal ideal_mul(const QuadField& K, const Ideal& x, const Ideal& y) {
    std::vector<Coords> gens;
    for (const auto& g : ideal_gens(x)) {
        for (const auto& h : ideal_gens(y)) gens.push_back(mul_coords(K, g, h));
    }
    return hnf(gens);
}

Ideal ideal_pow(const QuadField& K, const Ideal& x, unsigned e) {
    Ideal result = unit_ideal(), base = x;
    while (e) {
        if (e & 1) result = ideal_mul(K, result, base);
        e >>= 1;
        if (e) base = ideal_mul(K, base, base);
    }
    return result;
}

Ideal ideal_conj(const QuadField& K, const Ideal& x) {
    return hnf({{x.a, 0}, {x.b + K.trace * x.c, -x.c}});
}

BigInt ideal_norm(const Ideal& x) { return x.a * x.c; }

Ideal principal_ideal(const QuadField& K, const BigInt& u, const BigInt& v) {
    if (u == 0 && v == 0) throw std::invalid_argument("principal_ideal: zero element");
    return hnf({{u, v}, mul_coords(K, {u, v}, {0, 1})});
}

std::vector<QuadIdealClass> class_group(const QuadField& K) {
    if (K.disc >= 0) throw UnsupportedRealQuadratic("class_group: discriminant must be negative");
    const BigInt absd = -K.disc;
    if (absd > BigInt("1000000000000")) throw std::invalid_argument("class_group: discriminant too large");
    const std::int64_t D = to_int64(K.disc);
    std::vector<QuadIdealClass> out;
    for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (((b - D) % 2 + 2) % 2) continue;
            const std::int64_t num = b * b - D;
            if (num % (4 * a)) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a || (c == a && b < 0)) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

Ideal ideal_of_form(const QuadField& K, const QuadIdealClass& f) {
    return Ideal{f.a, fmod((f.b - K.trace) / 2, f.a), 1};
}

QuadIdealClass class_of(const QuadField& K, const Ideal& x) {
    BigInt A, B;
    QuadIdealClass f = norm_form(K, x, A, B);
    Mat M;
    reduce_tracked(f, M);
    return f;
}

std::optional<Elem> principal_generator(const QuadField& K, const Ideal& x) {
    BigInt A, B;
    QuadIdealClass f = norm_form(K, x, A, B);
    Mat M;
    reduce_tracked(f, M);
    if (f.a != 1) return std::nullopt;
    // f(M00, M10) = 1, so xi = M00 A + M10 (B + omega) has norm A
    const BigInt X = M.m00, Y = M.m10;
    return from_basis(K, x.c * (X * A + Y * B), x.c * Y);
}

std::string split_name(SplitType t) {
    switch (t) {
        case SplitType::Split: return "split";
        case SplitType::Inert: return "inert";
        case SplitType::Ramified: return "ramified";
    }
    return "inert";
}

PrimeSplitting prime_ideals_above(const QuadField& K, const BigInt& p) {
    if (K.disc >= 0) throw UnsupportedRealQuadratic("prime_ideals_above: discriminant must be negative");
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("prime_ideals_above: p must be prime");
    PrimeSplitting s;
    s.p = p;
    const int k = kronecker(K.disc, p);
    std::vector<BigInt> roots;  // r with r^2 + t r + N(omega) = 0 mod p
    if (k == -1) {
        s.type = SplitType::Inert;
        s.ideals.push_back(Ideal{p, 0, p});
    } else {
        s.type = k == 0 ? SplitType::Ramified : SplitType::Split;
        if (p == 2) {
            for (int r = 0; r < 2; ++r) {
                if (fmod(BigInt(r * r + K.trace * r) + K.omega_norm, 2) == 0) roots.push_back(r);
            }
        } else {
            const BigInt sq = sqrt_mod_prime(K.disc, p);
            BigInt inv2;
            BigInt two = 2;
            mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
            roots.push_back(fmod((-K.trace + sq) * inv2, p));
            if (s.type == SplitType::Split) roots.push_back(fmod((-K.trace - sq) * inv2, p));
        }
        if (s.type == SplitType::Ramified) roots.resize(1);
        if (roots.size() != (s.type == SplitType::Split ? 2u : 1u)) throw std::logic_error("prime_ideals_above: root count");
        for (const auto& r : roots) s.ideals.push_back(Ideal{p, r, 1});
    }
    for (const auto& I : s.ideals) s.forms.push_back(class_of(K, I));
    return s;
}

std::vector<Elem> unit_representatives(const QuadField& K, unsigned n) {
    Elem zeta;
    if (K.units == 4) zeta = Elem{0, 1};
    else if (K.units == 6) zeta = Elem{mpq_class(1, 2), mpq_class(1, 2)};
    else zeta = Elem{-1, 0};
    const unsigned g = std::gcd(n, K.units);
    std::vector<Elem> out;
    Elem cur{1, 0};
    for (unsigned j = 0; j < g; ++j) {
        out.push_back(cur);
        cur = elem_mul(K, cur, zeta);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gamma set
//
// Let alpha = x + q sqrt(-d). A prime outside S = {primes above 2qCd} cannot divide both
// alpha and its conjugate, so its exponent in (alpha) is a multiple of n. Writing the
// exponents on S as kappa + n e with 0 <= kappa < n gives (alpha) = a_+ b^n, and
//   kappa_P + kappa_Pbar = v_P(C) mod n,
//   min(kappa_P, kappa_Pbar) <= v_P(2 q sqrt(-d)).
// No upper bound on kappa itself is imposed: when a prime divides q and y, one side of a
// split pair can legitimately carry residue n - 1 while the other carries a small one.

GammaSet build_gamma_set(const BigInt& C, const BigInt& D, unsigned n) {
    if (D <= 0) {
        throw UnsupportedRealQuadratic("build_gamma_set: D = " + to_string(D) + " does not give an imaginary field");
    }
    if (C <= 0) throw std::invalid_argument("build_gamma_set: C must be positive");
    const SplitD sd = split_D(D);
    GammaSet G;
    G.field = QuadField::make(sd.d);
    G.q = sd.q;
    G.n = n;
    const QuadField& K = G.field;

    // choices per prime: a list of (ideal, exponent) combinations given as a partial product
    std::set<BigInt> primes;
    for (const BigInt& v : {BigInt(2), sd.q, C, sd.d}) {
        if (abs(v) > 1) {
            for (const auto& p : factor(v).primes()) primes.insert(p);
        }
    }
    std::vector<std::vector<Ideal>> choices;
    G.kappa_space = 1;
    for (const auto& p : primes) {
        const PrimeSplitting sp = prime_ideals_above(K, p);
        const unsigned e = sp.type == SplitType::Ramified ? 2 : 1;
        const unsigned vC = e * valuation(C, p);
        const unsigned bound2 = e * valuation(2 * sd.q, p) + (mpz_divisible_p(sd.d.get_mpz_t(), p.get_mpz_t()) ? 1 : 0);
        std::vector<Ideal> opts;
        if (sp.type == SplitType::Split) {
            G.kappa_space *= static_cast<std::uint64_t>(n) * n;
            for (unsigned k = 0; k < n; ++k) {
                const unsigned kb = static_cast<unsigned>(((static_cast<long>(vC) - k) % n + n) % n);
                if (std::min(k, kb) > bound2) continue;
                opts.push_back(ideal_mul(K, ideal_pow(K, sp.ideals[0], k), ideal_pow(K, sp.ideals[1], kb)));
            }
        } else {
            G.kappa_space *= n;
            for (unsigned k = 0; k < n; ++k) {
                if ((2 * k) % n != vC % n || k > bound2) continue;
                opts.push_back(ideal_pow(K, sp.ideals[0], k));
            }
        }
        choices.push_back(std::move(opts));
    }

    std::vector<Ideal> a_plus{unit_ideal()};
    for (const auto& opts : choices) {
        std::vector<Ideal> next;
        for (const auto& a : a_plus) {
            for (const auto& o : opts) next.push_back(ideal_mul(K, a, o));
        }
        a_plus = std::move(next);
    }
    G.kappa_vectors = a_plus.size();

    const auto classes = class_group(K);
    G.class_number = classes.size();
    std::vector<Ideal> conj_pow;
    std::vector<BigInt> norm_pow;
    for (const auto& f : classes) {
        const Ideal g = ideal_of_form(K, f);
        conj_pow.push_back(ideal_pow(K, ideal_conj(K, g), n));
        norm_pow.push_back(pow(ideal_norm(g), n));
    }
    const auto units = unit_representatives(K, n);

    for (const auto& a : a_plus) {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const auto gen = principal_generator(K, ideal_mul(K, a, conj_pow[i]));
            if (!gen) continue;
            const mpq_class scale(1, norm_pow[i]);
            const Elem base{gen->r * scale, gen->s * scale};
            for (std::size_t u = 0; u < units.size(); ++u) {
                const Elem g = elem_mul(K, units[u], base);
                const bool dup = std::any_of(G.pairs.begin(), G.pairs.end(),
                                             [&](const GammaPair& p) { return p.plus == g; });
                if (dup) continue;
                G.pairs.push_back({g, elem_conj(g), a, i, u});
            }
        }
    }
    return G;
}

std::string ThueProblem::describe() const {
    std::ostringstream os;
    if (source == ProblemSource::Imaginary) {
        os << "gamma = " << gamma.r.get_str() << (gamma.s < 0 ? " - " : " + ") << mpq_class(abs(gamma.s)).get_str()
           << "*sqrt(-d)";
    } else {
        os << "(a, b, c1, c2) = (" << to_string(a) << ", " << to_string(b) << ", " << to_string(c1) << ", "
           << to_string(c2) << ")";
    }
    os << ": G(U, V) = " << to_string(target) << ", G = [";
    for (std::size_t j = 0; j < form.coeffs.size(); ++j) os << (j ? ", " : "") << to_string(form.coeffs[j]);
    os << "]";
    return os.str();
}

std::vector<ThueProblem> imaginary_thue_problems(const GammaSet& G) {
    const QuadField& K = G.field;
    const unsigned n = G.n;
    const Elem omega = from_basis(K, 0, 1);
    std::vector<Elem> omega_pow{Elem{1, 0}};
    for (unsigned j = 1; j <= n; ++j) omega_pow.push_back(elem_mul(K, omega_pow.back(), omega));

    std::vector<ThueProblem> out;
    for (const auto& pair : G.pairs) {
        // sqrt(-d) part of gamma (A + B omega)^n = sum_j binom(n, j) A^{n-j} B^j gamma omega^j
        std::vector<mpq_class> coeff(n + 1);
        BigInt den = 1;
        for (unsigned j = 0; j <= n; ++j) {
            coeff[j] = mpq_class(binomial(n, j)) * elem_mul(K, pair.plus, omega_pow[j]).s;
            coeff[j].canonicalize();
            den = lcm(den, coeff[j].get_den());
        }
        ThueProblem t;
        t.source = ProblemSource::Imaginary;
        t.gamma = pair.plus;
        BigInt content = 0;
        for (const auto& c : coeff) {
            mpq_class scaled = c * mpq_class(den);
            if (!is_integer(scaled)) throw std::logic_error("imaginary_thue_problems: denominators not cleared");
            t.form.coeffs.push_back(scaled.get_num());
            content = gcd(content, scaled.get_num());
        }
        t.target = G.q * den;
        if (content > 1 && mpz_divisible_p(t.target.get_mpz_t(), content.get_mpz_t())) {
            for (auto& c : t.form.coeffs) c /= content;
            t.target /= content;
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<ThueProblem> rational_case(const BigInt& C, const BigInt& D, unsigned n) {
    const SplitD sd = split_D(D);
    if (sd.d != -1) throw std::invalid_argument("rational_case: D must be a negative square");
    if (C <= 0) throw std::invalid_argument("rational_case: C must be positive");
    const BigInt q = sd.q;
    const auto R = factor(2 * q).primes();

    // (a, b) exponent pairs per prime: (0, 0), (i, n - i) for 0 < i < n, (n, n)
    std::vector<std::pair<BigInt, BigInt>> ab{{1, 1}};
    for (const auto& p : R) {
        std::vector<std::pair<BigInt, BigInt>> next;
        for (const auto& [a, b] : ab) {
            next.push_back({a, b});
            for (unsigned i = 1; i < n; ++i) next.push_back({a * pow(p, i), b * pow(p, n - i)});
            next.push_back({a * pow(p, n), b * pow(p, n)});
        }
        ab = std::move(next);
    }

    std::vector<ThueProblem> out;
    std::set<std::pair<BigInt, BigInt>> seen;
    const BigInt rhs = 2 * q;
    for (const auto& c2 : divisors(factor(C))) {
        const BigInt c1 = C / c2;
        for (const auto& [a, b] : ab) {
            const BigInt lead = b * c2, trail = a * c1;
            if (!seen.insert({lead, trail}).second) continue;
            ThueProblem t;
            t.source = ProblemSource::Rational;
            t.a = a;
            t.b = b;
            t.c1 = c1;
            t.c2 = c2;
            t.form.coeffs.assign(n + 1, 0);
            t.form.coeffs[0] = lead;
            t.form.coeffs[n] = -trail;
            t.target = rhs;
            out.push_back(std::move(t));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Local obstructions

bool obstructed_mod(const HyperellipticInstance& inst, std::uint64_t m) {
    if (m < 2) return false;
    std::vector<char> square(m, 0);
    for (std::uint64_t x = 0; x < m; ++x) square[mulmod_u64(x, x, m)] = 1;
    const std::uint64_t C = mod_u64(inst.C, m), D = mod_u64(inst.D, m);
    const bool constrained = inst.y_constraint == YConstraint::PerfectSquare;
    for (std::uint64_t y = 0; y < m; ++y) {
        const std::uint64_t base = constrained ? mulmod_u64(y, y, m) : y;
        const std::uint64_t rhs = mulmod_u64(C, powmod_u64(base, inst.n, m), m);
        if (square[(rhs + m - D) % m]) return false;
    }
    return true;
}

std::optional<std::uint64_t> local_obstruction(const HyperellipticInstance& inst,
                                               const std::vector<std::uint64_t>& moduli) {
    for (auto m : moduli) {
        if (obstructed_mod(inst, m)) return m;
    }
    return std::nullopt;
}

const std::vector<std::uint64_t>& basic_moduli() {
    static const std::vector<std::uint64_t> m{3, 4, 5, 7, 8, 9, 11, 13, 16, 25};
    return m;
}

const std::vector<std::uint64_t>& extended_moduli() {
    static const std::vector<std::uint64_t> m = [] {
        std::vector<std::uint64_t> out = basic_moduli();
        for (auto p : primes_up_to(1000)) {
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        }
        for (std::uint64_t pp : {27, 32, 49, 64, 81, 121, 125, 169, 243, 289, 343, 361, 529, 625, 841, 961}) {
            out.push_back(pp);
        }
        return out;
    }();
    return m;
}

// ---------------------------------------------------------------------------
// Solving

std::string completeness_name(Completeness c) {
    switch (c) {
        case Completeness::Obstructed: return "obstructed";
        case Completeness::Complete: return "complete-via-reduction";
        case Completeness::CompleteWithinThueBound: return "complete-via-reduction-within-thue-bound";
        case Completeness::BoundedOnly: return "bounded-only";
    }
    return "bounded-only";
}

std::vector<Solution> direct_search(const HyperellipticInstance& inst, const BigInt& bound) {
    std::vector<Solution> out;
    const bool constrained = inst.y_constraint == YConstraint::PerfectSquare;
    const BigInt lo = constrained ? BigInt(0) : BigInt(-bound);
    for (BigInt t = lo; t <= bound; ++t) {
        const BigInt y = constrained ? BigInt(t * t) : t;
        const BigInt rhs = inst.C * pow(y, inst.n) - inst.D;
        if (rhs < 0 || !mpz_perfect_square_p(rhs.get_mpz_t())) continue;
        BigInt x;
        mpz_sqrt(x.get_mpz_t(), rhs.get_mpz_t());
        out.push_back({-x, y});
        if (x != 0) out.push_back({x, y});
    }
    return out;
}

namespace {

bool solution_less(const Solution& a, const Solution& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

// Direct search range: every |x| <= x_bound and |curve X| <= curve_bound.
BigInt direct_bound(const HyperellipticInstance& inst, const SolveBounds& b) {
    const BigInt top = (b.x_bound * b.x_bound + abs(inst.D)) / abs(inst.C);
    BigInt r;
    mpz_root(r.get_mpz_t(), top.get_mpz_t(), inst.n);
    r += 1;
    if (inst.y_constraint == YConstraint::PerfectSquare) {
        BigInt s;
        mpz_sqrt(s.get_mpz_t(), r.get_mpz_t());
        r = s + 1;
    }
    return std::max(r, b.curve_bound);
}

// (x, y) from x^2 + D = C y^N (N = n, or 2n with y = X^2 when that constraint is folded in).
std::optional<Solution> recover(const HyperellipticInstance& inst, const mpq_class& xq, unsigned N) {
    if (!is_integer(xq)) return std::nullopt;
    const BigInt x = xq.get_num();
    const BigInt rhs = x * x + inst.D;
    if (!mpz_divisible_p(rhs.get_mpz_t(), inst.C.get_mpz_t())) return std::nullopt;
    const BigInt quo = rhs / inst.C;
    BigInt y;
    if (N == inst.n) {
        if (N % 2) {
            auto r = signed_integer_root(quo, N);
            if (!r) return std::nullopt;
            y = *r;
        } else {
            if (quo < 0) return std::nullopt;
            auto r = integer_root(quo, N);
            if (!r) return std::nullopt;
            y = *r;
        }
    } else {
        if (quo < 0) return std::nullopt;
        auto r = integer_root(quo, N);
        if (!r) return std::nullopt;
        y = *r * *r;
    }
    if (!inst.satisfied_by(x, y)) return std::nullopt;
    return Solution{x, y};
}

}  // namespace

SolutionReport solve(const HyperellipticInstance& inst, const SolveBounds& bounds) {
    SolutionReport rep;
    rep.instance = inst;
    rep.bounds = bounds;
    rep.route = "none";

    const auto& moduli = bounds.extended_moduli ? extended_moduli() : basic_moduli();
    rep.obstruction_modulus = local_obstruction(inst, moduli);
    if (rep.obstruction_modulus) {
        rep.completeness = Completeness::Obstructed;
        return rep;
    }

    std::vector<Solution> found;
    bool reduction_complete = false;
    bool reduction_ran = false;
    const SplitD sd = split_D(inst.D);
    const bool constrained = inst.y_constraint == YConstraint::PerfectSquare;

    if (bounds.use_reduction && inst.C > 0) {
        std::vector<ThueProblem> problems;
        std::optional<QuadField> field;
        unsigned N = inst.n;
        if (sd.d > 0) {
            rep.route = "imaginary";
            // y = X^2 turns C y^n into C X^{2n}; the reduction runs with exponent 2n.
            if (constrained) N = 2 * inst.n;
            const GammaSet G = build_gamma_set(inst.C, inst.D, N);
            field = G.field;
            problems = imaginary_thue_problems(G);
            std::ostringstream os;
            os << "field Q(sqrt(-" << to_string(G.field.d) << ")), h = " << G.class_number << ", exponent " << N
               << ", " << G.kappa_vectors << " of " << G.kappa_space << " exponent vectors admissible, "
               << G.pairs.size() << " gamma";
            rep.notes.push_back(os.str());
        } else if (sd.d == -1) {
            rep.route = "rational";
            if (inst.n % 2 == 0) {
                rep.notes.push_back("rational reduction needs odd n; skipped");
            } else {
                problems = rational_case(inst.C, inst.D, inst.n);
                // y = 0
                for (const BigInt& x : {BigInt(-sd.q), sd.q}) {
                    if (inst.satisfied_by(x, 0)) found.push_back({x, 0});
                }
            }
        } else {
            rep.route = "real";
            rep.notes.push_back("Q(sqrt(" + to_string(-sd.d) +
                                ")) is real quadratic: no reduction (infinite unit group); bounded direct search only");
        }

        if (rep.route != "real" && !(rep.route == "rational" && inst.n % 2 == 0)) {
            reduction_ran = true;
            reduction_complete = true;
            rep.thue_problems_generated = problems.size();
            thue::FormSolveOptions opts;
            opts.v_bound = bounds.thue_bound;
            opts.threads = bounds.threads;
            for (const auto& t : problems) {
                ThueOutcome out;
                out.description = t.describe();
                out.obstruction_modulus = thue::form_local_obstruction(t.form, t.target, thue::default_form_moduli());
                if (out.obstruction_modulus) {
                    out.status = ThueStatus::Obstructed;
                    rep.thue_outcomes.push_back(std::move(out));
                    continue;
                }
                const auto res = thue::solve_form(t.form, {t.target}, opts);
                out.status = res.complete && !res.infinite_family ? ThueStatus::Exhausted : ThueStatus::Bounded;
                if (out.status == ThueStatus::Bounded) reduction_complete = false;
                for (const auto& pt : res.points) {
                    std::optional<Solution> s;
                    if (t.source == ProblemSource::Imaginary) {
                        const Elem val = elem_mul(*field, t.gamma, elem_pow(*field, from_basis(*field, pt.U, pt.V), N));
                        if (val.s != mpq_class(sd.q)) throw std::logic_error("solve: Thue point has wrong sqrt(-d) part");
                        s = recover(inst, val.r, N);
                    } else {
                        mpq_class xq(BigInt(t.b * t.c2 * pow(pt.U, N) + t.a * t.c1 * pow(pt.V, N)), 2);
                        xq.canonicalize();
                        s = recover(inst, xq, N);
                    }
                    if (s) {
                        found.push_back(*s);
                        ++out.solutions;
                    }
                }
                rep.thue_outcomes.push_back(std::move(out));
            }
        }
    } else if (inst.C <= 0) {
        rep.notes.push_back("reduction needs C > 0; bounded direct search only");
    }

    if (reduction_ran) {
        rep.completeness = reduction_complete ? Completeness::Complete : Completeness::CompleteWithinThueBound;
    } else {
        rep.completeness = Completeness::BoundedOnly;
    }

    std::sort(found.begin(), found.end(), solution_less);
    found.erase(std::unique(found.begin(), found.end()), found.end());

    if (bounds.use_direct_search) {
        rep.direct_y_bound = direct_bound(inst, bounds);
        for (const auto& s : direct_search(inst, rep.direct_y_bound)) {
            if (std::binary_search(found.begin(), found.end(), s, solution_less)) continue;
            if (rep.completeness == Completeness::Complete) {
                throw std::logic_error("solve: direct search found (" + to_string(s.x) + ", " + to_string(s.y) +
                                       ") missed by a complete reduction of " + inst.describe());
            }
            if (reduction_ran) {
                rep.notes.push_back("direct search found (" + to_string(s.x) + ", " + to_string(s.y) +
                                    ") outside the Thue bound");
            }
            found.push_back(s);
        }
        std::sort(found.begin(), found.end(), solution_less);
    }

    for (const auto& s : found) {
        if (!inst.satisfied_by(s.x, s.y)) throw std::logic_error("solve: emitted point fails the equation");
    }
    rep.solutions = found;

    if (inst.kind == CurveKind::CCurve) {
        for (const auto& s : found) rep.curve_points.push_back({s.y, s.x});
    } else if (inst.kind == CurveKind::HCurve) {
        for (const auto& s : found) {
            BigInt X;
            mpz_sqrt(X.get_mpz_t(), s.y.get_mpz_t());
            rep.curve_points.push_back({-X, s.x});
            if (X != 0) rep.curve_points.push_back({X, s.x});
        }
    }
    std::sort(rep.curve_points.begin(), rep.curve_points.end(), [](const CurvePoint& a, const CurvePoint& b) {
        return a.X != b.X ? a.X < b.X : a.Y < b.Y;
    });
    return rep;
}

std::string report_json(const SolutionReport& r) {
    using detail::big_to_json;
    nlohmann::json j;
    const auto& in = r.instance;
    j["instance"] = {{"C", big_to_json(in.C)},
                     {"D", big_to_json(in.D)},
                     {"n", in.n},
                     {"provenance", kind_name(in.kind)},
                     {"y_constraint", in.y_constraint == YConstraint::PerfectSquare ? "perfect-square" : "none"},
                     {"equation", in.describe()}};
    if (in.kind != CurveKind::Raw) {
        j["instance"]["weight"] = in.weight;
        j["instance"]["value"] = big_to_json(in.value);
    }
    j["completeness"] = completeness_name(r.completeness);
    j["obstruction_modulus"] = r.obstruction_modulus ? nlohmann::json(*r.obstruction_modulus) : nlohmann::json();
    j["solutions"] = nlohmann::json::array();
    for (const auto& s : r.solutions) j["solutions"].push_back({big_to_json(s.x), big_to_json(s.y)});
    if (in.kind != CurveKind::Raw) {
        j["curve_points"] = nlohmann::json::array();
        for (const auto& p : r.curve_points) j["curve_points"].push_back({big_to_json(p.X), big_to_json(p.Y)});
    }
    j["route"] = r.route;
    j["thue_problems_generated"] = r.thue_problems_generated;
    j["thue_problems"] = nlohmann::json::array();
    for (const auto& t : r.thue_outcomes) {
        const char* st = t.status == ThueStatus::Obstructed ? "obstructed"
                         : t.status == ThueStatus::Exhausted ? "exhausted"
                                                             : "bounded";
        nlohmann::json e{{"problem", t.description}, {"status", st}, {"solutions", t.solutions}};
        if (t.obstruction_modulus) e["modulus"] = *t.obstruction_modulus;
        j["thue_problems"].push_back(std::move(e));
    }
    j["bounds"] = {{"thue_bound", big_to_json(r.bounds.thue_bound)},
                   {"x_bound", big_to_json(r.bounds.x_bound)},
                   {"curve_bound", big_to_json(r.bounds.curve_bound)},
                   {"direct_y_bound", big_to_json(r.direct_y_bound)}};
    j["notes"] = r.notes;
    return j.dump(2);
}

}  // namespace oddtau::quadfield
