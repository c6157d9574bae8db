#pragma once

// Integer points on x^2 + D = C y^n.
//
// Imaginary case (D = d q^2, d > 0 squarefree, K = Q(sqrt(-d))): every solution has
//   x + q sqrt(-d) = gamma (A + B omega)^n
// for some gamma in a finite set and integers A, B. Comparing sqrt(-d) parts gives a Thue
// equation in (A, B) with right-hand side q; x is the rational part. gamma runs over
// generators of a_+ g^-n times units mod n-th powers, where (alpha) = a_+ b^n splits off
// the part of (alpha) supported on primes above 2qCd, and g runs over class representatives.
//
// Rational case (D = -q^2): x + q = b c2 U^n and x - q = a c1 V^n.
//
// Real case (D < 0 not a square): no reduction; bounded search only.

#include "oddtau/binform.hpp"
#include "oddtau/bigint.hpp"

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddtau::quadfield {

struct UnsupportedRealQuadratic : std::domain_error {
    using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Instances

enum class CurveKind { CCurve, HCurve, Raw };
enum class YConstraint { None, PerfectSquare };

struct HyperellipticInstance {
    BigInt C, D;
    unsigned n = 3;
    CurveKind kind = CurveKind::Raw;
    int weight = 0;  // curves only
    BigInt value;    // curves only: the signed target of tau(p^2) or tau(p^4)
    YConstraint y_constraint = YConstraint::None;

    static HyperellipticInstance raw(const BigInt& C, const BigInt& D, unsigned n);
    /// Y^2 = X^{2k-1} + value, i.e. x = Y, y = X, C = 1, D = -value.
    static HyperellipticInstance c_curve(int weight, const BigInt& value);
    /// Y^2 = 5 X^{2(2k-1)} + 4 value, i.e. x = Y, y = X^2, C = 5, D = -4 value.
    static HyperellipticInstance h_curve(int weight, const BigInt& value);

    bool satisfied_by(const BigInt& x, const BigInt& y) const;
    std::string describe() const;
};

// ---------------------------------------------------------------------------
// Fields, elements, ideals

struct SplitD {
    BigInt d;  // squarefree, sign of D
    BigInt q;  // >= 1
};

/// D = d q^2.
SplitD split_D(const BigInt& D);

struct QuadField {
    BigInt d;           // K = Q(sqrt(-d)), d > 0 squarefree
    BigInt disc;        // -4d or -d
    int trace = 0;      // Tr(omega)
    BigInt omega_norm;  // N(omega); omega^2 = trace * omega - omega_norm
    unsigned units = 2; // |O_K^*|

    /// Throws UnsupportedRealQuadratic for d <= 0, std::invalid_argument if d is not squarefree.
    static QuadField make(const BigInt& d);
    std::string omega_name() const;
};

/// r + s sqrt(-d) with rational r, s.
struct Elem {
    mpq_class r, s;
    friend bool operator==(const Elem&, const Elem&) = default;
};

Elem elem_mul(const QuadField& K, const Elem& a, const Elem& b);
Elem elem_pow(const QuadField& K, const Elem& a, unsigned e);
Elem elem_conj(const Elem& a);
mpq_class elem_norm(const QuadField& K, const Elem& a);
/// u + v omega as r + s sqrt(-d).
Elem from_basis(const QuadField& K, const BigInt& u, const BigInt& v);
std::string elem_string(const Elem& a, const QuadField& K);

/// The Z-module Z a + Z (b + c omega) in Hermite normal form (a, c > 0, 0 <= b < a, c | a, c | b).
struct Ideal {
    BigInt a, b, c;
    friend bool operator==(const Ideal&, const Ideal&) = default;
};

Ideal unit_ideal();
Ideal ideal_mul(const QuadField& K, const Ideal& x, const Ideal& y);
Ideal ideal_pow(const QuadField& K, const Ideal& x, unsigned e);
Ideal ideal_conj(const QuadField& K, const Ideal& x);
BigInt ideal_norm(const Ideal& x);
/// The ideal generated by one element given in integral coordinates u + v omega.
Ideal principal_ideal(const QuadField& K, const BigInt& u, const BigInt& v);

/// Positive definite form a x^2 + b xy + c y^2; reduced means |b| <= a <= c, b >= 0 on the boundary.
struct QuadIdealClass {
    BigInt a, b, c;
    friend bool operator==(const QuadIdealClass&, const QuadIdealClass&) = default;
};

/// All reduced forms of discriminant K.disc (h = size).
std::vector<QuadIdealClass> class_group(const QuadField& K);
/// The ideal Z a + Z ((b - t)/2 + omega) attached to a form.
Ideal ideal_of_form(const QuadField& K, const QuadIdealClass& f);
/// The reduced form of the class of an ideal.
QuadIdealClass class_of(const QuadField& K, const Ideal& x);

/// A generator of the ideal when it is principal.
std::optional<Elem> principal_generator(const QuadField& K, const Ideal& x);

enum class SplitType { Split, Inert, Ramified };
std::string split_name(SplitType t);

struct PrimeSplitting {
    BigInt p;
    SplitType type = SplitType::Inert;
    std::vector<Ideal> ideals;            // one (inert, ramified) or the conjugate pair (split)
    std::vector<QuadIdealClass> forms;    // classes of those ideals
};

PrimeSplitting prime_ideals_above(const QuadField& K, const BigInt& p);

/// Representatives of O_K^* / (O_K^*)^n: zeta^j for j < gcd(n, |O_K^*|).
std::vector<Elem> unit_representatives(const QuadField& K, unsigned n);

// ---------------------------------------------------------------------------
// Reductions

struct GammaPair {
    Elem plus, minus;  // minus == conj(plus)
    Ideal a_plus;
    std::size_t class_index = 0;
    std::size_t unit_index = 0;
};

struct GammaSet {
    QuadField field;
    BigInt q;
    unsigned n = 0;
    std::vector<GammaPair> pairs;
    std::uint64_t kappa_vectors = 0;  // exponent vectors that met the constraints
    std::uint64_t kappa_space = 0;    // size of the box they were drawn from
    std::size_t class_number = 0;
};

/// Requires D > 0 (D not a negative square, and not real quadratic).
GammaSet build_gamma_set(const BigInt& C, const BigInt& D, unsigned n);

enum class ProblemSource { Imaginary, Rational };

struct ThueProblem {
    thue::BinaryForm form;  // in (A, B) or (U, V)
    BigInt target;
    ProblemSource source = ProblemSource::Imaginary;
    Elem gamma;                  // imaginary
    BigInt a, b, c1, c2;         // rational
    std::string describe() const;
};

/// The Thue problems of the imaginary case, one per gamma, with denominators cleared.
std::vector<ThueProblem> imaginary_thue_problems(const GammaSet& g);

/// b c2 U^n - a c1 V^n = 2q for every admissible (a, b, c1, c2). Requires D = -q^2 and C > 0.
std::vector<ThueProblem> rational_case(const BigInt& C, const BigInt& D, unsigned n);

// ---------------------------------------------------------------------------
// Obstructions and solving

/// x^2 + D = C y^n (y a square when constrained) has no solution mod m.
bool obstructed_mod(const HyperellipticInstance& inst, std::uint64_t m);

/// First modulus in `moduli` with no residue solution.
std::optional<std::uint64_t> local_obstruction(const HyperellipticInstance& inst,
                                               const std::vector<std::uint64_t>& moduli);

/// 3, 4, 5, 7, 8, 9, 11, 13, 16, 25.
const std::vector<std::uint64_t>& basic_moduli();
/// basic_moduli() followed by the other primes below 1000 and a few prime powers.
const std::vector<std::uint64_t>& extended_moduli();

enum class Completeness {
    Obstructed,               // no solutions: local obstruction
    Complete,                 // reduction with every Thue problem settled exactly
    CompleteWithinThueBound,  // reduction, Thue problems searched to a bound
    BoundedOnly,              // direct search only
};

std::string completeness_name(Completeness c);

struct SolveBounds {
    BigInt thue_bound = 10000;    // |B| (or |V|) searched in each Thue problem
    BigInt x_bound = 1000000;     // direct search covers every |x| <= x_bound
    BigInt curve_bound = 1000;    // direct search also covers |X| <= curve_bound in curve coordinates
    bool use_reduction = true;
    bool use_direct_search = true;
    bool extended_moduli = true;
    unsigned threads = 0;
};

struct CurvePoint {
    BigInt X, Y;
    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct Solution {
    BigInt x, y;
    friend bool operator==(const Solution&, const Solution&) = default;
};

enum class ThueStatus { Obstructed, Exhausted, Bounded };

struct ThueOutcome {
    std::string description;
    ThueStatus status = ThueStatus::Bounded;
    std::optional<std::uint64_t> obstruction_modulus;
    std::size_t solutions = 0;
};

struct SolutionReport {
    HyperellipticInstance instance;
    Completeness completeness = Completeness::BoundedOnly;
    std::optional<std::uint64_t> obstruction_modulus;
    std::vector<Solution> solutions;       // sorted by (x, y)
    std::vector<CurvePoint> curve_points;  // curve coordinates (X, Y); empty for raw instances
    std::size_t thue_problems_generated = 0;
    std::vector<ThueOutcome> thue_outcomes;
    std::string route;  // "imaginary", "rational", "real", "none"
    std::vector<std::string> notes;
    SolveBounds bounds;
    BigInt direct_y_bound;  // |y| range the direct search covered
};

SolutionReport solve(const HyperellipticInstance& inst, const SolveBounds& bounds = {});

std::string report_json(const SolutionReport& r);

/// Every solution with |y| <= y_bound (|X| <= y_bound when y = X^2), by exact square tests.
std::vector<Solution> direct_search(const HyperellipticInstance& inst, const BigInt& y_bound);

}  // namespace oddtau::quadfield
