#pragma once

// The Thue forms attached to tau_{2k}(p^{2m}): with X = p^{2k-1} and Y = a_f(p)^2,
//   a_f(p^{2m}) = F_{2m}(X, Y),   prod_{k=1}^{m} (Y - 4X cos^2(pi k / (2m+1))),
// and for an odd prime ell the shifted form Fhat_ell(X, Y) = F_{ell-1}(X, Y + 2X),
//   prod_{k=1}^{(ell-1)/2} (Y - 2X cos(2 pi k / ell)).
//
// Integer-only construction. Writing s = sqrt(Y), the generating function
// 1 / (1 - sT + XT^2) has coefficients F_j with F_j = s F_{j-1} - X F_{j-2}. Put
// t_j = F_j for even j and t_j = F_j / s for odd j; then
//   t_0 = t_1 = 1,  t_{2j} = Y t_{2j-1} - X t_{2j-2},  t_{2j+1} = t_{2j} - X t_{2j-1},
// and every t_j is a homogeneous integer form of degree floor(j / 2).

#include "oddtau/binform.hpp"
#include "oddtau/bigint.hpp"

#include <vector>

namespace oddtau::thue {

enum class ThueKind { Even, Fhat };

struct ThuePolynomial {
    ThueKind kind = ThueKind::Even;
    unsigned index = 2;   // 2m for Even, ell for Fhat
    unsigned degree = 1;  // m, or (ell - 1) / 2
    std::vector<BigInt> coeffs;  // coeffs[j] = coefficient of X^j Y^{degree - j}

    /// Coefficient of X^i Y^j; zero unless i + j == degree.
    BigInt coefficient(unsigned i, unsigned j) const;
    BigInt eval(const BigInt& X, const BigInt& Y) const;
    /// Y / X at each root: 4cos^2(pi k / (2m+1)) or 2cos(2 pi k / ell), ascending.
    std::vector<long double> root_slopes() const;
    /// The same polynomial as a form in (U, V) = (Y, X).
    BinaryForm as_form() const;
};

/// F_{2m}. Memoized; throws std::invalid_argument for odd or nonpositive input.
const ThuePolynomial& thue_poly(unsigned two_m);

/// Fhat_ell. Memoized; throws std::invalid_argument unless ell is an odd prime.
const ThuePolynomial& fhat_poly(unsigned ell);

/// The t_j sequence as homogeneous forms, coefficient j = X^j (index 0 = highest Y power).
std::vector<std::vector<BigInt>> t_sequence(unsigned j_max);

/// F_{2m}(X, Y) by running the recurrence on numbers; no polynomial is built.
BigInt eval_even(unsigned two_m, const BigInt& X, const BigInt& Y);

/// Fhat_ell(X, Y) = F_{ell-1}(X, Y + 2X).
BigInt eval_fhat(unsigned ell, const BigInt& X, const BigInt& Y);

struct ThueSolution {
    BigInt X, Y, value;
    friend bool operator==(const ThueSolution&, const ThueSolution&) = default;
};

struct BoundedResult {
    std::vector<ThueSolution> solutions;  // sorted by (X, Y)
    BigInt x_bound;
    bool complete = false;  // never set for these families; solutions beyond x_bound are not excluded
    std::uint64_t candidates = 0;
};

/// Every (X, Y) with |X| <= x_bound and poly(X, Y) in targets.
BoundedResult bounded_solve(const ThuePolynomial& poly, const std::vector<BigInt>& targets, const BigInt& x_bound,
                            unsigned threads = 0);

struct HeckeCandidate {
    BigInt p;
    BigInt a;  // |a_f(p)|
    BigInt X, Y;
};

/// Keeps X = p^{2k-1} with p prime and Y = a^2 <= 4 p^{2k-1}.
std::vector<HeckeCandidate> filter_hecke_shape(const std::vector<ThueSolution>& solutions, int weight);

/// p prime with p^w == X, if any (X > 0).
std::optional<BigInt> prime_with_power(const BigInt& X, unsigned w);

}  // namespace oddtau::thue
