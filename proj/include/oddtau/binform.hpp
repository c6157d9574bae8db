#pragma once

// Homogeneous integer binary forms G(U, V) = sum_j c_j U^{n-j} V^j and a bounded
// solver for G(U, V) in T. The outer variable V runs over |V| <= L; for each V the
// admissible U lie in short windows around the real parts of the roots of G(t, 1)
// times V. Window widths come from two inequalities valid at any integer point:
//   min_j |U - t_j V| <= (|m| / |c_0|)^{1/n}
// and, for the root t_k closest to U / V,
//   |U - t_k V| <= |m| / (|c_0| prod_{j != k} (|t_k - t_j| |V| / 2)).
// Every candidate is decided by exact evaluation.

#include "oddtau/bigint.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace oddtau::thue {

struct BinaryForm {
    std::vector<BigInt> coeffs;  // coeffs[j] multiplies U^{n-j} V^j

    unsigned degree() const { return coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size() - 1); }
    BigInt eval(const BigInt& U, const BigInt& V) const;
    /// G(V, U) with the roles of the variables exchanged.
    BinaryForm swapped() const;
    bool is_zero() const;
};

using Complex = std::complex<long double>;

/// A disk that is certified (up to long double rounding, which the radius absorbs) to
/// contain a root of G(t, 1). The union of the disks contains every root.
struct RootEnclosure {
    Complex center;
    long double radius = 0;
};

/// Aberth iteration followed by Weierstrass inclusion radii. Requires coeffs[0] != 0 and degree >= 1.
std::vector<RootEnclosure> form_roots(const BinaryForm& g);

struct FormPoint {
    BigInt U, V, value;
    friend bool operator==(const FormPoint&, const FormPoint&) = default;
};

struct FormSolveResult {
    std::vector<FormPoint> points;  // sorted by (V, U)
    BigInt v_bound;                 // |V| range that was searched when not complete
    bool complete = false;          // every integer solution is listed, independent of v_bound
    bool infinite_family = false;   // G - m vanishes along a whole line; points lists none of it
    std::uint64_t candidates = 0;   // exact evaluations performed
};

struct FormSolveOptions {
    BigInt v_bound = 10000;
    unsigned threads = 0;  // 0 = hardware concurrency
    /// Precomputed enclosures of the roots of G(t, 1); computed when absent.
    std::optional<std::vector<RootEnclosure>> roots;
};

/// All integer (U, V) with G(U, V) in targets and |V| <= v_bound. When G has a zero
/// leading or trailing coefficient, one variable divides every target and the search is
/// exhaustive (complete = true).
FormSolveResult solve_form(const BinaryForm& g, const std::vector<BigInt>& targets, const FormSolveOptions& opts = {});

/// Primes below 300 and the prime powers 4, 8, 16, 32, 9, 27, 81, 25, 125, 49.
const std::vector<std::uint64_t>& default_form_moduli();

/// First modulus in `moduli` at which G(U, V) = m has no solution, if any.
std::optional<std::uint64_t> form_local_obstruction(const BinaryForm& g, const BigInt& m,
                                                    const std::vector<std::uint64_t>& moduli);

/// Whether G(U, V) = m is solvable modulo `modulus` (exhaustive for prime powers, via
/// homogeneity for primes).
bool form_solvable_mod(const BinaryForm& g, const BigInt& m, std::uint64_t modulus);

}  // namespace oddtau::thue
