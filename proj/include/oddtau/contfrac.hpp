#pragma once

// Certification of F_{ell-1}(X, Y) = +-ell. Three regimes in the shifted coordinates
// of Fhat_ell:
//   |X| > e^8          no solutions (a cited theorem, not recomputed);
//   3 <= |X| < e^8     Y / X must be a convergent of some 2cos(2 pi k / ell);
//   |X| <= 3           exhaustive search.
// e^8 = 2980.957..., so every boundary is the integer 2981.

#include "oddtau/bigint.hpp"
#include "oddtau/thue.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddtau::contfrac {

inline constexpr unsigned kE8Ceil = 2981;

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The true value lies in [value - error_bound, value + error_bound].
struct CertifiedReal {
    mpq_class value;
    mpq_class error_bound;
    unsigned precision_bits = 0;

    mpq_class lower() const { return value - error_bound; }
    mpq_class upper() const { return value + error_bound; }
    long double approx() const;
};

/// 2cos(2 pi k / ell) with |error| <= 2^-(bits + 16). ell = 3 is exact.
/// Throws std::invalid_argument for bits < 64, ell not an odd prime or k outside [1, (ell-1)/2].
CertifiedReal cosine_value(unsigned ell, unsigned k, unsigned bits);

struct Convergent {
    unsigned index = 0;
    BigInt p, q;
    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Every convergent p/q of x with q <= q_max. Each partial quotient is accepted only when
/// both ends of the certified interval agree on it; otherwise PrecisionExhausted.
std::vector<Convergent> convergents_below(const CertifiedReal& x, const BigInt& q_max);

/// convergents_below at 256 bits, doubling on PrecisionExhausted up to 4096.
std::vector<Convergent> convergents_with_retry(unsigned ell, unsigned k, const BigInt& q_max,
                                               unsigned* bits_used = nullptr);

struct CertificationReport {
    unsigned ell = 0;
    std::string large_regime = "e8-exclusion";
    std::uint64_t midsize_checked_pairs = 0;
    std::vector<thue::ThueSolution> midsize_hits;  // F-coordinates
    std::uint64_t small_checked_pairs = 0;
    std::vector<thue::ThueSolution> small_hits;    // F-coordinates
    std::vector<thue::ThueSolution> solutions;     // union, F-coordinates, sorted
    unsigned max_bits = 0;
    double runtime_ms = 0;
};

/// Complete list of integer solutions of F_{ell-1}(X, Y) = +-ell, given the large-|X| theorem.
/// Requires ell an odd prime >= 31.
CertificationReport certify_prime_thue(unsigned ell, unsigned threads = 0);

std::string report_json(const CertificationReport& r);

struct PrimePowerVerdict {
    unsigned ell = 0;
    int weight = 12;
    bool no_prime = false;                     // no prime p with p^{2k-1} < e^8 solves it
    std::vector<BigInt> primes_checked;        // p with p^{2k-1} < 2981
    std::vector<thue::HeckeCandidate> survivors;
    std::string reason;
};

/// Solutions with X = p^{2k-1} must satisfy p^{2k-1} < e^8; the few primes that qualify are
/// checked directly against F_{ell-1}(p^{2k-1}, a^2) = +-ell.
PrimePowerVerdict prime_power_exclusion(unsigned ell, int weight);

}  // namespace oddtau::contfrac
