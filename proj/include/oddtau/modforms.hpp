#pragma once

// Truncated q-expansions of the level-1 cusp eigenforms of weights
// 12, 16, 18, 20, 22 and 26, plus the classical congruences they satisfy.

#include "oddtau/bigint.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oddtau::modforms {

inline constexpr std::array<int, 6> kWeights{12, 16, 18, 20, 22, 26};

bool is_supported_weight(int weight);

/// Throws std::invalid_argument for weights outside kWeights.
void require_supported_weight(int weight);

/// Power series coefficients; index i holds the coefficient of q^i.
using Series = std::vector<BigInt>;

/// First `len` coefficients of a*b.
Series truncated_product(const Series& a, const Series& b, std::size_t len);
Series truncated_square(const Series& a, std::size_t len);

/// prod_{n>=1} (1 - q^n) to `len` coefficients, from the pentagonal number theorem.
Series euler_product(std::size_t len);

/// 1 + 240 sum sigma_3(n) q^n and 1 - 504 sum sigma_5(n) q^n.
Series eisenstein_e4(std::size_t len);
Series eisenstein_e6(std::size_t len);

struct CoefficientSeries {
    int weight = 12;
    std::size_t precision = 0;
    std::vector<BigInt> coeffs;  // coeffs[n] = tau_{weight}(n) for 1 <= n <= precision; coeffs[0] = 0

    /// Bounds-checked access, 1 <= n <= precision.
    const BigInt& at(std::size_t n) const;
    const BigInt& operator[](std::size_t n) const { return coeffs[n]; }
};

/// tau(1..N) from q * prod (1 - q^n)^24. Throws std::invalid_argument for N == 0.
CoefficientSeries delta_series(std::size_t N);

/// tau_{2k}(1..N) as Delta times the matching Eisenstein product.
CoefficientSeries eigenform_series(int weight, std::size_t N);

struct ExceptionalPrime {
    int weight;
    std::uint64_t ell;
};

/// The Bernoulli-numerator primes attached to each weight (691 for weight 12, ...).
const std::vector<ExceptionalPrime>& exceptional_primes();
std::vector<std::uint64_t> exceptional_primes_for(int weight);

struct CongruenceCheck {
    std::string name;
    std::uint64_t modulus = 0;
    std::size_t checked = 0;
    std::vector<std::size_t> failures;

    bool passed() const { return failures.empty(); }
};

struct CongruenceReport {
    int weight = 12;
    std::size_t precision = 0;
    std::vector<CongruenceCheck> checks;

    bool all_passed() const;
};

/// Weight 12: the four Ramanujan congruences mod 9, 5, 7, 691 for every n <= N.
/// Other weights: tau_{2k}(n) == sigma_{2k-1}(n) mod ell for every exceptional ell
/// and every n <= N coprime to ell.
CongruenceReport verify_congruences(const CoefficientSeries& series);

/// sigma_v(n) mod m for 1 <= n <= N (index 0 unused).
std::vector<std::uint64_t> sigma_mod_table(unsigned v, std::size_t N, std::uint64_t m);

/// Every n <= precision with tau(n) == c.
std::vector<std::size_t> scan_for_value(const CoefficientSeries& series, const BigInt& c);

// On-disk cache: header "TAUCACHE v1 <weight> <N>", then one decimal integer per line.
std::string serialize_cache(const CoefficientSeries& series);
CoefficientSeries parse_cache(const std::string& text);
std::filesystem::path cache_path(const std::filesystem::path& dir, int weight, std::size_t N);

/// Write-temp-then-rename.
void write_cache(const std::filesystem::path& file, const CoefficientSeries& series);

/// Returns nullopt when the file is missing or its header does not match.
std::optional<CoefficientSeries> read_cache(const std::filesystem::path& file, int weight, std::size_t N);

/// Loads from `dir` when present, otherwise computes and stores.
CoefficientSeries cached_eigenform_series(const std::filesystem::path& dir, int weight, std::size_t N);

}  // namespace oddtau::modforms
