#pragma once

// Admissible exponent sets. If ell | tau_{2k}(p^{d-1}) first at d-1, then d lies in
// D_{2k,ell}: by default the odd primes dividing ell(ell^2-1), or the sharper
// congruence-derived sets of the bundled table.

#include "oddtau/arith.hpp"
#include "oddtau/bigint.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oddtau::dvalues {

enum class DSetSource { DefaultFormula, TableOverride };

struct DSet {
    int weight = 12;
    std::uint64_t prime = 0;
    std::vector<std::uint64_t> values;  // sorted odd primes
    DSetSource source = DSetSource::DefaultFormula;
};

struct Table1Row {
    std::uint64_t ell = 0;
    std::vector<int> weights;
    std::vector<std::uint64_t> dvalues;
};

/// Parsed from the bundled table; 16 rows.
const std::vector<Table1Row>& table1();

/// Odd primes dividing ell(ell^2 - 1).
std::vector<std::uint64_t> default_dvalues(std::uint64_t ell);

/// Throws std::invalid_argument for unsupported weights or ell not an odd prime.
DSet dset(int weight, std::uint64_t ell);

struct CompositeTarget {
    int weight = 12;
    BigInt value;  // signed, odd, |value| >= 3
    Factorization factorization;

    /// Throws std::invalid_argument when |value| < 3, value is even, or the weight is unsupported.
    static CompositeTarget make(int weight, const BigInt& value);
};

/// Largest of the per-prime minima, then every d >= M from any D_{2k,ell_i}.
std::vector<std::uint64_t> restricted_dset(const CompositeTarget& target);

enum class Evidence { Unconditional, Grh, Certified, Bounded };

std::string evidence_name(Evidence e);
Evidence parse_evidence(const std::string& s);

/// Unconditional and this-run certified results are full proofs; GRH and bounded are not.
int evidence_rank(Evidence e);

struct KnownEntry {
    int weight = 12;
    BigInt value;
    Evidence evidence = Evidence::Unconditional;
    std::string source;
};

/// Signed values v for which tau_{2k}(n) = v is already excluded for all n > 1.
class KnownLedger {
public:
    /// Keeps the stronger entry when (weight, value) is already present.
    void add(KnownEntry entry);
    const KnownEntry* find(int weight, const BigInt& value) const;
    std::vector<KnownEntry> entries() const;
    std::size_t size() const { return entries_.size(); }

    /// The prior results shipped in data/known_values.json.
    static KnownLedger bundled();
    static KnownLedger from_json(std::string_view text);

private:
    std::map<std::pair<int, BigInt>, KnownEntry> entries_;
};

struct SupportResult {
    bool confirmed = false;
    std::optional<std::pair<BigInt, BigInt>> blocking_pair;
    std::vector<KnownEntry> used;  // ledger entries the argument leaned on, deduplicated
};

/// For every c = alpha * beta with |alpha|, |beta| > 1, one of alpha, beta must be in the ledger.
SupportResult prime_power_support(const CompositeTarget& target, const KnownLedger& ledger);

}  // namespace oddtau::dvalues
