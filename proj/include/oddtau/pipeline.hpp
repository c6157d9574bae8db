#pragma once

// Claims about tau_{2k}(n) = value. A claim runs:
//   factor |value|; check that n must be a prime power (factor pairs against the ledger);
//   restrict the admissible d; for each d decide whether tau(p^{d-1}) = value can happen
//   (C-curve for d = 3, H-curve for d = 5, Thue equations beyond), keeping only points of
//   Hecke shape whose tau(p) actually matches.

#include "oddtau/bigint.hpp"
#include "oddtau/dvalues.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oddtau::pipeline {

enum class ClaimStatus { Inadmissible, Constrained, SolutionsFound, Unresolved };
enum class StepKind { DSet, FactorPair, LocalObstruction, ThueBounded, ContfracCertified, E8Exclusion, Hyperelliptic };
enum class StepCompleteness { Certified, WithinBounds };

std::string status_name(ClaimStatus s);
std::string step_kind_name(StepKind k);
std::string completeness_name(StepCompleteness c);
ClaimStatus parse_status(const std::string& s);
StepKind parse_step_kind(const std::string& s);
StepCompleteness parse_completeness(const std::string& s);

struct EvidenceStep {
    StepKind kind = StepKind::DSet;
    std::string detail;
    StepCompleteness completeness = StepCompleteness::Certified;
    std::optional<std::string> grh_note;
    std::optional<std::uint64_t> d;  // the branch this step covers, if any
    friend bool operator==(const EvidenceStep&, const EvidenceStep&) = default;
};

enum class BranchOutcome {
    Excluded,              // certified: no n = p^{d-1}
    ExcludedWithinBounds,  // nothing found, search bounded
    Open,                  // no method applies
    Solution,              // some tau(p^{d-1}) = value
};

std::string branch_outcome_name(BranchOutcome b);
BranchOutcome parse_branch_outcome(const std::string& s);

struct Branch {
    std::uint64_t d = 0;
    BranchOutcome outcome = BranchOutcome::Open;
    std::string method;
    friend bool operator==(const Branch&, const Branch&) = default;
};

/// tau_{weight}(p^exponent) = value.
struct FoundSolution {
    BigInt p;
    unsigned exponent = 0;
    friend bool operator==(const FoundSolution&, const FoundSolution&) = default;
};

struct Claim {
    int weight = 12;
    BigInt value;
    ClaimStatus status = ClaimStatus::Unresolved;
    bool bound_limited = false;          // some exclusion is only within search bounds
    std::vector<unsigned> exponents;     // constrained: the d - 1 not excluded with certainty
    std::vector<FoundSolution> solutions;
    std::vector<std::uint64_t> dset;
    std::vector<Branch> branches;
    std::vector<EvidenceStep> evidence;
    /// The weakest completeness over the steps.
    StepCompleteness completeness() const;
    bool uses_grh() const;
    friend bool operator==(const Claim&, const Claim&) = default;
};

struct Config {
    BigInt thue_bound = 10000;       // |X| in F_{d-1}(X, Y) = +-value, and |B| in generated Thue problems
    BigInt hyper_bound = 1000000;    // |x| covered by direct search on x^2 + D = C y^n
    BigInt curve_bound = 1000;       // |X| covered by direct search in curve coordinates
    bool extended_moduli = true;
    unsigned certify_max_ell = 1000; // larger primes use the e^8 exclusion alone
    unsigned threads = 0;
    dvalues::KnownLedger ledger = dvalues::KnownLedger::bundled();
};

/// Throws std::invalid_argument when the weight is unsupported, value is even or |value| < 3.
Claim rule_out(int weight, const BigInt& value, const Config& config = {});

std::string claim_json(const Claim& c);
Claim claim_from_json(std::string_view text);

// ---------------------------------------------------------------------------
// Theorems

enum class Verdict { Confirmed, ConsistentBoundLimited, NotReproduced, Contradicted };
std::string verdict_name(Verdict v);
Verdict parse_verdict(const std::string& s);

struct TheoremPart {
    std::string part;
    bool grh = false;
    int weight = 12;
    ClaimStatus expected = ClaimStatus::Inadmissible;
    std::vector<unsigned> exponents;
    std::vector<BigInt> values;
};

/// Parts of theorem `id` from the bundled data, value sets expanded. Throws for unknown ids.
std::vector<TheoremPart> theorem_parts(int id);

struct ValueOutcome {
    std::string part;
    bool grh = false;
    int weight = 12;
    BigInt value;
    ClaimStatus expected = ClaimStatus::Inadmissible;
    std::vector<unsigned> expected_exponents;
    Verdict verdict = Verdict::NotReproduced;
    std::string detail;
    Claim claim;
    friend bool operator==(const ValueOutcome&, const ValueOutcome&) = default;
};

struct TheoremReport {
    int id = 0;
    std::vector<ValueOutcome> rows;  // sorted by (weight, part, value)
    std::size_t count(Verdict v) const;
    friend bool operator==(const TheoremReport&, const TheoremReport&) = default;
};

/// Values with |value| = 1 are outside rule_out and are reported as not reproduced.
/// Unconditional parts run before GRH parts; within a run primes precede composites and
/// smaller |value| comes first, and every inadmissible result is added to the ledger.
TheoremReport reproduce_theorem(int id, const Config& config = {});

std::string theorem_json(const TheoremReport& r);
TheoremReport theorem_from_json(std::string_view text);

// ---------------------------------------------------------------------------
// Direct cross-check

struct ScanResult {
    int weight = 12;
    BigInt value;
    std::size_t upto = 0;
    std::vector<std::size_t> hits;  // n > 1 with tau(n) = value
};

ScanResult verify(int weight, const BigInt& value, std::size_t upto);

/// False when the claim says inadmissible but the scan found the value.
bool consistent(const Claim& c, const ScanResult& s);

}  // namespace oddtau::pipeline
