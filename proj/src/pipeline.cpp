#include "oddtau/pipeline.hpp"

#include "oddtau/arith.hpp"
#include "oddtau/contfrac.hpp"
#include "oddtau/embedded_data.hpp"
#include "oddtau/lucas.hpp"
#include "oddtau/modforms.hpp"
#include "oddtau/quadfield.hpp"
#include "oddtau/thue.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oddtau::pipeline {

using detail::big_from_json;
using detail::big_to_json;
using nlohmann::json;

namespace {

template <class E, std::size_t N>
E parse_enum(const std::string& s, const std::array<std::pair<E, const char*>, N>& table, const char* what) {
    for (const auto& [e, name] : table) {
        if (s == name) return e;
    }
    throw std::invalid_argument(std::string("unknown ") + what + " '" + s + "'");
}

template <class E, std::size_t N>
std::string enum_name(E e, const std::array<std::pair<E, const char*>, N>& table) {
    for (const auto& [v, name] : table) {
        if (v == e) return name;
    }
    return "?";
}

constexpr std::array<std::pair<ClaimStatus, const char*>, 4> kStatus{{{ClaimStatus::Inadmissible, "inadmissible"},
                                                                      {ClaimStatus::Constrained, "constrained"},
                                                                      {ClaimStatus::SolutionsFound, "solutions-found"},
                                                                      {ClaimStatus::Unresolved, "unresolved"}}};
constexpr std::array<std::pair<StepKind, const char*>, 7> kKinds{{{StepKind::DSet, "dset"},
                                                                   {StepKind::FactorPair, "factor-pair"},
                                                                   {StepKind::LocalObstruction, "local-obstruction"},
                                                                   {StepKind::ThueBounded, "thue-bounded"},
                                                                   {StepKind::ContfracCertified, "contfrac-certified"},
                                                                   {StepKind::E8Exclusion, "e8-exclusion"},
                                                                   {StepKind::Hyperelliptic, "hyperelliptic"}}};
constexpr std::array<std::pair<StepCompleteness, const char*>, 2> kCompleteness{
    {{StepCompleteness::Certified, "certified"}, {StepCompleteness::WithinBounds, "within-bounds"}}};
constexpr std::array<std::pair<BranchOutcome, const char*>, 4> kBranch{
    {{BranchOutcome::Excluded, "excluded"},
     {BranchOutcome::ExcludedWithinBounds, "excluded-within-bounds"},
     {BranchOutcome::Open, "open"},
     {BranchOutcome::Solution, "solution"}}};
constexpr std::array<std::pair<Verdict, const char*>, 4> kVerdict{
    {{Verdict::Confirmed, "confirmed"},
     {Verdict::ConsistentBoundLimited, "consistent-but-bound-limited"},
     {Verdict::NotReproduced, "not-reproduced"},
     {Verdict::Contradicted, "contradicted"}}};

// Coefficient series shared by the shape checks and verify(), grown on demand.
constexpr std::size_t kTauLimit = 10000;

std::shared_ptr<const modforms::CoefficientSeries> cached_series(int weight, std::size_t n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const modforms::CoefficientSeries>> series;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = series[weight];
    if (!slot || slot->precision < n) {
        slot = std::make_shared<const modforms::CoefficientSeries>(
            modforms::eigenform_series(weight, std::max<std::size_t>(n, 2000)));
    }
    return slot;
}

std::optional<BigInt> tau_at_prime(int weight, const BigInt& p) {
    if (p < 2 || p > kTauLimit) return std::nullopt;
    return cached_series(weight, p.get_ui())->at(p.get_ui());
}

struct ShapeCheck {
    std::vector<FoundSolution> solutions;
    std::vector<BigInt> unverified;  // primes too large to evaluate tau(p)
    std::vector<std::string> rejected;
    std::set<BigInt> checked;
};

// Is tau(p^{d-1}) = value for this candidate prime?
void check_prime(int weight, const BigInt& value, std::uint64_t d, const BigInt& p, ShapeCheck& out) {
    if (!out.checked.insert(p).second) return;
    const auto a = tau_at_prime(weight, p);
    if (!a) {
        out.unverified.push_back(p);
        return;
    }
    const auto ctx = lucas::LucasContext::make(p, weight, *a);
    const BigInt t = lucas::lucas_term(ctx, static_cast<unsigned>(d - 1));
    if (t == value) {
        out.solutions.push_back({p, static_cast<unsigned>(d - 1)});
    } else {
        out.rejected.push_back("p = " + to_string(p) + " has tau(p^" + std::to_string(d - 1) + ") = " + to_string(t));
    }
}

std::string join_points(const std::vector<quadfield::CurvePoint>& pts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        os << (i ? ", " : "") << "(" << to_string(pts[i].X) << ", " << to_string(pts[i].Y) << ")";
    }
    return os.str();
}

std::string join_thue(const std::vector<thue::ThueSolution>& s) {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << (i ? ", " : "") << "(" << to_string(s[i].X) << ", " << to_string(s[i].Y) << ")";
    }
    return os.str();
}

BranchOutcome settle(const ShapeCheck& sc, bool certified, Claim& claim) {
    claim.solutions.insert(claim.solutions.end(), sc.solutions.begin(), sc.solutions.end());
    if (!sc.solutions.empty()) return BranchOutcome::Solution;
    if (!sc.unverified.empty()) return BranchOutcome::Open;
    return certified ? BranchOutcome::Excluded : BranchOutcome::ExcludedWithinBounds;
}

std::string shape_summary(const ShapeCheck& sc) {
    std::ostringstream os;
    if (!sc.solutions.empty()) {
        os << "; solutions:";
        for (const auto& s : sc.solutions) os << " n = " << to_string(s.p) << "^" << s.exponent;
    }
    if (!sc.rejected.empty()) {
        os << "; Hecke-shaped but rejected:";
        for (const auto& r : sc.rejected) os << " [" << r << "]";
    }
    if (!sc.unverified.empty()) {
        os << "; unverified candidates p =";
        for (const auto& p : sc.unverified) os << " " << to_string(p);
    }
    return os.str();
}

// d = 3 and d = 5.
Branch curve_branch(int weight, const BigInt& value, std::uint64_t d, const Config& cfg, Claim& claim) {
    using namespace quadfield;
    const bool h = d == 5;
    const auto inst = h ? HyperellipticInstance::h_curve(weight, value) : HyperellipticInstance::c_curve(weight, value);
    SolveBounds b;
    b.thue_bound = cfg.thue_bound;
    b.x_bound = cfg.hyper_bound;
    b.curve_bound = cfg.curve_bound;
    b.extended_moduli = cfg.extended_moduli;
    b.threads = cfg.threads;
    const SolutionReport rep = solve(inst, b);

    ShapeCheck sc;
    const unsigned w = static_cast<unsigned>(weight - 1);
    for (const auto& pt : rep.curve_points) {
        if (pt.X < 2 || !is_prime(pt.X)) continue;
        if (h) {
            const BigInt twice = pt.Y + 3 * pow(pt.X, w);
            if (twice < 0 || twice % 2 != 0) continue;
            if (!integer_root(twice / 2, 2)) continue;
        }
        check_prime(weight, value, d, pt.X, sc);
    }

    const bool certified =
        rep.completeness == Completeness::Obstructed || rep.completeness == Completeness::Complete;
    EvidenceStep st;
    st.d = d;
    st.completeness = certified ? StepCompleteness::Certified : StepCompleteness::WithinBounds;
    std::ostringstream os;
    os << (h ? "H-curve " : "C-curve ") << inst.describe() << ": ";
    if (rep.completeness == Completeness::Obstructed) {
        st.kind = StepKind::LocalObstruction;
        os << "no solution modulo " << *rep.obstruction_modulus;
    } else {
        st.kind = StepKind::Hyperelliptic;
        os << completeness_name(rep.completeness) << " (" << rep.route << " route, " << rep.thue_problems_generated
           << " Thue problems, |B| <= " << to_string(cfg.thue_bound) << ", direct search |x| <= "
           << to_string(cfg.hyper_bound) << ", |X| <= " << to_string(rep.direct_y_bound) << ")";
        os << "; points: " << (rep.curve_points.empty() ? "none" : join_points(rep.curve_points));
    }
    os << shape_summary(sc);
    st.detail = os.str();
    claim.evidence.push_back(st);
    return Branch{d, settle(sc, certified, claim), h ? "H-curve" : "C-curve"};
}

Branch thue_branch(int weight, const BigInt& value, std::uint64_t d, const Config& cfg, Claim& claim) {
    const auto& poly = thue::thue_poly(static_cast<unsigned>(d - 1));
    EvidenceStep st;
    st.d = d;
    const auto obstruction = thue::form_local_obstruction(poly.as_form(), value, thue::default_form_moduli());
    std::ostringstream os;
    os << "F_" << d - 1 << "(X, Y) = " << to_string(value);
    if (obstruction) {
        st.kind = StepKind::LocalObstruction;
        st.completeness = StepCompleteness::Certified;
        os << ": no solution modulo " << *obstruction;
        st.detail = os.str();
        claim.evidence.push_back(st);
        return Branch{d, BranchOutcome::Excluded, "thue"};
    }
    const auto res = thue::bounded_solve(poly, {value}, cfg.thue_bound, cfg.threads);
    ShapeCheck sc;
    for (const auto& c : thue::filter_hecke_shape(res.solutions, weight)) check_prime(weight, value, d, c.p, sc);
    st.kind = StepKind::ThueBounded;
    st.completeness = StepCompleteness::WithinBounds;
    os << ", |X| <= " << to_string(cfg.thue_bound) << ": "
       << (res.solutions.empty() ? "no solutions" : "solutions " + join_thue(res.solutions));
    os << shape_summary(sc);
    st.detail = os.str();
    claim.evidence.push_back(st);
    return Branch{d, settle(sc, false, claim), "thue"};
}

Branch certified_branch(int weight, const BigInt& value, std::uint64_t ell, const Config& cfg, Claim& claim) {
    EvidenceStep st;
    st.d = ell;
    st.completeness = StepCompleteness::Certified;
    ShapeCheck sc;
    std::ostringstream os;
    if (ell <= cfg.certify_max_ell) {
        const auto rep = contfrac::certify_prime_thue(static_cast<unsigned>(ell), cfg.threads);
        std::vector<thue::ThueSolution> matching;
        for (const auto& s : rep.solutions) {
            if (s.value == value) matching.push_back(s);
        }
        for (const auto& c : thue::filter_hecke_shape(matching, weight)) check_prime(weight, value, ell, c.p, sc);
        st.kind = StepKind::ContfracCertified;
        os << "F_" << ell - 1 << "(X, Y) = +-" << ell << ": |X| > e^8 excluded, " << rep.midsize_checked_pairs
           << " convergent pairs and " << rep.small_checked_pairs << " small pairs checked; all solutions: "
           << (rep.solutions.empty() ? "none" : join_thue(rep.solutions));
    } else {
        const auto v = contfrac::prime_power_exclusion(static_cast<unsigned>(ell), weight);
        for (const auto& c : v.survivors) check_prime(weight, value, ell, c.p, sc);
        st.kind = StepKind::E8Exclusion;
        os << "F_" << ell - 1 << "(p^" << weight - 1 << ", a^2) = +-" << ell << ": " << v.reason;
    }
    os << shape_summary(sc);
    st.detail = os.str();
    claim.evidence.push_back(st);
    return Branch{ell, settle(sc, true, claim), st.kind == StepKind::ContfracCertified ? "contfrac" : "e8-exclusion"};
}

std::string join_u64(const std::vector<std::uint64_t>& v) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "}";
    return os.str();
}

}  // namespace

std::string status_name(ClaimStatus s) { return enum_name(s, kStatus); }
std::string step_kind_name(StepKind k) { return enum_name(k, kKinds); }
std::string completeness_name(StepCompleteness c) { return enum_name(c, kCompleteness); }
std::string branch_outcome_name(BranchOutcome b) { return enum_name(b, kBranch); }
std::string verdict_name(Verdict v) { return enum_name(v, kVerdict); }
ClaimStatus parse_status(const std::string& s) { return parse_enum(s, kStatus, "status"); }
StepKind parse_step_kind(const std::string& s) { return parse_enum(s, kKinds, "step kind"); }
StepCompleteness parse_completeness(const std::string& s) { return parse_enum(s, kCompleteness, "completeness"); }
BranchOutcome parse_branch_outcome(const std::string& s) { return parse_enum(s, kBranch, "branch outcome"); }
Verdict parse_verdict(const std::string& s) { return parse_enum(s, kVerdict, "verdict"); }

StepCompleteness Claim::completeness() const {
    for (const auto& e : evidence) {
        if (e.completeness == StepCompleteness::WithinBounds) return StepCompleteness::WithinBounds;
    }
    return StepCompleteness::Certified;
}

bool Claim::uses_grh() const {
    return std::any_of(evidence.begin(), evidence.end(), [](const EvidenceStep& e) { return e.grh_note.has_value(); });
}

Claim rule_out(int weight, const BigInt& value, const Config& cfg) {
    modforms::require_supported_weight(weight);
    const auto target = dvalues::CompositeTarget::make(weight, value);
    Claim claim;
    claim.weight = weight;
    claim.value = value;

    // n must be a prime power
    bool support_ok = true;
    {
        EvidenceStep st;
        st.kind = StepKind::FactorPair;
        if (target.factorization.is_prime()) {
            st.detail = "|value| is prime: no factor pair with both parts > 1, so n is a prime power";
        } else {
            const auto sup = dvalues::prime_power_support(target, cfg.ledger);
            if (sup.confirmed) {
                std::ostringstream os;
                os << "every value = a*b with |a|, |b| > 1 has an excluded factor; n is a prime power. Used:";
                std::vector<std::string> grh, bounded;
                for (const auto& e : sup.used) {
                    os << " " << to_string(e.value) << " (" << dvalues::evidence_name(e.evidence) << ")";
                    if (e.evidence == dvalues::Evidence::Grh) grh.push_back(to_string(e.value));
                    if (e.evidence == dvalues::Evidence::Bounded) bounded.push_back(to_string(e.value));
                }
                st.detail = os.str();
                if (!bounded.empty()) st.completeness = StepCompleteness::WithinBounds;
                if (!grh.empty()) {
                    std::string note = "relies on GRH-conditional prior results for";
                    for (const auto& g : grh) note += " " + g;
                    st.grh_note = note;
                }
            } else {
                support_ok = false;
                st.completeness = StepCompleteness::WithinBounds;
                st.detail = "n need not be a prime power: neither " + to_string(sup.blocking_pair->first) + " nor " +
                            to_string(sup.blocking_pair->second) + " is known to be excluded";
            }
        }
        claim.evidence.push_back(st);
    }

    // admissible d
    claim.dset = dvalues::restricted_dset(target);
    {
        EvidenceStep st;
        st.kind = StepKind::DSet;
        std::ostringstream os;
        os << "n = p^(d-1) with d in " << join_u64(claim.dset);
        if (!target.factorization.is_prime()) {
            os << " (per prime:";
            for (const auto& f : target.factorization.factors) {
                os << " " << to_string(f.prime) << " -> " << join_u64(dvalues::dset(weight, f.prime.get_ui()).values);
            }
            os << ")";
        }
        st.detail = os.str();
        claim.evidence.push_back(st);
    }

    const BigInt abs_value = abs(value);
    const bool prime_value = target.factorization.is_prime();
    for (const auto d : claim.dset) {
        if (d == 3 || d == 5) {
            claim.branches.push_back(curve_branch(weight, value, d, cfg, claim));
        } else if (prime_value && abs_value == d && d >= 31) {
            claim.branches.push_back(certified_branch(weight, value, d, cfg, claim));
        } else if (d - 1 <= 30) {
            claim.branches.push_back(thue_branch(weight, value, d, cfg, claim));
        } else {
            claim.branches.push_back(Branch{d, BranchOutcome::Open, "none: F_" + std::to_string(d - 1) +
                                                                       " is beyond the bounded Thue range"});
        }
    }

    bool any_open = false, any_bounded = false;
    for (const auto& b : claim.branches) {
        if (b.outcome == BranchOutcome::Solution) {
            continue;
        }
        if (b.outcome == BranchOutcome::Open) any_open = true;
        if (b.outcome == BranchOutcome::ExcludedWithinBounds) any_bounded = true;
        if (b.outcome == BranchOutcome::Open || b.outcome == BranchOutcome::ExcludedWithinBounds) {
            claim.exponents.push_back(static_cast<unsigned>(b.d - 1));
        }
    }
    if (!claim.solutions.empty()) {
        claim.status = ClaimStatus::SolutionsFound;
    } else if (!support_ok) {
        claim.status = ClaimStatus::Unresolved;
    } else if (any_open) {
        claim.status = ClaimStatus::Constrained;
        claim.bound_limited = any_bounded;
    } else {
        claim.status = ClaimStatus::Inadmissible;
        claim.bound_limited = any_bounded || claim.completeness() == StepCompleteness::WithinBounds;
    }
    if (claim.status != ClaimStatus::Constrained) claim.exponents.clear();
    return claim;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json step_to_json(const EvidenceStep& e) {
    json j{{"kind", step_kind_name(e.kind)},
           {"detail", e.detail},
           {"completeness", completeness_name(e.completeness)}};
    j["grh_note"] = e.grh_note ? json(*e.grh_note) : json();
    j["d"] = e.d ? json(*e.d) : json();
    return j;
}

EvidenceStep step_from_json(const json& j) {
    EvidenceStep e;
    e.kind = parse_step_kind(j.at("kind").get<std::string>());
    e.detail = j.at("detail").get<std::string>();
    e.completeness = parse_completeness(j.at("completeness").get<std::string>());
    if (j.contains("grh_note") && !j["grh_note"].is_null()) e.grh_note = j["grh_note"].get<std::string>();
    if (j.contains("d") && !j["d"].is_null()) e.d = j["d"].get<std::uint64_t>();
    return e;
}

json claim_to_json(const Claim& c) {
    json j{{"weight", c.weight},
           {"value", big_to_json(c.value)},
           {"status", status_name(c.status)},
           {"bound_limited", c.bound_limited},
           {"completeness", completeness_name(c.completeness())},
           {"exponents", c.exponents},
           {"dset", c.dset}};
    j["solutions"] = json::array();
    for (const auto& s : c.solutions) j["solutions"].push_back({{"p", big_to_json(s.p)}, {"exponent", s.exponent}});
    j["branches"] = json::array();
    for (const auto& b : c.branches) {
        j["branches"].push_back({{"d", b.d}, {"outcome", branch_outcome_name(b.outcome)}, {"method", b.method}});
    }
    j["evidence"] = json::array();
    for (const auto& e : c.evidence) j["evidence"].push_back(step_to_json(e));
    return j;
}

Claim claim_from(const json& j) {
    Claim c;
    c.weight = j.at("weight").get<int>();
    c.value = big_from_json(j.at("value"));
    c.status = parse_status(j.at("status").get<std::string>());
    c.bound_limited = j.at("bound_limited").get<bool>();
    c.exponents = j.at("exponents").get<std::vector<unsigned>>();
    c.dset = j.at("dset").get<std::vector<std::uint64_t>>();
    for (const auto& s : j.at("solutions")) c.solutions.push_back({big_from_json(s.at("p")), s.at("exponent").get<unsigned>()});
    for (const auto& b : j.at("branches")) {
        c.branches.push_back({b.at("d").get<std::uint64_t>(), parse_branch_outcome(b.at("outcome").get<std::string>()),
                              b.at("method").get<std::string>()});
    }
    for (const auto& e : j.at("evidence")) c.evidence.push_back(step_from_json(e));
    return c;
}

}  // namespace

std::string claim_json(const Claim& c) { return claim_to_json(c).dump(2); }

Claim claim_from_json(std::string_view text) { return claim_from(json::parse(text)); }

// ---------------------------------------------------------------------------
// Theorems

namespace {

std::vector<BigInt> expand_values(const json& v) {
    std::vector<BigInt> out;
    if (v.contains("list")) {
        for (const auto& x : v["list"]) out.push_back(big_from_json(x));
        return out;
    }
    const auto range = v.at("odd_range").get<std::vector<long>>();
    const std::string signs = v.at("signs").get<std::string>();
    const auto except = v.value("except", std::vector<long>{});
    for (long c = range[0]; c <= range[1]; c += 2) {
        if (std::find(except.begin(), except.end(), c) != except.end()) continue;
        if (signs.find('+') != std::string::npos) out.emplace_back(c);
        if (signs.find('-') != std::string::npos) out.emplace_back(-c);
    }
    for (const auto& x : v.value("extra", json::array())) out.push_back(big_from_json(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_prime_value(const BigInt& v) { return abs(v) > 1 && is_prime(abs(v)); }

// Open or bound-limited exponents of a claim.
std::set<unsigned> loose_exponents(const Claim& c) {
    std::set<unsigned> out;
    for (const auto& b : c.branches) {
        if (b.outcome == BranchOutcome::Open || b.outcome == BranchOutcome::ExcludedWithinBounds) {
            out.insert(static_cast<unsigned>(b.d - 1));
        }
    }
    return out;
}

void judge(ValueOutcome& row) {
    const Claim& c = row.claim;
    std::ostringstream os;
    if (c.status == ClaimStatus::SolutionsFound) {
        row.verdict = Verdict::Contradicted;
        os << "found";
        for (const auto& s : c.solutions) os << " n = " << to_string(s.p) << "^" << s.exponent;
        row.detail = os.str();
        return;
    }
    if (c.status == ClaimStatus::Unresolved) {
        row.verdict = Verdict::NotReproduced;
        row.detail = "n is not shown to be a prime power";
        return;
    }
    const std::set<unsigned> expected(row.expected_exponents.begin(), row.expected_exponents.end());
    std::vector<unsigned> open_extra, bounded_extra;
    for (const auto& b : c.branches) {
        const unsigned e = static_cast<unsigned>(b.d - 1);
        if (expected.count(e)) continue;
        if (b.outcome == BranchOutcome::Open) open_extra.push_back(e);
        if (b.outcome == BranchOutcome::ExcludedWithinBounds) bounded_extra.push_back(e);
    }
    const bool support_certified = std::all_of(c.evidence.begin(), c.evidence.end(), [](const EvidenceStep& e) {
        return e.kind != StepKind::FactorPair || e.completeness == StepCompleteness::Certified;
    });
    if (!open_extra.empty()) {
        row.verdict = Verdict::NotReproduced;
        os << "no method closes n = p^e for e in";
        for (auto e : open_extra) os << " " << e;
    } else if (!bounded_extra.empty() || !support_certified) {
        row.verdict = Verdict::ConsistentBoundLimited;
        if (!bounded_extra.empty()) {
            os << "nothing found within bounds for e in";
            for (auto e : bounded_extra) os << " " << e;
        }
        if (!support_certified) os << (bounded_extra.empty() ? "" : "; ") << "prime-power step rests on bounded results";
    } else {
        row.verdict = Verdict::Confirmed;
        const auto loose = loose_exponents(c);
        if (loose.size() < expected.size()) os << "stronger than stated: fewer open exponents";
    }
    if (row.verdict == Verdict::Confirmed && (row.grh || c.uses_grh())) {
        row.verdict = Verdict::ConsistentBoundLimited;
        os << (os.str().empty() ? "" : "; ")
           << (row.grh ? "the statement is GRH-conditional and is not certified here, though every step above is"
                       : "the prime-power step uses GRH-conditional prior results");
    }
    row.detail = os.str();
}

}  // namespace

std::vector<TheoremPart> theorem_parts(int id) {
    const json doc = json::parse(data::theorems_json());
    for (const auto& th : doc.at("theorems")) {
        if (th.at("id").get<int>() != id) continue;
        std::vector<TheoremPart> out;
        for (const auto& p : th.at("parts")) {
            TheoremPart part;
            part.part = p.at("part").get<std::string>();
            part.grh = p.at("condition").get<std::string>() == "grh";
            part.weight = p.at("weight").get<int>();
            part.expected = parse_status(p.at("outcome").get<std::string>());
            part.exponents = p.value("exponents", std::vector<unsigned>{});
            part.values = expand_values(p.at("values"));
            out.push_back(std::move(part));
        }
        return out;
    }
    throw std::invalid_argument("unknown theorem id " + std::to_string(id));
}

std::size_t TheoremReport::count(Verdict v) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [v](const ValueOutcome& r) { return r.verdict == v; }));
}

TheoremReport reproduce_theorem(int id, const Config& config) {
    TheoremReport rep;
    rep.id = id;
    Config cfg = config;
    const auto parts = theorem_parts(id);

    // GRH parts list only what they add, so every value appears once overall.
    std::vector<ValueOutcome> rows;
    for (const auto& p : parts) {
        for (const auto& v : p.values) {
            ValueOutcome r;
            r.part = p.part;
            r.grh = p.grh;
            r.weight = p.weight;
            r.value = v;
            r.expected = p.expected;
            r.expected_exponents = p.exponents;
            rows.push_back(std::move(r));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ValueOutcome& a, const ValueOutcome& b) {
        if (a.grh != b.grh) return !a.grh;
        const bool pa = is_prime_value(a.value), pb = is_prime_value(b.value);
        if (pa != pb) return pa;
        if (abs(a.value) != abs(b.value)) return abs(a.value) < abs(b.value);
        return a.value < b.value;
    });

    for (auto& r : rows) {
        if (abs(r.value) == 1) {
            r.verdict = Verdict::NotReproduced;
            r.detail = "|value| = 1 has no prime factor to drive the reduction";
            r.claim.weight = r.weight;
            r.claim.value = r.value;
            continue;
        }
        r.claim = rule_out(r.weight, r.value, cfg);
        judge(r);
        if (r.claim.status == ClaimStatus::Inadmissible) {
            dvalues::Evidence ev = dvalues::Evidence::Certified;
            if (r.claim.bound_limited || r.claim.completeness() == StepCompleteness::WithinBounds) {
                ev = dvalues::Evidence::Bounded;
            }
            if (r.claim.uses_grh()) ev = dvalues::Evidence::Grh;
            cfg.ledger.add({r.weight, r.value, ev, "this run"});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const ValueOutcome& a, const ValueOutcome& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.part != b.part) return a.part < b.part;
        if (a.grh != b.grh) return !a.grh;
        return a.value < b.value;
    });
    rep.rows = std::move(rows);
    return rep;
}

std::string theorem_json(const TheoremReport& r) {
    json j;
    j["id"] = r.id;
    j["summary"] = json::object();
    for (const auto& [v, name] : kVerdict) j["summary"][name] = r.count(v);
    j["rows"] = json::array();
    for (const auto& row : r.rows) {
        j["rows"].push_back({{"part", row.part},
                             {"condition", row.grh ? "grh" : "unconditional"},
                             {"weight", row.weight},
                             {"value", big_to_json(row.value)},
                             {"expected", status_name(row.expected)},
                             {"expected_exponents", row.expected_exponents},
                             {"verdict", verdict_name(row.verdict)},
                             {"detail", row.detail},
                             {"claim", claim_to_json(row.claim)}});
    }
    return j.dump(2);
}

TheoremReport theorem_from_json(std::string_view text) {
    const json j = json::parse(text);
    TheoremReport r;
    r.id = j.at("id").get<int>();
    for (const auto& row : j.at("rows")) {
        ValueOutcome v;
        v.part = row.at("part").get<std::string>();
        v.grh = row.at("condition").get<std::string>() == "grh";
        v.weight = row.at("weight").get<int>();
        v.value = big_from_json(row.at("value"));
        v.expected = parse_status(row.at("expected").get<std::string>());
        v.expected_exponents = row.at("expected_exponents").get<std::vector<unsigned>>();
        v.verdict = parse_verdict(row.at("verdict").get<std::string>());
        v.detail = row.at("detail").get<std::string>();
        v.claim = claim_from(row.at("claim"));
        r.rows.push_back(std::move(v));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Direct scan

ScanResult verify(int weight, const BigInt& value, std::size_t upto) {
    modforms::require_supported_weight(weight);
    ScanResult s;
    s.weight = weight;
    s.value = value;
    s.upto = upto;
    const auto series = cached_series(weight, upto);
    for (auto n : modforms::scan_for_value(*series, value)) {
        if (n > 1 && n <= upto) s.hits.push_back(n);
    }
    return s;
}

bool consistent(const Claim& c, const ScanResult& s) {
    if (c.weight != s.weight || c.value != s.value) throw std::invalid_argument("consistent: claim and scan differ");
    if (c.status == ClaimStatus::Inadmissible && !s.hits.empty()) return false;
    for (const auto& sol : c.solutions) {
        const BigInt n = pow(sol.p, sol.exponent);
        if (n <= s.upto && std::find(s.hits.begin(), s.hits.end(), n.get_ui()) == s.hits.end()) return false;
    }
    return true;
}

}  // namespace oddtau::pipeline
