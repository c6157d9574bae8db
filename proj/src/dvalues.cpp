#include "oddtau/dvalues.hpp"

#include "oddtau/embedded_data.hpp"
#include "oddtau/modforms.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace oddtau::dvalues {

using nlohmann::json;

namespace {

std::vector<Table1Row> parse_table1(std::string_view text) {
    const json doc = json::parse(text);
    std::vector<Table1Row> rows;
    for (const auto& r : doc.at("rows")) {
        Table1Row row;
        row.ell = r.at("ell").get<std::uint64_t>();
        row.weights = r.at("weights").get<std::vector<int>>();
        row.dvalues = r.at("dvalues").get<std::vector<std::uint64_t>>();
        std::sort(row.dvalues.begin(), row.dvalues.end());
        rows.push_back(std::move(row));
    }
    return rows;
}

void require_odd_prime(std::uint64_t ell) {
    if (ell < 3 || !is_prime_u64(ell)) {
        throw std::invalid_argument("expected an odd prime, got " + std::to_string(ell));
    }
}

}  // namespace

const std::vector<Table1Row>& table1() {
    static const std::vector<Table1Row> rows = parse_table1(data::table1_json());
    return rows;
}

std::vector<std::uint64_t> default_dvalues(std::uint64_t ell) {
    require_odd_prime(ell);
    const BigInt L(static_cast<unsigned long>(ell));
    std::vector<std::uint64_t> out;
    for (const auto& f : factor(L * (L * L - 1)).factors) {
        if (f.prime != 2) out.push_back(f.prime.get_ui());
    }
    return out;
}

DSet dset(int weight, std::uint64_t ell) {
    modforms::require_supported_weight(weight);
    require_odd_prime(ell);
    for (const auto& row : table1()) {
        if (row.ell != ell) continue;
        if (std::find(row.weights.begin(), row.weights.end(), weight) == row.weights.end()) continue;
        return DSet{weight, ell, row.dvalues, DSetSource::TableOverride};
    }
    return DSet{weight, ell, default_dvalues(ell), DSetSource::DefaultFormula};
}

CompositeTarget CompositeTarget::make(int weight, const BigInt& value) {
    modforms::require_supported_weight(weight);
    if (abs(value) < 3) throw std::invalid_argument("target value must satisfy |c| >= 3");
    if (mpz_even_p(value.get_mpz_t())) throw std::invalid_argument("target value must be odd");
    return CompositeTarget{weight, value, factor(value)};
}

std::vector<std::uint64_t> restricted_dset(const CompositeTarget& target) {
    std::vector<DSet> sets;
    std::uint64_t M = 0;
    for (const auto& f : target.factorization.factors) {
        sets.push_back(dset(target.weight, f.prime.get_ui()));
        M = std::max(M, sets.back().values.front());
    }
    std::set<std::uint64_t> out;
    for (const auto& s : sets) {
        for (auto d : s.values) {
            if (d >= M) out.insert(d);
        }
    }
    return {out.begin(), out.end()};
}

std::string evidence_name(Evidence e) {
    switch (e) {
        case Evidence::Unconditional: return "unconditional";
        case Evidence::Grh: return "grh";
        case Evidence::Certified: return "this-run-certified";
        case Evidence::Bounded: return "this-run-bounded";
    }
    return "?";
}

Evidence parse_evidence(const std::string& s) {
    if (s == "unconditional") return Evidence::Unconditional;
    if (s == "grh") return Evidence::Grh;
    if (s == "this-run-certified") return Evidence::Certified;
    if (s == "this-run-bounded") return Evidence::Bounded;
    throw std::invalid_argument("unknown evidence level '" + s + "'");
}

int evidence_rank(Evidence e) {
    switch (e) {
        case Evidence::Unconditional:
        case Evidence::Certified: return 3;
        case Evidence::Bounded: return 2;
        case Evidence::Grh: return 1;
    }
    return 0;
}

void KnownLedger::add(KnownEntry entry) {
    auto key = std::make_pair(entry.weight, entry.value);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(std::move(key), std::move(entry));
    } else if (evidence_rank(entry.evidence) > evidence_rank(it->second.evidence)) {
        it->second = std::move(entry);
    }
}

const KnownEntry* KnownLedger::find(int weight, const BigInt& value) const {
    auto it = entries_.find(std::make_pair(weight, value));
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<KnownEntry> KnownLedger::entries() const {
    std::vector<KnownEntry> out;
    out.reserve(entries_.size());
    for (const auto& [key, e] : entries_) out.push_back(e);
    return out;
}

KnownLedger KnownLedger::from_json(std::string_view text) {
    const json doc = json::parse(text);
    KnownLedger ledger;
    for (const auto& group : doc.at("entries")) {
        const int weight = group.at("weight").get<int>();
        const Evidence ev = parse_evidence(group.at("evidence").get<std::string>());
        const std::string source = group.value("source", "");
        for (const auto& v : group.at("values")) {
            ledger.add(KnownEntry{weight, BigInt(v.get<long>()), ev, source});
        }
    }
    return ledger;
}

KnownLedger KnownLedger::bundled() {
    return from_json(data::known_values_json());
}

SupportResult prime_power_support(const CompositeTarget& target, const KnownLedger& ledger) {
    SupportResult result;
    const BigInt& c = target.value;
    const BigInt absc = abs(c);
    std::map<BigInt, KnownEntry> used;
    for (const BigInt& a : divisors(target.factorization)) {
        if (a == 1 || a == absc) continue;
        for (int s : {1, -1}) {
            const BigInt alpha = s * a;
            const BigInt beta = c / alpha;
            const KnownEntry* ka = ledger.find(target.weight, alpha);
            const KnownEntry* kb = ledger.find(target.weight, beta);
            if (!ka && !kb) {
                result.confirmed = false;
                result.blocking_pair = std::make_pair(alpha, beta);
                result.used.clear();
                return result;
            }
            const KnownEntry* pick = ka;
            if (!pick || (kb && evidence_rank(kb->evidence) > evidence_rank(ka->evidence))) pick = kb;
            used.emplace(pick->value, *pick);
        }
    }
    result.confirmed = true;
    for (auto& [v, e] : used) result.used.push_back(std::move(e));
    return result;
}

}  // namespace oddtau::dvalues
