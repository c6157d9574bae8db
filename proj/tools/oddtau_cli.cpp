#include "oddtau/contfrac.hpp"
#include "oddtau/dvalues.hpp"
#include "oddtau/modforms.hpp"
#include "oddtau/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

using namespace oddtau;

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text << "\n";
}

std::string join(const std::vector<unsigned>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

void print_claim(const pipeline::Claim& c) {
    std::cout << "tau_" << c.weight << "(n) = " << to_string(c.value) << ": " << pipeline::status_name(c.status);
    if (c.status == pipeline::ClaimStatus::Constrained) std::cout << " (n = p^e, e in {" << join(c.exponents) << "})";
    std::cout << "\n";
    std::cout << "completeness: " << pipeline::completeness_name(c.completeness())
              << (c.bound_limited ? " [bound-limited]" : "") << (c.uses_grh() ? " [uses GRH-conditional prior results]" : "")
              << "\n";
    for (const auto& s : c.solutions) std::cout << "solution: n = " << to_string(s.p) << "^" << s.exponent << "\n";
    for (const auto& b : c.branches) {
        std::cout << "  d = " << b.d << ": " << pipeline::branch_outcome_name(b.outcome) << " (" << b.method << ")\n";
    }
    for (const auto& e : c.evidence) {
        std::cout << "  [" << pipeline::step_kind_name(e.kind) << ", " << pipeline::completeness_name(e.completeness)
                  << "] " << e.detail;
        if (e.grh_note) std::cout << " {GRH: " << *e.grh_note << "}";
        std::cout << "\n";
    }
}

pipeline::Config make_config(const std::string& thue_bound, const std::string& hyper_bound, bool basic_moduli,
                             unsigned threads) {
    pipeline::Config cfg;
    cfg.thue_bound = parse_bigint(thue_bound);
    cfg.hyper_bound = parse_bigint(hyper_bound);
    cfg.extended_moduli = !basic_moduli;
    cfg.threads = threads;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inadmissible odd values of level-1 eigenform coefficients"};
    app.require_subcommand(1);

    int weight = 12;
    std::size_t upto = 100;
    std::string cache_dir, value_text, json_path;
    std::string thue_bound = "10000", hyper_bound = "1000000";
    std::uint64_t ell = 0;
    unsigned threads = 0;
    int theorem_id = 1;
    bool basic_moduli = false, no_claim = false;

    auto* tau = app.add_subcommand("tau", "print tau_{weight}(n) for n <= upto");
    tau->add_option("--weight", weight)->required();
    tau->add_option("--upto", upto)->required()->check(CLI::PositiveNumber);
    tau->add_option("--cache", cache_dir, "directory for cached series");

    auto* ds = app.add_subcommand("dset", "admissible d for a prime ell");
    ds->add_option("--weight", weight)->required();
    ds->add_option("--ell", ell)->required();

    auto* ro = app.add_subcommand("ruleout", "decide whether tau_{weight}(n) = value is possible");
    ro->add_option("--weight", weight)->required();
    ro->add_option("--value", value_text)->required()->allow_extra_args(false);
    ro->add_option("--thue-bound", thue_bound);
    ro->add_option("--hyper-bound", hyper_bound);
    ro->add_option("--json", json_path);
    ro->add_flag("--basic-moduli", basic_moduli, "local obstructions from the short default moduli list only");
    ro->add_option("--scan", upto, "cross-check against tau(n), n <= scan")->default_val(10000);
    ro->add_option("--threads", threads);

    auto* ce = app.add_subcommand("certify", "all solutions of F_{ell-1}(X, Y) = +-ell");
    ce->add_option("--ell", ell)->required();
    ce->add_option("--json", json_path);
    ce->add_option("--threads", threads);

    auto* th = app.add_subcommand("theorem", "reproduce a theorem's value list");
    th->add_option("--id", theorem_id)->required()->check(CLI::Range(1, 4));
    th->add_option("--thue-bound", thue_bound);
    th->add_option("--hyper-bound", hyper_bound);
    th->add_option("--json", json_path);
    th->add_flag("--basic-moduli", basic_moduli);
    th->add_option("--threads", threads);

    auto* ve = app.add_subcommand("verify", "scan tau(n) = value for n <= upto");
    ve->add_option("--weight", weight)->required();
    ve->add_option("--value", value_text)->required();
    ve->add_option("--upto", upto)->required()->check(CLI::PositiveNumber);
    ve->add_flag("--no-claim", no_claim, "skip the rule_out cross-check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*tau) {
            const auto s = cache_dir.empty() ? modforms::eigenform_series(weight, upto)
                                             : modforms::cached_eigenform_series(cache_dir, weight, upto);
            for (std::size_t n = 1; n <= upto; ++n) std::cout << n << " " << to_string(s[n]) << "\n";
            return 0;
        }
        if (*ds) {
            const auto d = dvalues::dset(weight, ell);
            std::cout << "D(" << weight << ", " << ell << ") = {";
            for (std::size_t i = 0; i < d.values.size(); ++i) std::cout << (i ? ", " : "") << d.values[i];
            std::cout << "} (" << (d.source == dvalues::DSetSource::TableOverride ? "table" : "default") << ")\n";
            return 0;
        }
        if (*ro) {
            const auto cfg = make_config(thue_bound, hyper_bound, basic_moduli, threads);
            const auto claim = pipeline::rule_out(weight, parse_bigint(value_text), cfg);
            print_claim(claim);
            if (!json_path.empty()) write_file(json_path, pipeline::claim_json(claim));
            if (upto > 0) {
                const auto scan = pipeline::verify(weight, claim.value, upto);
                if (!pipeline::consistent(claim, scan)) {
                    std::cerr << "inconsistent: scan to " << upto << " found " << scan.hits.size() << " hit(s)\n";
                    return 2;
                }
                std::cout << "scan n <= " << upto << ": " << scan.hits.size() << " hit(s), consistent\n";
            }
            return 0;
        }
        if (*ce) {
            const auto r = contfrac::certify_prime_thue(static_cast<unsigned>(ell), threads);
            std::cout << "F_" << ell - 1 << "(X, Y) = +-" << ell << ": " << r.solutions.size() << " solution(s)\n";
            for (const auto& s : r.solutions) {
                std::cout << "  (" << to_string(s.X) << ", " << to_string(s.Y) << ") -> " << to_string(s.value) << "\n";
            }
            std::cout << "pairs checked: " << r.midsize_checked_pairs << " midsize, " << r.small_checked_pairs
                      << " small; " << r.runtime_ms << " ms\n";
            if (!json_path.empty()) write_file(json_path, contfrac::report_json(r));
            return 0;
        }
        if (*th) {
            const auto cfg = make_config(thue_bound, hyper_bound, basic_moduli, threads);
            const auto rep = pipeline::reproduce_theorem(theorem_id, cfg);
            for (const auto& r : rep.rows) {
                std::cout << r.part << (r.grh ? " (GRH)" : "") << "  tau_" << r.weight << " = " << to_string(r.value)
                          << ": " << pipeline::verdict_name(r.verdict) << "  [" << pipeline::status_name(r.claim.status);
                if (r.claim.status == pipeline::ClaimStatus::Constrained) std::cout << " e in {" << join(r.claim.exponents) << "}";
                std::cout << "]" << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
            }
            for (auto v : {pipeline::Verdict::Confirmed, pipeline::Verdict::ConsistentBoundLimited,
                           pipeline::Verdict::NotReproduced, pipeline::Verdict::Contradicted}) {
                std::cout << pipeline::verdict_name(v) << ": " << rep.count(v) << "\n";
            }
            if (!json_path.empty()) write_file(json_path, pipeline::theorem_json(rep));
            return rep.count(pipeline::Verdict::Contradicted) ? 2 : 0;
        }
        if (*ve) {
            const BigInt value = parse_bigint(value_text);
            const auto scan = pipeline::verify(weight, value, upto);
            std::cout << "n <= " << upto << " with tau_" << weight << "(n) = " << value_text << ": {";
            for (std::size_t i = 0; i < scan.hits.size(); ++i) std::cout << (i ? ", " : "") << scan.hits[i];
            std::cout << "}\n";
            const bool checkable = abs(value) >= 3 && mpz_odd_p(value.get_mpz_t());
            if (!no_claim && checkable) {
                const auto claim = pipeline::rule_out(weight, value);
                std::cout << "claim: " << pipeline::status_name(claim.status) << "\n";
                if (!pipeline::consistent(claim, scan)) {
                    std::cerr << "inconsistent: claim " << pipeline::status_name(claim.status) << " but scan found hits\n";
                    return 2;
                }
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
