#include "oddtau/contfrac.hpp"

#include "oddtau/arith.hpp"
#include "json_util.hpp"

#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <exception>
#include <thread>

namespace oddtau::contfrac {

using detail::big_to_json;
using nlohmann::json;

namespace {

constexpr unsigned kStartBits = 256;
constexpr unsigned kMaxBits = 4096;

mpq_class mpfr_to_mpq(mpfr_srcptr x) {
    BigInt z;
    const long e = mpfr_get_z_2exp(z.get_mpz_t(), x);
    mpq_class q(z);
    if (e >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
    }
    return q;
}

BigInt floor_q(const mpq_class& x) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

void sort_unique(std::vector<thue::ThueSolution>& v) {
    std::sort(v.begin(), v.end(), [](const thue::ThueSolution& a, const thue::ThueSolution& b) {
        if (a.X != b.X) return a.X < b.X;
        return a.Y < b.Y;
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// F_{2m}(X, Y) mod P through the recurrence.
std::uint64_t eval_even_mod(unsigned two_m, std::uint64_t X, std::uint64_t Y, std::uint64_t P) {
    std::uint64_t prev = 1, cur = 1;
    for (unsigned j = 2; j <= two_m; ++j) {
        const std::uint64_t xp = mulmod_u64(X, prev, P);
        const std::uint64_t base = (j % 2 == 0) ? mulmod_u64(Y, cur, P) : cur;
        const std::uint64_t next = (base + P - xp) % P;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

long double CertifiedReal::approx() const { return static_cast<long double>(value.get_d()); }

CertifiedReal cosine_value(unsigned ell, unsigned k, unsigned bits) {
    if (bits < 64) throw std::invalid_argument("cosine_value: at least 64 bits required");
    if (ell < 3 || !is_prime_u64(ell)) throw std::invalid_argument("cosine_value: ell must be an odd prime");
    if (k < 1 || k > (ell - 1) / 2) throw std::invalid_argument("cosine_value: k outside [1, (ell-1)/2]");
    if (ell == 3) return CertifiedReal{mpq_class(-1), mpq_class(0), bits};

    // Working precision P = bits + 32. pi, the product by 2k and the division by ell each
    // round once (relative 2^-P); the argument is below 2 pi, so its absolute error is
    // under 2^(5-P). cos is 1-Lipschitz and rounds once more, and doubling is exact:
    // total under 2^(7-P) = 2^-(bits+25), comfortably inside the stated 2^-(bits+16).
    const mpfr_prec_t P = static_cast<mpfr_prec_t>(bits) + 32;
    mpfr_t x;
    mpfr_init2(x, P);
    mpfr_const_pi(x, MPFR_RNDN);
    mpfr_mul_ui(x, x, 2ul * k, MPFR_RNDN);
    mpfr_div_ui(x, x, ell, MPFR_RNDN);
    mpfr_cos(x, x, MPFR_RNDN);
    mpfr_mul_2ui(x, x, 1, MPFR_RNDN);
    CertifiedReal out;
    out.value = mpfr_to_mpq(x);
    mpfr_clear(x);
    out.error_bound = 1;
    mpq_div_2exp(out.error_bound.get_mpq_t(), out.error_bound.get_mpq_t(), bits + 16);
    out.precision_bits = bits;
    return out;
}

std::vector<Convergent> convergents_below(const CertifiedReal& x, const BigInt& q_max) {
    if (q_max < 1) throw std::invalid_argument("convergents_below: q_max must be positive");
    std::vector<Convergent> out;
    mpq_class lo = x.lower(), hi = x.upper();
    BigInt p1 = 1, q1 = 0, p2 = 0, q2 = 1;  // p_{i-1}, q_{i-1}, p_{i-2}, q_{i-2}
    for (unsigned index = 0;; ++index) {
        // Partial quotients after the first are >= 1.
        if (index > 0 && q1 + q2 > q_max) break;
        const BigInt a = floor_q(lo);
        if (floor_q(hi) != a) {
            throw PrecisionExhausted("partial quotient " + std::to_string(index) + " not determined at " +
                                     std::to_string(x.precision_bits) + " bits");
        }
        const BigInt p = a * p1 + p2;
        const BigInt q = a * q1 + q2;
        if (q > q_max) break;
        out.push_back({index, p, q});
        const mpq_class flo = lo - a, fhi = hi - a;
        if (flo == 0) {
            if (lo == hi) break;  // x is this rational
            // x may be a itself or lie just above it; only a large enough next q settles it.
            if (q + q1 > q_max) break;
            throw PrecisionExhausted("interval touches a rational at quotient " + std::to_string(index));
        }
        lo = 1 / fhi;
        hi = 1 / flo;
        p2 = p1;
        q2 = q1;
        p1 = p;
        q1 = q;
    }
    return out;
}

std::vector<Convergent> convergents_with_retry(unsigned ell, unsigned k, const BigInt& q_max, unsigned* bits_used) {
    for (unsigned bits = kStartBits;; bits *= 2) {
        try {
            auto c = convergents_below(cosine_value(ell, k, bits), q_max);
            if (bits_used) *bits_used = bits;
            return c;
        } catch (const PrecisionExhausted&) {
            if (bits >= kMaxBits) throw;
        }
    }
}

CertificationReport certify_prime_thue(unsigned ell, unsigned threads) {
    if (ell < 31 || !is_prime_u64(ell)) {
        throw std::invalid_argument("certify_prime_thue: ell must be a prime >= 31");
    }
    const auto start = std::chrono::steady_clock::now();
    CertificationReport rep;
    rep.ell = ell;
    const BigInt L(ell), negL(-static_cast<long>(ell));
    const unsigned m = (ell - 1) / 2;
    auto to_f = [](const BigInt& X, const BigInt& Y, const BigInt& v) {
        return thue::ThueSolution{X, BigInt(Y + 2 * X), v};
    };

    // Midsize regime, one task per angle.
    struct Part {
        std::uint64_t pairs = 0;
        unsigned bits = 0;
        std::vector<thue::ThueSolution> hits;
        std::exception_ptr err;
    };
    std::vector<Part> parts(m);
    const BigInt q_max(kE8Ceil - 1);
    auto work = [&](unsigned k) {
        Part& part = parts[k - 1];
        try {
            for (const auto& c : convergents_with_retry(ell, k, q_max, &part.bits)) {
                for (int sx : {1, -1}) {
                    for (int sy : {1, -1}) {
                        const BigInt X = sx * c.q, Y = sy * c.p;
                        ++part.pairs;
                        const BigInt v = thue::eval_fhat(ell, X, Y);
                        if (v == L || v == negL) part.hits.push_back(to_f(X, Y, v));
                    }
                }
            }
        } catch (...) {
            part.err = std::current_exception();
        }
    };
    const unsigned workers = std::min<unsigned>(m, threads ? threads : std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (unsigned k = 1; k <= m; ++k) work(k);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (unsigned k = 1 + w; k <= m; k += workers) work(k);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& p : parts) {
        if (p.err) std::rethrow_exception(p.err);
        rep.midsize_checked_pairs += p.pairs;
        rep.max_bits = std::max(rep.max_bits, p.bits);
        rep.midsize_hits.insert(rep.midsize_hits.end(), p.hits.begin(), p.hits.end());
    }
    sort_unique(rep.midsize_hits);

    // Small regime: |X| <= 3, and every root of Fhat(X, .) lies in [-2|X|, 2|X|].
    for (long X = -3; X <= 3; ++X) {
        const long span = 2 * std::labs(X) + static_cast<long>(ell) + 1;
        for (long Y = -span; Y <= span; ++Y) {
            ++rep.small_checked_pairs;
            const BigInt v = thue::eval_fhat(ell, BigInt(X), BigInt(Y));
            if (v == L || v == negL) rep.small_hits.push_back(to_f(BigInt(X), BigInt(Y), v));
        }
    }
    sort_unique(rep.small_hits);

    rep.solutions = rep.midsize_hits;
    rep.solutions.insert(rep.solutions.end(), rep.small_hits.begin(), rep.small_hits.end());
    sort_unique(rep.solutions);
    rep.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string report_json(const CertificationReport& r) {
    auto hits = [](const std::vector<thue::ThueSolution>& v) {
        json a = json::array();
        for (const auto& s : v) a.push_back({{"X", big_to_json(s.X)}, {"Y", big_to_json(s.Y)}, {"value", big_to_json(s.value)}});
        return a;
    };
    json j;
    j["ell"] = r.ell;
    j["regimes"] = {
        {"large", r.large_regime},
        {"midsize", {{"checked_pairs", r.midsize_checked_pairs}, {"hits", hits(r.midsize_hits)}}},
        {"small", {{"checked_pairs", r.small_checked_pairs}, {"hits", hits(r.small_hits)}}},
    };
    j["solutions"] = hits(r.solutions);
    j["max_bits"] = r.max_bits;
    j["runtime_ms"] = r.runtime_ms;
    return j.dump(2);
}

PrimePowerVerdict prime_power_exclusion(unsigned ell, int weight) {
    if (ell < 31 || !is_prime_u64(ell)) {
        throw std::invalid_argument("prime_power_exclusion: ell must be a prime >= 31");
    }
    PrimePowerVerdict v;
    v.ell = ell;
    v.weight = weight;
    const unsigned w = static_cast<unsigned>(weight - 1);
    const BigInt L(ell);
    // Word-size primes for a fast modular screen before any exact evaluation.
    const std::uint64_t screens[] = {4611686018427387847ull, 4611686018427388039ull, 4611686018427388093ull};
    for (std::uint64_t p : primes_up_to(kE8Ceil)) {
        const BigInt X = pow(BigInt(static_cast<unsigned long>(p)), w);
        if (X >= kE8Ceil) break;
        v.primes_checked.push_back(BigInt(static_cast<unsigned long>(p)));
        const std::uint64_t Xu = X.get_ui();
        for (std::uint64_t a = 0; a * a <= 4 * Xu; ++a) {
            bool maybe = true;
            for (std::uint64_t P : screens) {
                const std::uint64_t r = eval_even_mod(ell - 1, Xu % P, (a * a) % P, P);
                if (r != ell % P && r != (P - ell % P) % P) {
                    maybe = false;
                    break;
                }
            }
            if (!maybe) continue;
            const BigInt val = thue::eval_even(ell - 1, X, BigInt(static_cast<unsigned long>(a * a)));
            if (val == L || val == -L) {
                v.survivors.push_back({BigInt(static_cast<unsigned long>(p)), BigInt(static_cast<unsigned long>(a)), X,
                                       BigInt(static_cast<unsigned long>(a * a))});
            }
        }
    }
    v.no_prime = v.survivors.empty();
    if (v.primes_checked.empty()) {
        v.reason = "2^" + std::to_string(w) + " >= 2981 > e^8, so no prime power p^" + std::to_string(w) +
                   " lies in the range left open";
    } else {
        std::string ps;
        for (const auto& p : v.primes_checked) ps += (ps.empty() ? "" : ", ") + to_string(p);
        v.reason = "only p in {" + ps + "} has p^" + std::to_string(w) + " < e^8; checked directly, " +
                   (v.survivors.empty() ? "no solution" : "solutions remain");
    }
    return v;
}

}  // namespace oddtau::contfrac
