#include "oddtau/binform.hpp"

#include "oddtau/arith.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace oddtau::thue {

namespace {

constexpr long double kEps = std::numeric_limits<long double>::epsilon();
// Coefficients enter the root finder through a 53-bit mantissa.
constexpr long double kCoeffEps = 0x1p-52L;

// Windows wider than this mean the numerics cannot separate the roots; refuse rather
// than silently enumerate billions of points.
constexpr long double kMaxWindow = 5e7L;

struct Window {
    std::int64_t lo, hi;
};

unsigned worker_count(unsigned requested, std::size_t jobs) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Exact solutions of c U^k = m.
std::vector<BigInt> monomial_solutions(const BigInt& c, unsigned k, const BigInt& m) {
    std::vector<BigInt> out;
    if (c == 0 || k == 0) return out;
    if (!mpz_divisible_p(m.get_mpz_t(), c.get_mpz_t())) return out;
    const BigInt r = m / c;
    if (k % 2) {
        if (auto u = signed_integer_root(r, k)) out.push_back(*u);
    } else if (auto u = integer_root(r, k)) {
        out.push_back(-*u);
        if (*u != 0) out.push_back(*u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

BinaryForm strip_leading(const BinaryForm& g, unsigned s) {
    return BinaryForm{std::vector<BigInt>(g.coeffs.begin() + s, g.coeffs.end())};
}

class WindowSolver {
public:
    WindowSolver(const BinaryForm& h, std::vector<RootEnclosure> roots) : h_(h), roots_(std::move(roots)) {
        const std::size_t n = roots_.size();
        disjoint_ = true;
        for (std::size_t i = 0; i < n && disjoint_; ++i) {
            if (!std::isfinite(roots_[i].radius)) disjoint_ = false;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (std::abs(roots_[i].center - roots_[j].center) <= roots_[i].radius + roots_[j].radius) {
                    disjoint_ = false;
                    break;
                }
            }
        }
        if (disjoint_) {
            log_sep_.assign(n, 0);
            for (std::size_t k = 0; k < n; ++k) {
                long double acc = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == k) continue;
                    const long double sep =
                        std::abs(roots_[k].center - roots_[j].center) - roots_[k].radius - roots_[j].radius;
                    acc += std::log(sep / 2);
                }
                log_sep_[k] = acc;
            }
        }
        lead_ = std::abs(to_long_double(h_.coeffs.front()));
        for (const auto& c : h_.coeffs) wrapped_.push_back(wrap_u64(c));
    }

    // Points with H(U, V) == one of `targets` for this fixed V != 0. `max_target` bounds |m|.
    void solve_at(std::int64_t V, const std::vector<BigInt>& targets, long double max_target,
                  std::vector<FormPoint>& out, std::uint64_t& evaluations) const {
        const unsigned n = h_.degree();
        const long double absV = std::fabs(static_cast<long double>(V));
        const long double ratio = max_target / lead_;
        const long double r1 = ratio > 0 ? std::pow(ratio, 1.0L / n) : 0;

        std::vector<Window> windows;
        for (std::size_t k = 0; k < roots_.size(); ++k) {
            long double rad = r1;
            if (disjoint_ && n >= 2) {
                const long double lr2 =
                    (ratio > 0 ? std::log(ratio) : -std::numeric_limits<long double>::infinity()) -
                    log_sep_[k] - (n - 1) * std::log(absV);
                rad = std::min(rad, std::exp(lr2));
            }
            const Complex c = roots_[k].center * static_cast<long double>(V);
            rad += roots_[k].radius * absV;
            const long double slack = 1e-6L + 64 * kEps * (std::abs(c) + rad);
            rad += slack;
            if (std::fabs(c.imag()) > rad) continue;
            if (rad > kMaxWindow) {
                throw std::runtime_error("binary form solver: root window too wide to enumerate");
            }
            const long double lo = std::ceil(c.real() - rad), hi = std::floor(c.real() + rad);
            if (lo > hi) continue;
            if (std::fabs(lo) > 9e18L || std::fabs(hi) > 9e18L) {
                throw std::runtime_error("binary form solver: window outside 64-bit range");
            }
            windows.push_back({static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)});
        }
        if (windows.empty()) return;
        std::sort(windows.begin(), windows.end(), [](const Window& a, const Window& b) { return a.lo < b.lo; });
        std::vector<Window> merged{windows.front()};
        for (std::size_t i = 1; i < windows.size(); ++i) {
            if (windows[i].lo <= merged.back().hi + 1) {
                merged.back().hi = std::max(merged.back().hi, windows[i].hi);
            } else {
                merged.push_back(windows[i]);
            }
        }

        // H(U, V) mod 2^64 first; exact arithmetic only on a match.
        std::vector<std::uint64_t> cv(n + 1);
        std::uint64_t vp = 1;
        const std::uint64_t vw = static_cast<std::uint64_t>(V);
        for (unsigned j = 0; j <= n; ++j) {
            cv[j] = wrapped_[j] * vp;
            vp *= vw;
        }
        std::vector<std::uint64_t> tw;
        for (const auto& t : targets) tw.push_back(wrap_u64(t));

        const BigInt Vb(static_cast<long>(V));
        for (const auto& w : merged) {
            for (std::int64_t U = w.lo;; ++U) {
                ++evaluations;
                const std::uint64_t uw = static_cast<std::uint64_t>(U);
                std::uint64_t acc = 0;
                for (unsigned j = 0; j <= n; ++j) acc = acc * uw + cv[j];
                if (std::find(tw.begin(), tw.end(), acc) != tw.end()) {
                    const BigInt Ub(static_cast<long>(U));
                    BigInt value = h_.eval(Ub, Vb);
                    if (std::find(targets.begin(), targets.end(), value) != targets.end()) {
                        out.push_back({Ub, Vb, std::move(value)});
                    }
                }
                if (U == w.hi) break;
            }
        }
    }

private:
    const BinaryForm& h_;
    std::vector<RootEnclosure> roots_;
    bool disjoint_ = false;
    std::vector<long double> log_sep_;
    long double lead_ = 1;
    std::vector<std::uint64_t> wrapped_;
};

long double max_abs(const std::vector<BigInt>& targets) {
    long double m = 0;
    for (const auto& t : targets) m = std::max(m, std::fabs(to_long_double(t)));
    // Absorb the rounding of the conversion.
    return m * (1 + 8 * kCoeffEps);
}

void sort_points(std::vector<FormPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const FormPoint& a, const FormPoint& b) {
        if (a.V != b.V) return a.V < b.V;
        return a.U < b.U;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Solve when G = V^s H with s >= 1: V^s divides each nonzero target.
FormSolveResult solve_leading_zero(const BinaryForm& g, unsigned s, const std::vector<BigInt>& targets,
                                   const FormSolveOptions& opts) {
    FormSolveResult res;
    res.v_bound = opts.v_bound;
    res.complete = true;
    const BinaryForm h = strip_leading(g, s);
    const unsigned hd = h.degree();
    std::optional<WindowSolver> ws;
    std::vector<RootEnclosure> roots;
    if (hd >= 1) {
        roots = form_roots(h);
        ws.emplace(h, roots);
    }
    for (const BigInt& m : targets) {
        if (m == 0) {
            res.infinite_family = true;
            res.complete = false;
            continue;
        }
        for (const BigInt& d : divisors(factor(m))) {
            for (int sg : {-1, 1}) {
                const BigInt V = sg * d;
                const BigInt Vs = pow(V, s);
                if (!mpz_divisible_p(m.get_mpz_t(), Vs.get_mpz_t())) continue;
                const BigInt mp = m / Vs;
                if (hd == 0) {
                    if (h.coeffs.front() == mp) {
                        res.infinite_family = true;
                        res.complete = false;
                    }
                    continue;
                }
                if (!V.fits_slong_p()) throw std::runtime_error("binary form solver: divisor out of range");
                std::vector<FormPoint> pts;
                ws->solve_at(V.get_si(), {mp}, std::fabs(to_long_double(mp)) * (1 + 8 * kCoeffEps), pts,
                             res.candidates);
                for (auto& p : pts) res.points.push_back({p.U, p.V, m});
            }
        }
    }
    sort_points(res.points);
    return res;
}

}  // namespace

BigInt BinaryForm::eval(const BigInt& U, const BigInt& V) const {
    // Horner in U with the V powers folded in.
    BigInt acc = 0, vp = 1;
    std::vector<BigInt> scaled(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        scaled[j] = coeffs[j] * vp;
        vp *= V;
    }
    for (const auto& c : scaled) acc = acc * U + c;
    return acc;
}

BinaryForm BinaryForm::swapped() const {
    return BinaryForm{std::vector<BigInt>(coeffs.rbegin(), coeffs.rend())};
}

bool BinaryForm::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const BigInt& c) { return c == 0; });
}

std::vector<RootEnclosure> form_roots(const BinaryForm& g) {
    const unsigned n = g.degree();
    if (n == 0) throw std::invalid_argument("form_roots: degree must be positive");
    if (g.coeffs.front() == 0) throw std::invalid_argument("form_roots: leading coefficient must be nonzero");
    std::vector<long double> a(n + 1);
    for (unsigned j = 0; j <= n; ++j) a[j] = to_long_double(g.coeffs[j]);

    auto eval = [&](Complex z, Complex& p, Complex& dp, long double& mag) {
        p = a[0];
        dp = 0;
        mag = std::fabs(a[0]);
        const long double az = std::abs(z);
        for (unsigned j = 1; j <= n; ++j) {
            dp = dp * z + p;
            p = p * z + a[j];
            mag = mag * az + std::fabs(a[j]);
        }
    };

    if (n == 1) {
        const long double t = -a[1] / a[0];
        return {{Complex(t, 0), 4 * kCoeffEps * (std::fabs(t) + 1)}};
    }

    // Initial points on a circle enclosing the roots (Fujiwara-type radius about the centroid).
    const Complex centre(-a[1] / (n * a[0]), 0);
    long double R = 0;
    for (unsigned j = 1; j <= n; ++j) R = std::max(R, std::pow(std::fabs(a[j] / a[0]), 1.0L / j));
    R = std::max(R, 1e-3L);
    std::vector<Complex> z(n);
    for (unsigned k = 0; k < n; ++k) {
        const long double ang = 2 * M_PIl * k / n + 0.4L;
        z[k] = centre + std::polar(R, ang);
    }
    for (int iter = 0; iter < 2000; ++iter) {
        long double worst = 0;
        for (unsigned k = 0; k < n; ++k) {
            Complex p, dp;
            long double mag;
            eval(z[k], p, dp, mag);
            if (std::abs(p) <= 4 * n * kEps * mag) continue;
            const Complex w = p / dp;
            Complex s = 0;
            for (unsigned j = 0; j < n; ++j) {
                if (j != k) s += 1.0L / (z[k] - z[j]);
            }
            const Complex corr = w / (1.0L - w * s);
            z[k] -= corr;
            worst = std::max(worst, std::abs(corr) / (std::abs(z[k]) + 1e-30L));
        }
        if (worst < 8 * kEps) break;
    }

    std::vector<RootEnclosure> out(n);
    for (unsigned k = 0; k < n; ++k) {
        Complex p, dp;
        long double mag;
        eval(z[k], p, dp, mag);
        // |p| plus the rounding in evaluating it and in the coefficients themselves.
        const long double perr = std::abs(p) + (4 * n * kEps + 2 * kCoeffEps) * mag;
        long double denom = std::fabs(a[0]);
        for (unsigned j = 0; j < n; ++j) {
            if (j != k) denom *= std::abs(z[k] - z[j]);
        }
        long double r = denom > 0 ? n * perr / denom : std::numeric_limits<long double>::infinity();
        out[k] = {z[k], r * 1.01L + 16 * kEps * std::abs(z[k])};
    }
    std::sort(out.begin(), out.end(), [](const RootEnclosure& x, const RootEnclosure& y) {
        if (x.center.real() != y.center.real()) return x.center.real() < y.center.real();
        return x.center.imag() < y.center.imag();
    });
    return out;
}

FormSolveResult solve_form(const BinaryForm& g, const std::vector<BigInt>& targets, const FormSolveOptions& opts) {
    const unsigned n = g.degree();
    if (g.coeffs.empty() || g.is_zero()) {
        FormSolveResult res;
        res.v_bound = opts.v_bound;
        res.infinite_family = std::find(targets.begin(), targets.end(), BigInt(0)) != targets.end();
        res.complete = !res.infinite_family;
        return res;
    }
    unsigned s = 0;
    while (g.coeffs[s] == 0) ++s;
    if (s > 0) return solve_leading_zero(g, s, targets, opts);
    unsigned e = 0;
    while (g.coeffs[n - e] == 0) ++e;
    if (e > 0) {
        FormSolveOptions sw = opts;
        sw.roots.reset();
        FormSolveResult r = solve_leading_zero(g.swapped(), e, targets, sw);
        for (auto& p : r.points) std::swap(p.U, p.V);
        sort_points(r.points);
        return r;
    }

    FormSolveResult res;
    res.v_bound = opts.v_bound;
    if (!opts.v_bound.fits_slong_p() || opts.v_bound < 0) {
        throw std::invalid_argument("solve_form: v_bound must be a non-negative 64-bit integer");
    }
    const std::int64_t L = opts.v_bound.get_si();
    const WindowSolver ws(g, opts.roots ? *opts.roots : form_roots(g));
    const long double max_target = max_abs(targets);

    // V = 0: c_0 U^n = m.
    std::vector<FormPoint> zero_row;
    for (const auto& m : targets) {
        for (auto& U : monomial_solutions(g.coeffs.front(), n, m)) zero_row.push_back({U, 0, m});
    }

    const unsigned workers = worker_count(opts.threads, static_cast<std::size_t>(L));
    const std::int64_t chunk = L / workers + 1;
    struct Part {
        std::vector<FormPoint> neg, pos;
        std::uint64_t evals = 0;
        std::exception_ptr err;
    };
    std::vector<Part> parts(workers);
    auto run = [&](unsigned w) {
        try {
            const std::int64_t lo = 1 + static_cast<std::int64_t>(w) * chunk;
            const std::int64_t hi = std::min<std::int64_t>(L, lo + chunk - 1);
            for (std::int64_t v = lo; v <= hi; ++v) {
                ws.solve_at(-v, targets, max_target, parts[w].neg, parts[w].evals);
                ws.solve_at(v, targets, max_target, parts[w].pos, parts[w].evals);
            }
        } catch (...) {
            parts[w].err = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    for (auto& p : parts) {
        if (p.err) std::rethrow_exception(p.err);
        res.candidates += p.evals;
    }
    for (auto& p : parts) res.points.insert(res.points.end(), p.neg.begin(), p.neg.end());
    res.points.insert(res.points.end(), zero_row.begin(), zero_row.end());
    for (auto& p : parts) res.points.insert(res.points.end(), p.pos.begin(), p.pos.end());
    sort_points(res.points);
    return res;
}

const std::vector<std::uint64_t>& default_form_moduli() {
    static const std::vector<std::uint64_t> moduli = [] {
        std::vector<std::uint64_t> m = primes_up_to(300);
        for (std::uint64_t q : {4, 8, 16, 32, 9, 27, 81, 25, 125, 49}) m.push_back(q);
        return m;
    }();
    return moduli;
}

bool form_solvable_mod(const BinaryForm& g, const BigInt& m, std::uint64_t M) {
    if (M == 0) throw std::invalid_argument("form_solvable_mod: modulus must be positive");
    if (M == 1) return true;
    const unsigned n = g.degree();
    std::vector<std::uint64_t> c(n + 1);
    for (unsigned j = 0; j <= n; ++j) c[j] = mod_u64(g.coeffs[j], M);
    const std::uint64_t target = mod_u64(m, M);
    auto eval = [&](std::uint64_t U, std::uint64_t V) {
        std::uint64_t acc = 0, vp = 1;
        std::vector<std::uint64_t> cv(n + 1);
        for (unsigned j = 0; j <= n; ++j) {
            cv[j] = mulmod_u64(c[j], vp, M);
            vp = mulmod_u64(vp, V, M);
        }
        for (unsigned j = 0; j <= n; ++j) acc = (mulmod_u64(acc, U, M) + cv[j]) % M;
        return acc;
    };
    if (target == 0) return true;  // (0, 0)

    if (is_prime_u64(M)) {
        const std::uint64_t p = M;
        // V = 0 row.
        for (std::uint64_t U = 1; U < p; ++U) {
            if (mulmod_u64(c[0], powmod_u64(U, n, p), p) == target) return true;
        }
        // V != 0: G(U, V) = V^n g(U / V), g(t) = G(t, 1).
        std::vector<char> nth(p, 0);
        for (std::uint64_t u = 1; u < p; ++u) nth[powmod_u64(u, n, p)] = 1;
        for (std::uint64_t t = 0; t < p; ++t) {
            const std::uint64_t gt = eval(t, 1);
            if (gt == 0) continue;
            const std::uint64_t q = mulmod_u64(target, powmod_u64(gt, p - 2, p), p);
            if (nth[q]) return true;
        }
        return false;
    }
    for (std::uint64_t V = 0; V < M; ++V) {
        for (std::uint64_t U = 0; U < M; ++U) {
            if (eval(U, V) == target) return true;
        }
    }
    return false;
}

std::optional<std::uint64_t> form_local_obstruction(const BinaryForm& g, const BigInt& m,
                                                    const std::vector<std::uint64_t>& moduli) {
    for (auto M : moduli) {
        if (!form_solvable_mod(g, m, M)) return M;
    }
    return std::nullopt;
}

}  // namespace oddtau::thue
