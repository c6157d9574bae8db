#include "oddtau/thue.hpp"

#include "oddtau/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace oddtau::thue {

namespace {

using Form = std::vector<BigInt>;  // index i = power of X

Form mul_y(const Form& f) {
    Form g = f;
    g.emplace_back(0);
    return g;
}

Form mul_x(const Form& f) {
    Form g(f.size() + 1);
    for (std::size_t i = 0; i < f.size(); ++i) g[i + 1] = f[i];
    return g;
}

Form sub(const Form& a, const Form& b) {
    Form c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return c;
}

std::mutex cache_mutex;
std::map<std::pair<int, unsigned>, std::unique_ptr<const ThuePolynomial>> cache;

template <class Build>
const ThuePolynomial& memoized(ThueKind kind, unsigned index, Build&& build) {
    const auto key = std::make_pair(static_cast<int>(kind), index);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto poly = std::make_unique<const ThuePolynomial>(build());
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto [it, inserted] = cache.emplace(key, std::move(poly));
    return *it->second;
}

}  // namespace

std::vector<std::vector<BigInt>> t_sequence(unsigned j_max) {
    std::vector<Form> t;
    t.push_back({1});
    if (j_max >= 1) t.push_back({1});
    for (unsigned j = 2; j <= j_max; ++j) {
        if (j % 2 == 0) {
            t.push_back(sub(mul_y(t[j - 1]), mul_x(t[j - 2])));
        } else {
            t.push_back(sub(t[j - 1], mul_x(t[j - 2])));
        }
    }
    return t;
}

BigInt ThuePolynomial::coefficient(unsigned i, unsigned j) const {
    if (i + j != degree) return 0;
    return coeffs[i];
}

BigInt ThuePolynomial::eval(const BigInt& X, const BigInt& Y) const {
    return as_form().eval(Y, X);
}

std::vector<long double> ThuePolynomial::root_slopes() const {
    std::vector<long double> out;
    for (unsigned k = 1; k <= degree; ++k) {
        if (kind == ThueKind::Even) {
            const long double c = std::cos(M_PIl * k / (2 * degree + 1));
            out.push_back(4 * c * c);
        } else {
            out.push_back(2 * std::cos(2 * M_PIl * k / index));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BinaryForm ThuePolynomial::as_form() const { return BinaryForm{coeffs}; }

const ThuePolynomial& thue_poly(unsigned two_m) {
    if (two_m < 2 || two_m % 2) {
        throw std::invalid_argument("thue_poly: expected a positive even index, got " + std::to_string(two_m));
    }
    return memoized(ThueKind::Even, two_m, [two_m] {
        auto t = t_sequence(two_m);
        return ThuePolynomial{ThueKind::Even, two_m, two_m / 2, std::move(t[two_m])};
    });
}

const ThuePolynomial& fhat_poly(unsigned ell) {
    if (ell < 3 || !is_prime_u64(ell)) {
        throw std::invalid_argument("fhat_poly: expected an odd prime, got " + std::to_string(ell));
    }
    return memoized(ThueKind::Fhat, ell, [ell] {
        const ThuePolynomial& f = thue_poly(ell - 1);
        const unsigned m = f.degree;
        Form out(m + 1);
        // sum_j c_j X^j (Y + 2X)^{m-j}
        for (unsigned j = 0; j <= m; ++j) {
            if (f.coeffs[j] == 0) continue;
            const unsigned r = m - j;
            BigInt binom = 1, two = 1;
            for (unsigned i = 0; i <= r; ++i) {
                out[j + i] += f.coeffs[j] * binom * two;
                binom = binom * (r - i) / (i + 1);
                two *= 2;
            }
        }
        return ThuePolynomial{ThueKind::Fhat, ell, m, std::move(out)};
    });
}

BigInt eval_even(unsigned two_m, const BigInt& X, const BigInt& Y) {
    if (two_m < 2 || two_m % 2) throw std::invalid_argument("eval_even: expected a positive even index");
    BigInt prev = 1, cur = 1;  // t_0, t_1
    for (unsigned j = 2; j <= two_m; ++j) {
        BigInt next = (j % 2 == 0) ? BigInt(Y * cur - X * prev) : BigInt(cur - X * prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

BigInt eval_fhat(unsigned ell, const BigInt& X, const BigInt& Y) {
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("eval_fhat: expected an odd index");
    return eval_even(ell - 1, X, BigInt(Y + 2 * X));
}

BoundedResult bounded_solve(const ThuePolynomial& poly, const std::vector<BigInt>& targets, const BigInt& x_bound,
                            unsigned threads) {
    if (x_bound < 1) throw std::invalid_argument("bounded_solve: x_bound must be positive");
    constexpr long double eps = std::numeric_limits<long double>::epsilon();
    std::vector<RootEnclosure> roots;
    for (long double s : poly.root_slopes()) roots.push_back({Complex(s, 0), 64 * eps * (std::fabs(s) + 1)});

    FormSolveOptions opts;
    opts.v_bound = x_bound;
    opts.threads = threads;
    opts.roots = std::move(roots);
    const FormSolveResult r = solve_form(poly.as_form(), targets, opts);

    BoundedResult out;
    out.x_bound = x_bound;
    out.candidates = r.candidates;
    for (const auto& p : r.points) out.solutions.push_back({p.V, p.U, p.value});
    return out;
}

std::optional<BigInt> prime_with_power(const BigInt& X, unsigned w) {
    if (X < 2) return std::nullopt;
    auto p = integer_root(X, w);
    if (p && is_prime(*p)) return p;
    return std::nullopt;
}

std::vector<HeckeCandidate> filter_hecke_shape(const std::vector<ThueSolution>& solutions, int weight) {
    std::vector<HeckeCandidate> out;
    const unsigned w = static_cast<unsigned>(weight - 1);
    for (const auto& s : solutions) {
        auto p = prime_with_power(s.X, w);
        if (!p) continue;
        auto a = integer_root(s.Y, 2);
        if (!a) continue;
        if (s.Y > 4 * s.X) continue;
        out.push_back({*p, *a, s.X, s.Y});
    }
    return out;
}

}  // namespace oddtau::thue
