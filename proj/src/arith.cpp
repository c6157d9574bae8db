#include "oddtau/arith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace oddtau {

namespace {

constexpr std::uint64_t kTrialLimit = 1u << 16;

const std::vector<std::uint64_t>& small_primes() {
    static const std::vector<std::uint64_t> primes = primes_up_to(kTrialLimit);
    return primes;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of composite n.
BigInt pollard_brent(const BigInt& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        BigInt y = 2, x, q = 1, g = 1, ys;
        std::size_t r = 1;
        constexpr std::size_t m = 128;
        auto step = [&](BigInt& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        do {
            x = y;
            for (std::size_t i = 0; i < r; ++i) step(y);
            std::size_t k = 0;
            do {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                    step(y);
                    BigInt diff = x - y;
                    q = q * abs(diff);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                step(ys);
                BigInt diff = x - ys;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
                g = abs(g);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_into(const BigInt& n, std::map<BigInt, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    BigInt d = pollard_brent(n);
    split_into(d, out);
    split_into(BigInt(n / d), out);
}

}  // namespace

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is exact for every n < 3.3e24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

BigInt Factorization::product() const {
    BigInt r = 1;
    for (const auto& f : factors) r *= pow(f.prime, f.exponent);
    return r;
}

std::vector<BigInt> Factorization::primes() const {
    std::vector<BigInt> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.prime);
    return out;
}

Factorization factor(const BigInt& n) {
    if (n == 0) throw std::invalid_argument("factor: zero has no factorization");
    Factorization result;
    result.value = abs(n);
    BigInt rest = result.value;
    std::map<BigInt, unsigned> found;
    for (std::uint64_t p : small_primes()) {
        if (rest == 1) break;
        if (BigInt(p) * p > rest) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++found[BigInt(p)];
        }
    }
    if (rest != 1) split_into(rest, found);
    for (auto& [p, e] : found) result.factors.push_back({p, e});
    return result;
}

BigInt sigma(unsigned v, const BigInt& n) {
    if (n < 1) throw std::invalid_argument("sigma: n must be positive");
    if (!n.fits_ulong_p() || n.get_ui() > (1ull << 40)) return sigma_from_factorization(v, factor(n));
    const std::uint64_t m = n.get_ui();
    BigInt total = 0;
    for (std::uint64_t d = 1; d * d <= m; ++d) {
        if (m % d) continue;
        total += pow(BigInt(d), v);
        const std::uint64_t e = m / d;
        if (e != d) total += pow(BigInt(e), v);
    }
    return total;
}

BigInt sigma_from_factorization(unsigned v, const Factorization& f) {
    BigInt total = 1;
    for (const auto& [p, e] : f.factors) {
        BigInt pv = pow(p, v), term = 1, sum = 1;
        for (unsigned i = 0; i < e; ++i) {
            term *= pv;
            sum += term;
        }
        total *= sum;
    }
    return total;
}

int kronecker(const BigInt& a, const BigInt& b) {
    return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}

std::optional<BigInt> integer_root(const BigInt& n, unsigned k) {
    if (n < 0 || k == 0) return std::nullopt;
    BigInt r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) return r;
    return std::nullopt;
}

std::optional<BigInt> signed_integer_root(const BigInt& n, unsigned k) {
    if (n >= 0) return integer_root(n, k);
    if (k % 2 == 0) return std::nullopt;
    auto r = integer_root(BigInt(-n), k);
    if (!r) return std::nullopt;
    return BigInt(-*r);
}

std::vector<BigInt> divisors(const Factorization& f) {
    std::vector<BigInt> out{1};
    for (const auto& [p, e] : f.factors) {
        const std::size_t base = out.size();
        BigInt pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SquarefreeSplit squarefree_split(const BigInt& D) {
    if (D == 0) throw std::invalid_argument("squarefree_split: D must be nonzero");
    SquarefreeSplit s{D < 0 ? BigInt(-1) : BigInt(1), 1};
    for (const auto& [p, e] : factor(D).factors) {
        s.q *= pow(p, e / 2);
        if (e % 2) s.d *= p;
    }
    return s;
}

}  // namespace oddtau
