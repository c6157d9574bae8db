#include "oddtau/modforms.hpp"

#include "oddtau/arith.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oddtau::modforms {

bool is_supported_weight(int weight) {
    return std::find(kWeights.begin(), kWeights.end(), weight) != kWeights.end();
}

void require_supported_weight(int weight) {
    if (!is_supported_weight(weight)) {
        throw std::invalid_argument("unsupported weight " + std::to_string(weight) +
                                    " (expected one of 12, 16, 18, 20, 22, 26)");
    }
}

Series truncated_product(const Series& a, const Series& b, std::size_t len) {
    Series c(len);
    const std::size_t na = std::min(a.size(), len);
    for (std::size_t i = 0; i < na; ++i) {
        if (sgn(a[i]) == 0) continue;
        const std::size_t nb = std::min(b.size(), len - i);
        mpz_srcptr ai = a[i].get_mpz_t();
        for (std::size_t j = 0; j < nb; ++j) {
            mpz_addmul(c[i + j].get_mpz_t(), ai, b[j].get_mpz_t());
        }
    }
    return c;
}

Series truncated_square(const Series& a, std::size_t len) {
    Series c(len);
    const std::size_t na = std::min(a.size(), len);
    for (std::size_t i = 0; i < na; ++i) {
        if (sgn(a[i]) == 0) continue;
        mpz_srcptr ai = a[i].get_mpz_t();
        for (std::size_t j = i + 1; j < na && i + j < len; ++j) {
            mpz_addmul(c[i + j].get_mpz_t(), ai, a[j].get_mpz_t());
        }
    }
    for (auto& v : c) v *= 2;
    for (std::size_t i = 0; i < na && 2 * i < len; ++i) {
        mpz_addmul(c[2 * i].get_mpz_t(), a[i].get_mpz_t(), a[i].get_mpz_t());
    }
    return c;
}

Series euler_product(std::size_t len) {
    Series s(len);
    // sum over k in Z of (-1)^k q^{k(3k-1)/2}
    for (std::size_t k = 0;; ++k) {
        const std::size_t lower = k * (3 * k - 1) / 2;
        const std::size_t upper = k * (3 * k + 1) / 2;
        if (lower >= len) break;
        const long sign = (k % 2 == 0) ? 1 : -1;
        s[lower] = sign;
        if (k > 0 && upper < len) s[upper] = sign;
    }
    return s;
}

namespace {

std::vector<unsigned __int128> sigma_table_u128(unsigned v, std::size_t N) {
    std::vector<unsigned __int128> t(N + 1, 0);
    for (std::size_t d = 1; d <= N; ++d) {
        unsigned __int128 dv = 1;
        for (unsigned i = 0; i < v; ++i) dv *= d;
        for (std::size_t m = d; m <= N; m += d) t[m] += dv;
    }
    return t;
}

BigInt from_u128(unsigned __int128 x) {
    BigInt hi(static_cast<unsigned long>(x >> 64));
    BigInt lo(static_cast<unsigned long>(x));
    return (hi << 64) + lo;
}

Series eisenstein(unsigned v, long scale, std::size_t len) {
    Series s(len);
    if (len == 0) return s;
    s[0] = 1;
    const auto sig = sigma_table_u128(v, len - 1);
    for (std::size_t n = 1; n < len; ++n) s[n] = scale * from_u128(sig[n]);
    return s;
}

}  // namespace

Series eisenstein_e4(std::size_t len) { return eisenstein(3, 240, len); }
Series eisenstein_e6(std::size_t len) { return eisenstein(5, -504, len); }

const BigInt& CoefficientSeries::at(std::size_t n) const {
    if (n < 1 || n > precision) {
        throw std::out_of_range("coefficient index " + std::to_string(n) + " outside [1, " +
                                std::to_string(precision) + "]");
    }
    return coeffs[n];
}

CoefficientSeries delta_series(std::size_t N) {
    if (N == 0) throw std::invalid_argument("delta_series: precision must be positive");
    const Series e = euler_product(N);
    const Series e2 = truncated_square(e, N);
    const Series e4 = truncated_square(e2, N);
    const Series e8 = truncated_square(e4, N);
    const Series e16 = truncated_square(e8, N);
    const Series e24 = truncated_product(e16, e8, N);
    CoefficientSeries out{12, N, std::vector<BigInt>(N + 1)};
    for (std::size_t n = 1; n <= N; ++n) out.coeffs[n] = e24[n - 1];
    return out;
}

CoefficientSeries eigenform_series(int weight, std::size_t N) {
    require_supported_weight(weight);
    CoefficientSeries delta = delta_series(N);
    if (weight == 12) return delta;

    const std::size_t len = N + 1;
    Series factor;
    switch (weight) {
        case 16: factor = eisenstein_e4(len); break;
        case 18: factor = eisenstein_e6(len); break;
        case 20: factor = truncated_square(eisenstein_e4(len), len); break;
        case 22: factor = truncated_product(eisenstein_e4(len), eisenstein_e6(len), len); break;
        case 26:
            factor = truncated_product(truncated_square(eisenstein_e4(len), len), eisenstein_e6(len), len);
            break;
    }
    const Series product = truncated_product(delta.coeffs, factor, len);
    CoefficientSeries out{weight, N, product};
    out.coeffs[0] = 0;
    return out;
}

const std::vector<ExceptionalPrime>& exceptional_primes() {
    static const std::vector<ExceptionalPrime> primes{
        {12, 691}, {16, 3617}, {18, 43867}, {20, 283}, {20, 617}, {22, 131}, {22, 593}, {26, 657931},
    };
    return primes;
}

std::vector<std::uint64_t> exceptional_primes_for(int weight) {
    std::vector<std::uint64_t> out;
    for (const auto& e : exceptional_primes()) {
        if (e.weight == weight) out.push_back(e.ell);
    }
    return out;
}

bool CongruenceReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CongruenceCheck& c) { return c.passed(); });
}

std::vector<std::uint64_t> sigma_mod_table(unsigned v, std::size_t N, std::uint64_t m) {
    std::vector<std::uint64_t> t(N + 1, 0);
    for (std::size_t d = 1; d <= N; ++d) {
        const std::uint64_t dv = powmod_u64(d % m, v, m);
        for (std::size_t n = d; n <= N; n += d) {
            t[n] += dv;
            if (t[n] >= m) t[n] -= m;
        }
    }
    return t;
}

CongruenceReport verify_congruences(const CoefficientSeries& series) {
    CongruenceReport report{series.weight, series.precision, {}};
    const std::size_t N = series.precision;

    auto run = [&](std::string name, std::uint64_t m, auto&& expected, bool coprime_only) {
        CongruenceCheck check{std::move(name), m, 0, {}};
        for (std::size_t n = 1; n <= N; ++n) {
            if (coprime_only && n % m == 0) continue;
            ++check.checked;
            if (mod_u64(series.coeffs[n], m) != expected(n)) check.failures.push_back(n);
        }
        report.checks.push_back(std::move(check));
    };

    if (series.weight == 12) {
        const auto s1_9 = sigma_mod_table(1, N, 9);
        const auto s1_5 = sigma_mod_table(1, N, 5);
        const auto s3_7 = sigma_mod_table(3, N, 7);
        const auto s11 = sigma_mod_table(11, N, 691);
        run("tau(n) = n^2 sigma_1(n) mod 9", 9,
            [&](std::size_t n) { return mulmod_u64(n * n % 9, s1_9[n], 9); }, false);
        run("tau(n) = n sigma_1(n) mod 5", 5, [&](std::size_t n) { return mulmod_u64(n % 5, s1_5[n], 5); }, false);
        run("tau(n) = n sigma_3(n) mod 7", 7, [&](std::size_t n) { return mulmod_u64(n % 7, s3_7[n], 7); }, false);
        run("tau(n) = sigma_11(n) mod 691", 691, [&](std::size_t n) { return s11[n]; }, false);
        return report;
    }
    for (std::uint64_t ell : exceptional_primes_for(series.weight)) {
        const auto s = sigma_mod_table(series.weight - 1, N, ell);
        run("tau_" + std::to_string(series.weight) + "(n) = sigma_" + std::to_string(series.weight - 1) +
                "(n) mod " + std::to_string(ell),
            ell, [&](std::size_t n) { return s[n]; }, true);
    }
    return report;
}

std::vector<std::size_t> scan_for_value(const CoefficientSeries& series, const BigInt& c) {
    std::vector<std::size_t> hits;
    for (std::size_t n = 1; n <= series.precision; ++n) {
        if (series.coeffs[n] == c) hits.push_back(n);
    }
    return hits;
}

std::string serialize_cache(const CoefficientSeries& series) {
    std::string out = "TAUCACHE v1 " + std::to_string(series.weight) + " " + std::to_string(series.precision) + "\n";
    for (std::size_t n = 1; n <= series.precision; ++n) {
        out += series.coeffs[n].get_str(10);
        out += '\n';
    }
    return out;
}

CoefficientSeries parse_cache(const std::string& text) {
    std::istringstream in(text);
    std::string magic, version;
    int weight = 0;
    std::size_t N = 0;
    if (!(in >> magic >> version >> weight >> N) || magic != "TAUCACHE" || version != "v1") {
        throw std::runtime_error("bad coefficient cache header");
    }
    require_supported_weight(weight);
    CoefficientSeries s{weight, N, std::vector<BigInt>(N + 1)};
    std::string token;
    for (std::size_t n = 1; n <= N; ++n) {
        if (!(in >> token)) throw std::runtime_error("truncated coefficient cache");
        s.coeffs[n] = parse_bigint(token);
    }
    if (in >> token) throw std::runtime_error("trailing data in coefficient cache");
    return s;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, int weight, std::size_t N) {
    return dir / ("tau" + std::to_string(weight) + "_" + std::to_string(N) + ".taucache");
}

void write_cache(const std::filesystem::path& file, const CoefficientSeries& series) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        const std::string text = serialize_cache(series);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

std::optional<CoefficientSeries> read_cache(const std::filesystem::path& file, int weight, std::size_t N) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        CoefficientSeries s = parse_cache(buf.str());
        if (s.weight != weight || s.precision != N) return std::nullopt;
        return s;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

CoefficientSeries cached_eigenform_series(const std::filesystem::path& dir, int weight, std::size_t N) {
    const auto file = cache_path(dir, weight, N);
    if (auto hit = read_cache(file, weight, N)) return *hit;
    CoefficientSeries s = eigenform_series(weight, N);
    write_cache(file, s);
    return s;
}

}  // namespace oddtau::modforms
