#include "oddtau/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace oddtau {

std::string to_string(const BigInt& v) { return v.get_str(10); }

BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty() || s == "-") throw std::invalid_argument("empty integer literal");
    for (std::size_t i = (s.front() == '-' ? 1 : 0); i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("not an integer: " + std::string(text));
    }
    BigInt out;
    if (out.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: " + std::string(text));
    return out;
}

std::int64_t to_int64(const BigInt& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + to_string(v));
    return v.get_si();
}

std::uint64_t to_uint64(const BigInt& v) {
    if (!v.fits_ulong_p()) throw std::overflow_error("integer does not fit in unsigned 64 bits: " + to_string(v));
    return v.get_ui();
}

BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

BigInt pow(long base, unsigned long exponent) { return pow(BigInt(base), exponent); }

std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) {
    return mpz_fdiv_ui(v.get_mpz_t(), m);
}

std::uint64_t wrap_u64(const BigInt& v) {
    BigInt r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), 64);
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, r.get_mpz_t());
    return out;
}

long double to_long_double(const BigInt& v) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
}

}  // namespace oddtau
