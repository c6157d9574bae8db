#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace oddtau {

using BigInt = mpz_class;

std::string to_string(const BigInt& v);

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
BigInt parse_bigint(std::string_view text);

/// Throws std::overflow_error when v does not fit.
std::int64_t to_int64(const BigInt& v);
std::uint64_t to_uint64(const BigInt& v);

inline bool fits_int64(const BigInt& v) { return v.fits_slong_p(); }

BigInt pow(const BigInt& base, unsigned long exponent);
BigInt pow(long base, unsigned long exponent);

inline int sign(const BigInt& v) { return sgn(v); }

/// Non-negative remainder of v modulo m (m > 0).
std::uint64_t mod_u64(const BigInt& v, std::uint64_t m);

/// v mod 2^64 (two's complement wrap of the low 64 bits).
std::uint64_t wrap_u64(const BigInt& v);

/// Nearest long double; exponent range is wide enough for every value used here.
long double to_long_double(const BigInt& v);

}  // namespace oddtau
