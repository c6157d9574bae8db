#pragma once

// BigInt <-> JSON: numbers when they fit in 64 bits, decimal strings otherwise.

#include "oddtau/bigint.hpp"

#include "json.hpp"

namespace oddtau::detail {

inline nlohmann::json big_to_json(const BigInt& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str(10);
}

inline BigInt big_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    if (j.is_number_unsigned()) return BigInt(j.get<unsigned long>());
    return BigInt(j.get<long>());
}

}  // namespace oddtau::detail
