#pragma once

// The bundled JSON files under data/, compiled in so the library has no runtime file dependency.

#include <string_view>

namespace oddtau::data {

std::string_view table1_json();
std::string_view known_values_json();
std::string_view theorems_json();

}  // namespace oddtau::data
