#pragma once

#include <string>

#include "plim/plmap.hpp"

namespace plim {

// Map file format:
//   {"domain": ["0","72"], "dots": [["0","32"], ["20","52"], ...]}
// Every number is a decimal-integer or "p/q" string; anything else
// (floats, exponents) is rejected with the offending dot named.
PLMap plmap_from_json(const std::string& text);
PLMap load_plmap(const std::string& path);

std::string plmap_to_json(const PLMap& f);
void save_plmap(const PLMap& f, const std::string& path);

}  // namespace plim
