#pragma once

#include "m0a/family.hpp"

#include <string>
#include <string_view>

namespace m0a {

// JSON family file:
//   {"n": 5, "m": 0, "k": 1, "mode": "concrete",
//    "steps": [{"sigma": [1, 5], "tau": []}, ...],
//    "final_e_sigma": [0, 0, 0, 0, 2], "final_e_tau": []}
// Abstract steps are {"r1": 3, "r2": 0}. Errors name the offending field,
// e.g. "steps[2].sigma[0]". Structural checks only; validate_family does the rest.
FamilyModel parse_family(std::string_view text);

std::string format_family(const FamilyModel& family);

}  // namespace m0a
