#pragma once

#include "m0a/divisor_class.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace m0a {

// Flat record, one "key=value" per line:
//   n=5  m=0  k=2  psi_sigma=3/4  psi_tau[1]=1  delta_s=1/2  delta=-1
//   boundary[3,0]=0
// Boundary entries are written in key order, including explicit zeros.
std::string format_class(const DivisorClass& cls);
std::string format_class_json(const DivisorClass& cls);

// Accepts either format (JSON when the first non-blank character is '{').
// Throws Error(kParse) on unknown keys, missing ambient data or malformed
// rationals, and Error(kInvalidArgument) on inadmissible boundary keys.
DivisorClass parse_class(std::string_view text);

}  // namespace m0a
