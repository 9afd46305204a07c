#pragma once

// Parsing of tautological polynomial literals, e.g.
//   "c2.w"  "c1.p1*c1.p2"  "3/2*c2.1^2 - c1.1"
// Generators are written c<i>.<basis> with basis one of 1, p1..p2g, w.

#include "coha/tautalg.hpp"

#include <string>

namespace coha {

TautGen parse_gen(const std::string& token, const CurveCohomology& X,
                  const std::string& arg_name);

HPoly parse_hpoly(const std::string& text, long long genus, const std::string& arg_name);

} // namespace coha
