#ifndef WEYLSCOPE_GRID_HPP
#define WEYLSCOPE_GRID_HPP

#include "weylscope/types.hpp"

#include <string>
#include <vector>

namespace weylscope {

/// Grid specifications accepted on the command line:
///   "re=a:b:n,im=c:d:m"      cartesian product, re outer / im inner
///   "r=r0:r1:n@psi"          ray from the origin at angle psi (radians),
///                            linear in r; "r=log:r0:r1:n@psi" log-spaced.
/// Several ray specs may be joined with ';'.
std::vector<Complex> parse_grid(const std::string& spec);

} // namespace weylscope

#endif
