#ifndef WEYLSCOPE_SVG_HPP
#define WEYLSCOPE_SVG_HPP

#include "weylscope/enclosures.hpp"

#include <iosfwd>
#include <vector>

namespace weylscope::io {

/// Writes the boundary curves of the regions as SVG paths inside the given
/// viewport rectangle.  Mathematical coordinates are mapped y-up (the
/// transform is recorded in the header comment); curves are sampled at
/// 1e-3 of the viewport extent.
void write_regions_svg(std::ostream& os,
                       const std::vector<enclosures::EnclosureRegion>& regions,
                       Complex viewport_lo, Complex viewport_hi,
                       double width_px = 800.0);

} // namespace weylscope::io

#endif
