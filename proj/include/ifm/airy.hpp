#ifndef IFM_AIRY_HPP
#define IFM_AIRY_HPP

#include <vector>

namespace ifm {

// Airy function of the first kind, Ai(u).
//
// Evaluated in extended (binary128) precision internally: a Maclaurin
// series for |u| <= 7.5 and the standard large-argument expansions
// beyond, so the double-precision result is reliable to ~1e-13 relative
// over |u| <= 20 (relative to the local oscillation envelope on the
// negative axis).
double airy_ai(double u);

// First n zeros of Ai on the negative real axis, most positive first:
// {-2.33810741..., -4.08794944..., ...}.  n >= 1.
std::vector<double> airy_zeros(int n);

} // namespace ifm

#endif // IFM_AIRY_HPP
