#ifndef SURVIVAL_ELLIPTIC_HPP
#define SURVIVAL_ELLIPTIC_HPP

#include "survival/types.hpp"

namespace survival {

// Complete elliptic integral of the first kind in the parameter convention,
//   K(m) = \int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta),
// continued to complex m with the principal branch cut along m in [1, inf).
// Evaluated by the arithmetic-geometric mean with the branch rule
// Re(g/a) >= 0 at every step; relative accuracy ~1e-15.
cplx elliptic_k(cplx m);

// Same, with the complement mc = 1 - m supplied by the caller. Use this when
// m is close to 1 and the complement is known in a cancellation-free form;
// the AGM starts from sqrt(mc) so no accuracy is lost.
cplx elliptic_k_mc(cplx m, cplx mc);

}  // namespace survival

#endif
