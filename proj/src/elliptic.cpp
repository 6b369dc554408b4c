#include "survival/elliptic.hpp"

#include <cmath>
#include <numbers>

namespace survival {

cplx elliptic_k_mc(cplx m, cplx mc) {
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
        throw DomainError("elliptic_k: nonfinite parameter");
    if (mc == cplx(0.0, 0.0))
        throw SingularityError("elliptic_k: logarithmic singularity at m = 1");

    cplx a = 1.0;
    cplx g = std::sqrt(mc);
    if ((g / a).real() < 0.0) g = -g;
    for (int i = 0; i < 80; ++i) {
        const cplx an = 0.5 * (a + g);
        cplx gn = std::sqrt(a * g);
        // keep the AGM on the principal branch: |a-g| <= |a+g|
        if ((gn / an).real() < 0.0) gn = -gn;
        a = an;
        g = gn;
        if (std::abs(a - g) <= 1e-17 * std::abs(a)) break;
    }
    return std::numbers::pi / (2.0 * a);
}

cplx elliptic_k(cplx m) { return elliptic_k_mc(m, 1.0 - m); }

}  // namespace survival
