#ifndef SURVIVAL_SUBSTRATE_HPP
#define SURVIVAL_SUBSTRATE_HPP

#include "survival/types.hpp"

namespace survival {

// Retarded surface Green function of the semi-infinite chain,
//   G(z) = (zeta -/+ w)/(2 V^2),  w = zeta sqrt(1 - (2V/zeta)^2),  zeta = z - onsite.
// Physical sheet: analytic off the band, G -> 1/z at infinity, Im G <= 0 on
// the real axis from above. Second sheet: the other branch of the root,
// continuing the physical sheet through the band cut from above.
cplx chain_surface_green(cplx z, const SubstrateSpec& spec, Sheet sheet = Sheet::Physical);

// Diagonal Green function of the periodic 2D square lattice,
//   G(z) = (2/(pi zeta)) K((4V/zeta)^2),  zeta = z - onsite,
// with K the complete elliptic integral in the parameter convention. Real
// in-band arguments are treated as the retarded limit from above. The second
// sheet is G_I - 2 pi i rho_c with rho_c the continued density; it is defined
// for Im z <= 0 and carries branch lines below both band edges and below the
// band-center van Hove point, so each half of the band continues to its own
// side of the center line.
cplx square_lattice_green(cplx z, const SubstrateSpec& spec, Sheet sheet = Sheet::Physical);

// Dispatch on spec.kind.
cplx substrate_green(cplx z, const SubstrateSpec& spec, Sheet sheet = Sheet::Physical);

// LDoS at a surface/bulk site: -(1/pi) Im of the physical-sheet Green
// function; zero outside the band. Exact band center of the square lattice
// is a logarithmic singularity and throws.
double substrate_ldos(double e, const SubstrateSpec& spec);

// Analytic continuation rho_c(z) of the LDoS off the real axis.  For the
// square lattice the principal branch has its cut on the vertical line
// through the band center; callers on that line must pick a side.
cplx substrate_ldos_continued(cplx z, const SubstrateSpec& spec);

// Brute-force Brillouin-zone sum (1/grid^2) sum_k 1/(z - eps(k)) for the
// square lattice; validation oracle for square_lattice_green. Requires
// Im z != 0 and grid >= 64.
cplx bz_oracle_green(cplx z, const SubstrateSpec& spec, int grid);

// Depth-truncated continued fraction for the chain surface Green function;
// analytic oracle. Converges for Im z > 0 off the real axis.
cplx chain_continued_fraction_green(cplx z, const SubstrateSpec& spec, int depth);

}  // namespace survival

#endif
