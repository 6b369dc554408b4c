#ifndef SURVIVAL_RESONANCE_HPP
#define SURVIVAL_RESONANCE_HPP

#include <optional>

#include "survival/substrate.hpp"
#include "survival/types.hpp"

namespace survival {

// Self-energy Sigma(z) = v0^2 G_11(z) on the requested sheet.
cplx self_energy(cplx z, const AdatomSpec& spec, Sheet sheet = Sheet::Physical);

// Add-atom Green function via the Dyson closure,
//   G00(z) = 1 / (z - eps0 - Sigma(z)).
cplx g00(cplx z, const AdatomSpec& spec, Sheet sheet = Sheet::Physical);

// LDoS at the add atom on the real axis (retarded limit). Zero outside the
// band when no bound state is present.
double ldos0(double e, const AdatomSpec& spec);

// Analytic continuation of the LDoS into the lower half plane,
//   N0(z) = (G00_I(z) - G00_II(z)) / (2 pi i),
// restricting to ldos0 on the real axis. For the square substrate the
// continuation inherits a branch line below the band center; evaluation picks
// the branch by the sign of Re z - center.
cplx ldos0_continued(cplx z, const AdatomSpec& spec);

// Pole of D(z) = z - eps0 - Sigma_II(z) on the real axis outside the band,
// i.e. a bound state. Detected by a sign-change scan; returns its energy.
std::optional<double> detect_bound_state(const AdatomSpec& spec);

// First-pole (Fermi golden rule) approximation: Sigma evaluated at eps0+i0.
// Returns {epsilon_r, gamma0}.
struct FirstPole {
    double epsilon_r;
    double gamma0;
};
FirstPole first_pole_approx(const AdatomSpec& spec);

// Newton solve for the second-sheet pole z* = eps_r - i Gamma0, with residue
// prefactor 1/D'(z*) and beta from the pole position and band edges. Seeds
// from the first-pole approximation, falling back to a coarse scan of the
// strip if Newton stalls.
Resonance find_pole(const AdatomSpec& spec);

// n-th moment of N0 (n <= 4) about `about`, by singularity-splitting
// adaptive quadrature over the band. Fails loudly on bound states.
double spectral_moment(const AdatomSpec& spec, int n, double about = 0.0);

}  // namespace survival

#endif
