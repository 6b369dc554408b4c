#ifndef SURVIVAL_LATTICE_ORACLE_HPP
#define SURVIVAL_LATTICE_ORACLE_HPP

#include <vector>

#include "survival/types.hpp"

namespace survival {

// Finite L x L square lattice with open boundaries plus the add atom,
// ground truth for the Green-function machinery. Substrate sites carry the
// 4V on-site energy and -V nearest-neighbor hoppings; the add atom couples
// to attach with -v0.
struct FiniteLattice {
    int size = 400;
    AdatomSpec spec{};
    int attach_x = 200, attach_y = 200;

    static FiniteLattice centered(int L, const AdatomSpec& spec) {
        return {L, spec, L / 2, L / 2};
    }

    int nsites() const { return size * size + 1; }
    int adatom_index() const { return size * size; }

    void validate() const;
};

// Validity window before boundary reflections reach the add atom:
// 0.8 * (hops to leave the lattice) / v_max, with v_max = 4 V a / hbar.
double reflection_time(const FiniteLattice& lat);

// L needed for a centered lattice to cover times up to t.
int required_size(const AdatomSpec& spec, double t);

struct PropagateOptions {
    double tail_tol = 1e-14;  // Chebyshev-Bessel coefficient tail bound
};

// Survival amplitude <0| exp(-iHt) |0> at each time via Chebyshev expansion
// of the evolution operator (spectral bounds from Gershgorin circles with a
// 5% margin). Refuses times beyond the reflection window.
SurvivalSeries propagate(const FiniteLattice& lat, const std::vector<double>& times,
                         const PropagateOptions& opt = {});

// Full state at a single time; used by the norm-conservation checks.
std::vector<cplx> propagate_state(const FiniteLattice& lat, double t,
                                  const PropagateOptions& opt = {});

struct EigenHistogram {
    std::vector<double> edges;    // bins+1 bin edges
    std::vector<double> weight;   // |<0|psi_k>|^2 summed per bin
    double total = 0.0;
};

// Dense-diagonalization LDoS check; L <= 80.
EigenHistogram eigen_histogram(const FiniteLattice& lat, int bins);

}  // namespace survival

#endif
