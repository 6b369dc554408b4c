#ifndef SURVIVAL_ANALYSIS_HPP
#define SURVIVAL_ANALYSIS_HPP

#include <vector>

#include "survival/dynamics.hpp"
#include "survival/types.hpp"

namespace survival {

struct CollapseDip {
    double t_dip = 0.0;
    double depth = 0.0;  // envelope P00 at t_dip divided by dip P00, > 1
    // Antiphase defect at the dip, wrap(arg psi_s - arg psi_r - pi): the
    // destructive-interference condition itself. In (-pi, pi].
    double phase_residual = 0.0;
    // Same condition expressed through the band-edge model phase
    // phi(t) = arctan(beta sin(Bt) / (1 - beta cos(Bt))); diagnostic only,
    // the model neglects the van Hove line.
    double phase_residual_beta_model = 0.0;
};

struct TsEstimate {
    double closed_form = 0.0;  // hbar pi N1(eps0)
    double numerical = 0.0;    // argmin_t | short_time - |a|^2 exp(-2 Gamma0 t) |
};

struct ExpFit {
    double rate = 0.0;       // decay rate of P00 (≈ 2 Gamma0)
    double prefactor = 0.0;  // ≈ |a|^2
    double residual_rms = 0.0;
    int points = 0;
};

struct PowerFit {
    double exponent = 0.0;
    double log_amplitude = 0.0;
    double residual_rms = 0.0;
    int points = 0;
};

struct ModulationFit {
    // component at the full bandwidth B (the band-edge beat)
    double freq = 0.0;
    double amplitude = 0.0;  // in log P00
    // component at B/2 (edge-to-van-Hove beat, present for the 2D lattice)
    double freq_half = 0.0;
    double amplitude_half = 0.0;
};

struct RegimeReport {
    double t_s = 0.0;            // closed form
    double t_s_numerical = 0.0;
    double t_r = 0.0;            // first |psi_s| = |psi_r| crossing
    double fitted_rate = 0.0;
    double fitted_prefactor = 0.0;
    double tail_exponent = 0.0;
    double modulation_freq = 0.0;       // fitted component nearest B
    double modulation_freq_half = 0.0;  // fitted component nearest B/2
    std::vector<CollapseDip> dips;
};

// Spreading-time estimate: closed form hbar pi N1(eps0) plus the
// minimal-distance argmin between the quadratic law and the SC-FGR
// exponential. The two must agree within a factor of two.
TsEstimate estimate_ts(const AdatomSpec& spec, const Resonance& res);

// Smallest t with |psi_s(t)| = |psi_r(t)|, found by bracketing on the series
// grid and bisecting with fresh evaluations.
double estimate_tr(const DecomposedEvaluator& ev, const SurvivalSeries& series);

// All |psi_s| = |psi_r| crossings bracketed by the series grid.
std::vector<double> tr_crossings(const DecomposedEvaluator& ev, const SurvivalSeries& series);

// Local minima of P00 at least 10x below the envelope max(|psi_s|^2,
// |psi_r|^2), each refined by golden-section search on fresh evaluations.
std::vector<CollapseDip> detect_collapse(const DecomposedEvaluator& ev,
                                         const SurvivalSeries& series);

// Phase analysis of one dip; fills both residual fields and returns the
// antiphase defect. Also verifies the slow-return-phase inequality chain
// (eps_r - eps_L) >> Gamma0 > 2 pi / t_R, reported through the pointer.
double check_collapse_phase(const DecomposedEvaluator& ev, const AdatomSpec& spec,
                            CollapseDip& dip, bool* inequality_chain_holds = nullptr);

// Least squares of log P00 against t (exponential) or log t (power law).
// Points more than 10x below the rolling median are masked as dips first.
ExpFit fit_exponential(const SurvivalSeries& series, double t_lo, double t_hi);
PowerFit fit_power_law(const SurvivalSeries& series, double t_lo, double t_hi);

// Two-harmonic fit of the tail modulation on top of the power law; series
// must sample the tail densely (step well below 2 pi / B).
ModulationFit fit_modulation(const SurvivalSeries& series, double bandwidth);

}  // namespace survival

#endif
