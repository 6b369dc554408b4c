#ifndef SURVIVAL_DYNAMICS_HPP
#define SURVIVAL_DYNAMICS_HPP

#include <memory>
#include <vector>

#include "survival/resonance.hpp"
#include "survival/types.hpp"

namespace survival {

struct DynamicsOptions {
    // absolute tolerance on the amplitude; the default keeps |amplitude|^2
    // within the 1e-9 unitarity headroom of SurvivalSeries
    double quadrature_tol = 3e-10;
};

// ---------------------------------------------------------------------------
// Return amplitude: the band integral deformed into the lower half plane
// picks up, besides the pole, one vertical line per non-analytic point of the
// continued LDoS: both band edges and (for the square lattice) the van Hove
// line below the band center. Each line contributes
//   -i exp(-i x0 t) \int_0^inf exp(-eps' t) jump(x0 - i eps') deps',
// where jump is the discontinuity of the continued N0 across the line.
//
// The jumps are resolved once on graded Gauss-Legendre panels (sqrt-mapped
// near eps' = 0 where the edge behavior is least smooth, geometric further
// out, each panel bisected until node-doubling agrees); evaluation at any t
// is then a weighted sum with the exp(-eps' t) factor, truncated where the
// factor is below 1e-20 of its peak.
class ReturnAmplitude {
  public:
    ReturnAmplitude(const AdatomSpec& spec, double min_time, const DynamicsOptions& opt = {});

    // sum over all lines at time t
    cplx operator()(double t) const;

    // individual line, for diagnostics; index into line_positions()
    cplx line(std::size_t i, double t) const;
    const std::vector<double>& line_positions() const { return positions_; }

  private:
    struct LineData {
        double x0;
        std::vector<double> eps, w;  // nodes and weights (eps' space)
        std::vector<cplx> jump;
    };
    std::vector<LineData> lines_;
    std::vector<double> positions_;
};

// Pure-survival + return evaluator for one (spec, resonance) pair.
class DecomposedEvaluator {
  public:
    DecomposedEvaluator(const AdatomSpec& spec, const Resonance& res, double min_time,
                        const DynamicsOptions& opt = {});

    cplx psi_s(double t) const;
    cplx psi_r(double t) const { return ret_(t); }
    double p00(double t) const { return std::norm(psi_s(t) + psi_r(t)); }

    const Resonance& resonance() const { return res_; }

  private:
    Resonance res_;
    ReturnAmplitude ret_;
};

// ---------------------------------------------------------------------------
// The four methods. All validate against bound states where the contour
// argument requires it.

// Fourier transform of the LDoS over the spectral support (oscillatory-aware
// panel quadrature; Filon-type for large phase).
SurvivalSeries survival_direct(const AdatomSpec& spec, const std::vector<double>& times,
                               const DynamicsOptions& opt = {});

// Contour decomposition psi_s + psi_r.
SurvivalSeries survival_decomposed(const AdatomSpec& spec, const Resonance& res,
                                   const std::vector<double>& times,
                                   const DynamicsOptions& opt = {});

// Quadratic onset P = 1 - m2 t^2 (clamped at zero far past its validity).
// m2 defaults to the local second moment v0^2 about eps0; pass a moment to
// override (e.g. the eps_r-centered one).
SurvivalSeries short_time(const AdatomSpec& spec, const std::vector<double>& times,
                          double m2_override = -1.0);

// Band-edge asymptote [1 + beta^2 - 2 beta cos(B t)] |I_L(t)|^2.
SurvivalSeries long_time_asymptote(const AdatomSpec& spec, const Resonance& res,
                                   const std::vector<double>& times,
                                   const DynamicsOptions& opt = {});

}  // namespace survival

#endif
