#ifndef SURVIVAL_TYPES_HPP
#define SURVIVAL_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace survival {

using cplx = std::complex<double>;

// All energies are in units of the substrate hopping V, times in hbar/V.

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when the adatom Green function has a real pole outside the band.
// The pole/contour machinery assumes a single in-band resonance, so runs
// must abort (or branch) on this.
struct BoundStateError : std::runtime_error {
    double energy;
    explicit BoundStateError(double e)
        : std::runtime_error("bound state present at energy " + std::to_string(e) +
                             " (outside the band); contour decomposition needs an extra residue term"),
          energy(e) {}
};

enum class SubstrateKind { Square2D, SemiInfiniteChain };

enum class Sheet { Physical, Second };

struct SubstrateSpec {
    SubstrateKind kind = SubstrateKind::Square2D;
    double hopping = 1.0;  // V > 0
    double onsite = 4.0;   // 4V for Square2D (band [0, 8V]); 0 for the chain unless configured

    static SubstrateSpec square2d(double v = 1.0) { return {SubstrateKind::Square2D, v, 4.0 * v}; }
    static SubstrateSpec chain(double v = 1.0, double onsite = 0.0) {
        return {SubstrateKind::SemiInfiniteChain, v, onsite};
    }

    double half_bandwidth() const {
        return kind == SubstrateKind::Square2D ? 4.0 * hopping : 2.0 * hopping;
    }
    double band_min() const { return onsite - half_bandwidth(); }
    double band_max() const { return onsite + half_bandwidth(); }
    double bandwidth() const { return 2.0 * half_bandwidth(); }
    bool in_band(double e) const { return e > band_min() && e < band_max(); }

    // Interior van Hove energies: branch points of the continued LDoS besides
    // the band edges. The 2D square lattice has the logarithmic one at band
    // center; the chain has none.
    std::vector<double> interior_van_hove() const {
        if (kind == SubstrateKind::Square2D) return {onsite};
        return {};
    }

    void validate() const {
        if (!(hopping > 0.0)) throw DomainError("substrate hopping must be positive");
        if (!std::isfinite(hopping) || !std::isfinite(onsite))
            throw DomainError("substrate parameters must be finite");
    }
};

struct AdatomSpec {
    double epsilon0 = 2.0;  // add-atom site energy
    double v0 = 0.4;        // add-atom coupling, >= 0
    SubstrateSpec substrate = SubstrateSpec::square2d();

    void validate() const {
        substrate.validate();
        if (!std::isfinite(epsilon0) || !std::isfinite(v0))
            throw DomainError("adatom parameters must be finite");
        if (v0 < 0.0) throw DomainError("v0 must be non-negative");
        if (v0 >= substrate.hopping)
            throw DomainError("weak-coupling regime requires v0 < substrate hopping");
    }
};

// Second-sheet pole and derived line-shape data.
//
// residue_a is the pre-exponential constant of the pure-survival term,
//   psi_s(t) = residue_a * exp(-i (epsilon_r - i gamma0) t),
// i.e. 1/D'(z*) with D(z) = z - eps0 - Sigma_II(z). It relates to the
// 2*pi*i residue of the continued LDoS by a_ldos = 2*pi*i * residue_a;
// this normalization is the one fixed by psi_s(0+) + psi_r(0+) = 1 and
// satisfies |residue_a|^2 >~ 1 at weak coupling.
struct Resonance {
    double epsilon_r = 0.0;
    double gamma0 = 0.0;   // > 0
    double delta0 = 0.0;   // epsilon_r - epsilon0
    cplx residue_a{1.0, 0.0};
    double beta = 0.0;     // relative Lorentzian weight of the two band edges
    double pole_residual = 0.0;  // |D(z*)| after the Newton solve

    cplx pole() const { return {epsilon_r, -gamma0}; }

    static double beta_from(double eps_r, double g0, double band_lo, double band_hi) {
        const double dl = eps_r - band_lo, du = band_hi - eps_r;
        return (dl * dl + g0 * g0) / (du * du + g0 * g0);
    }
};

enum class Method { Direct, Decomposed, ShortTime, LongTime, Oracle };

std::string method_name(Method m);

struct SurvivalSeries {
    std::vector<double> times;
    std::vector<cplx> psi_s;  // pure-survival amplitude (Direct stores the full amplitude here)
    std::vector<cplx> psi_r;  // return amplitude (zero for methods without a decomposition)
    std::vector<double> p00;
    Method method = Method::Direct;

    std::size_t size() const { return times.size(); }

    void validate() const;
};

}  // namespace survival

#endif
