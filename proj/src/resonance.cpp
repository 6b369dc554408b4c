#include "survival/resonance.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "survival/quadrature.hpp"

namespace survival {

namespace {
constexpr double kPi = std::numbers::pi;

cplx dyson(cplx z, double eps0, cplx sigma) { return 1.0 / (z - eps0 - sigma); }

// D(z) = z - eps0 - Sigma_II(z); the pole is its zero.
cplx pole_function(cplx z, const AdatomSpec& spec) {
    return z - spec.epsilon0 - self_energy(z, spec, Sheet::Second);
}

// dD/dz by Richardson-extrapolated central differences; D is analytic so a
// real step gives the complex derivative.
cplx pole_function_derivative(cplx z, const AdatomSpec& spec) {
    const double h = 1e-6 * spec.substrate.hopping;
    const cplx d1 = pole_function(z + h, spec) - pole_function(z - h, spec);
    const cplx d2 = pole_function(z + 2.0 * h, spec) - pole_function(z - 2.0 * h, spec);
    return (8.0 * d1 - d2) / (12.0 * h);
}
}  // namespace

cplx self_energy(cplx z, const AdatomSpec& spec, Sheet sheet) {
    return spec.v0 * spec.v0 * substrate_green(z, spec.substrate, sheet);
}

cplx g00(cplx z, const AdatomSpec& spec, Sheet sheet) {
    if (spec.v0 == 0.0) {
        if (z == cplx(spec.epsilon0, 0.0)) throw SingularityError("g00: z at the decoupled level");
        return 1.0 / (z - spec.epsilon0);
    }
    return dyson(z, spec.epsilon0, self_energy(z, spec, sheet));
}

double ldos0(double e, const AdatomSpec& spec) {
    if (!std::isfinite(e)) throw DomainError("ldos0: nonfinite energy");
    if (!spec.substrate.in_band(e)) return 0.0;
    return -g00(cplx(e, 0.0), spec, Sheet::Physical).imag() / kPi;
}

cplx ldos0_continued(cplx z, const AdatomSpec& spec) {
    if (z.imag() > 0.0) throw DomainError("ldos0_continued: defined for Im z <= 0");
    if (z.imag() == 0.0) return cplx(ldos0(z.real(), spec), 0.0);
    const cplx gi = g00(z, spec, Sheet::Physical);
    const cplx gii = g00(z, spec, Sheet::Second);
    return (gi - gii) / cplx(0.0, 2.0 * kPi);
}

std::optional<double> detect_bound_state(const AdatomSpec& spec) {
    if (spec.v0 == 0.0) return std::nullopt;
    const auto& sub = spec.substrate;
    const double v = sub.hopping;
    auto d_real = [&](double e) {
        return e - spec.epsilon0 - self_energy(cplx(e, 0.0), spec, Sheet::Physical).real();
    };
    // scan below and above the band; D -> -inf (resp. +inf) far away, so a
    // bracket on the grid is a bound state
    const int n = 1200;
    for (int side = 0; side < 2; ++side) {
        const double e0 = side == 0 ? sub.band_min() : sub.band_max();
        const double dir = side == 0 ? -1.0 : 1.0;
        double prev_e = e0 + dir * 1e-9 * v;
        double prev_d = d_real(prev_e);
        for (int i = 1; i <= n; ++i) {
            // geometric step: resolves the edge region where G diverges
            const double off = 1e-9 * std::pow(10.0 * v / 1e-9, static_cast<double>(i) / n);
            const double e = e0 + dir * off;
            const double d = d_real(e);
            if ((prev_d < 0.0) != (d < 0.0)) {
                // bisect
                double a = prev_e, b = e;
                for (int k = 0; k < 200; ++k) {
                    const double m = 0.5 * (a + b);
                    if ((d_real(m) < 0.0) == (d_real(a) < 0.0))
                        a = m;
                    else
                        b = m;
                }
                return 0.5 * (a + b);
            }
            prev_e = e;
            prev_d = d;
        }
    }
    return std::nullopt;
}

FirstPole first_pole_approx(const AdatomSpec& spec) {
    const cplx sig = self_energy(cplx(spec.epsilon0, 0.0), spec, Sheet::Physical);
    return {spec.epsilon0 + sig.real(), -sig.imag()};
}

Resonance find_pole(const AdatomSpec& spec) {
    spec.validate();
    const auto& sub = spec.substrate;
    if (!sub.in_band(spec.epsilon0))
        throw DomainError("find_pole: epsilon0 must lie inside the band");
    const double v = sub.hopping;
    const double tol = 1e-12 * v;

    Resonance res;
    if (spec.v0 == 0.0) {
        res.epsilon_r = spec.epsilon0;
        res.gamma0 = 0.0;
        res.delta0 = 0.0;
        res.residue_a = 1.0;
        res.beta = Resonance::beta_from(res.epsilon_r, 0.0, sub.band_min(), sub.band_max());
        return res;
    }

    const FirstPole seed = first_pole_approx(spec);
    cplx z(seed.epsilon_r, -std::max(seed.gamma0, 1e-8 * v));

    auto newton = [&](cplx z0, int iters) {
        cplx zi = z0;
        for (int i = 0; i < iters; ++i) {
            const cplx d = pole_function(zi, spec);
            if (std::abs(d) <= tol) return zi;
            zi -= d / pole_function_derivative(zi, spec);
        }
        return zi;
    };

    z = newton(z, 100);
    if (std::abs(pole_function(z, spec)) > tol) {
        // coarse scan of the strip below the band for a better seed
        cplx best = z;
        double best_d = std::abs(pole_function(z, spec));
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) {
                const double re = sub.band_min() + (i + 0.5) / 8.0 * sub.bandwidth();
                const double im = -std::pow(10.0, -4.0 + 3.5 * (j + 0.5) / 8.0) * v;
                const cplx trial(re, im);
                const double d = std::abs(pole_function(trial, spec));
                if (d < best_d) {
                    best_d = d;
                    best = trial;
                }
            }
        }
        z = newton(best, 100);
        if (std::abs(pole_function(z, spec)) > tol)
            throw ConvergenceError("find_pole: Newton failed; last iterate (" +
                                   std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                                   "), |D| = " + std::to_string(std::abs(pole_function(z, spec))));
    }
    if (z.imag() >= 0.0 || z.imag() <= -4.0 * v)
        throw DomainError("find_pole: pole left the strip Im z in (-4V, 0)");

    res.epsilon_r = z.real();
    res.gamma0 = -z.imag();
    res.delta0 = res.epsilon_r - spec.epsilon0;
    res.residue_a = 1.0 / pole_function_derivative(z, spec);
    res.beta = Resonance::beta_from(res.epsilon_r, res.gamma0, sub.band_min(), sub.band_max());
    res.pole_residual = std::abs(pole_function(z, spec));
    return res;
}

double spectral_moment(const AdatomSpec& spec, int n, double about) {
    if (n < 0 || n > 4) throw DomainError("spectral_moment: n must be in [0, 4]");
    if (const auto bs = detect_bound_state(spec)) throw BoundStateError(*bs);
    const auto& sub = spec.substrate;

    if (spec.v0 == 0.0) return std::pow(spec.epsilon0 - about, n);

    std::vector<double> cuts{sub.band_min(), sub.band_max()};
    for (double c : sub.interior_van_hove()) cuts.push_back(c);
    const FirstPole fp = first_pole_approx(spec);
    for (double k : {-10.0, -1.0, 1.0, 10.0}) {
        const double e = fp.epsilon_r + k * std::max(fp.gamma0, 1e-6);
        if (sub.in_band(e)) cuts.push_back(e);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto f = [&](double e) { return cplx(std::pow(e - about, n) * ldos0(e, spec), 0.0); };
    double total = 0.0;
    const double tol = 2e-9 / static_cast<double>(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate_adaptive(f, cuts[i], cuts[i + 1], tol).real();
    return total;
}

}  // namespace survival
