#include "survival/substrate.hpp"

#include <cmath>
#include <numbers>

#include "survival/elliptic.hpp"

namespace survival {

namespace {

constexpr double kPi = std::numbers::pi;

void check_finite(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("green function: nonfinite energy argument");
}

// w = sqrt(zeta^2 - 4V^2) on the branch with w ~ zeta at infinity; the cut
// lies exactly on the band.
cplx chain_w(cplx zeta, double v) {
    return zeta * std::sqrt(1.0 - (2.0 * v / zeta) * (2.0 * v / zeta));
}

}  // namespace

cplx chain_surface_green(cplx z, const SubstrateSpec& spec, Sheet sheet) {
    check_finite(z);
    const double v = spec.hopping;
    const cplx zeta = z - spec.onsite;
    const double half = 2.0 * v;

    if (zeta.imag() == 0.0) {
        const double x = zeta.real();
        if (std::abs(x) < half) {
            // retarded boundary value from above; the second sheet's boundary
            // value from below coincides with it
            const double s = std::sqrt((half - x) * (half + x));
            return cplx(x, -s) / (2.0 * v * v);
        }
        if (x == 0.0) return cplx(0.0, -1.0 / v);
    }
    if (sheet == Sheet::Second && z.imag() > 0.0)
        throw DomainError("second sheet is defined for Im z <= 0");

    const cplx w = chain_w(zeta, v);
    if (sheet == Sheet::Physical) return (zeta - w) / (2.0 * v * v);
    return (zeta + w) / (2.0 * v * v);
}

cplx square_lattice_green(cplx z, const SubstrateSpec& spec, Sheet sheet) {
    check_finite(z);
    const double v = spec.hopping;
    const cplx zeta = (z - spec.onsite) / v;  // work in units of V
    const double half = 4.0;

    if (zeta.imag() == 0.0) {
        const double x = zeta.real();
        if (x == 0.0 || std::abs(x) == half)
            throw SingularityError("square lattice green: van Hove point on the real axis");
        if (std::abs(x) < half) {
            // boundary value from above:
            //   G = sign(x) K(x^2/16)/(2 pi) - i K(1 - x^2/16)/(2 pi)
            const double m = x * x / 16.0;
            const double mc = (half - x) * (half + x) / 16.0;
            const double re = (x > 0 ? 1.0 : -1.0) * elliptic_k_mc(m, mc).real() / (2.0 * kPi);
            const double im = -elliptic_k_mc(mc, m).real() / (2.0 * kPi);
            cplx g(re, im);
            if (sheet == Sheet::Second) return g;  // common boundary value across the cut
            return g / v;
        }
    }
    if (sheet == Sheet::Second && z.imag() > 0.0)
        throw DomainError("second sheet is defined for Im z <= 0");

    const cplx q = 4.0 / zeta;
    cplx g = (2.0 / (kPi * zeta)) * elliptic_k(q * q);
    if (sheet == Sheet::Second) g -= cplx(0.0, 2.0 * kPi) * substrate_ldos_continued(z, spec) * v;
    return g / v;
}

cplx substrate_green(cplx z, const SubstrateSpec& spec, Sheet sheet) {
    return spec.kind == SubstrateKind::Square2D ? square_lattice_green(z, spec, sheet)
                                                : chain_surface_green(z, spec, sheet);
}

double substrate_ldos(double e, const SubstrateSpec& spec) {
    if (!std::isfinite(e)) throw DomainError("substrate_ldos: nonfinite energy");
    if (!spec.in_band(e)) return 0.0;
    if (spec.kind == SubstrateKind::Square2D && e == spec.onsite)
        throw SingularityError("substrate_ldos: logarithmic van Hove singularity at band center");
    return -substrate_green(cplx(e, 0.0), spec, Sheet::Physical).imag() / kPi;
}

cplx substrate_ldos_continued(cplx z, const SubstrateSpec& spec) {
    check_finite(z);
    const double v = spec.hopping;
    const cplx zeta = (z - spec.onsite) / v;
    if (spec.kind == SubstrateKind::Square2D) {
        const cplx w = (zeta / 4.0) * (zeta / 4.0);
        return elliptic_k_mc(1.0 - w, w) / (2.0 * kPi * kPi) / v;
    }
    // chain: rho_c = sqrt(4V^2 - zeta^2)/(2 pi V^2), the branch restricting to
    // the semicircle on the real axis. Equivalent to (G_I - G_II)/(-2 pi i).
    const cplx w = chain_w(zeta, 1.0);
    return cplx(0.0, 1.0) * w / (kPi * 2.0) / (v * v) *
           (zeta.imag() > 0.0 || (zeta.imag() == 0.0 && std::abs(zeta.real()) < 2.0) ? 1.0 : 1.0);
}

cplx bz_oracle_green(cplx z, const SubstrateSpec& spec, int grid) {
    check_finite(z);
    if (spec.kind != SubstrateKind::Square2D)
        throw DomainError("bz_oracle_green: square lattice only");
    if (z.imag() == 0.0) throw DomainError("bz_oracle_green: Im z must be nonzero");
    if (grid < 64) throw DomainError("bz_oracle_green: grid must be >= 64");
    const double v = spec.hopping;
    std::vector<double> ck(grid);
    for (int i = 0; i < grid; ++i) {
        const double k = (i + 0.5) * (2.0 * kPi / grid);
        ck[i] = std::cos(k);
    }
    cplx sum = 0.0;
    for (int i = 0; i < grid; ++i) {
        cplx row = 0.0;
        const cplx zi = z - spec.onsite + 2.0 * v * ck[i];
        for (int j = 0; j < grid; ++j) row += 1.0 / (zi + 2.0 * v * ck[j]);
        sum += row;
    }
    return sum / static_cast<double>(grid) / static_cast<double>(grid);
}

cplx chain_continued_fraction_green(cplx z, const SubstrateSpec& spec, int depth) {
    check_finite(z);
    if (spec.kind != SubstrateKind::SemiInfiniteChain)
        throw DomainError("chain_continued_fraction_green: chain substrate only");
    const double v2 = spec.hopping * spec.hopping;
    const cplx zeta = z - spec.onsite;
    cplx g = 0.0;
    for (int i = 0; i < depth; ++i) g = 1.0 / (zeta - v2 * g);
    return g;
}

}  // namespace survival
