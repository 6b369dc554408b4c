#include "survival/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace survival {

GaussLegendre::GaussLegendre(int n) : x(n), w(n) {
    // Newton iteration from the Chebyshev estimate; nodes symmetric about 0.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * xi * p1 - k * p2) / (k + 1.0);
            }
            const double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
            const double dx = p0 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute P'_n at the converged node
        p0 = 1.0;
        p1 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k + 1.0) * xi * p1 - k * p2) / (k + 1.0);
        }
        const double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
        x[i] = -xi;
        x[n - 1 - i] = xi;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
}

std::vector<double> bessel_j_array(int nmax, double x) {
    std::vector<double> j(nmax + 1, 0.0);
    if (x == 0.0) {
        j[0] = 1.0;
        return j;
    }
    const int start = nmax + 16 + static_cast<int>(std::ceil(std::sqrt(48.0 * (nmax + 1)))) +
                      static_cast<int>(0.06 * x);
    double jp1 = 0.0, jn = 1e-300;
    double norm = 0.0;
    for (int k = start; k > 0; --k) {
        const double jm1 = (2.0 * k / x) * jn - jp1;
        jp1 = jn;
        jn = jm1;
        if (k - 1 <= nmax) j[k - 1] = jn;
        if (((k - 1) % 2) == 0) norm += (k == 1 ? 1.0 : 2.0) * jn;
        // rescale to avoid overflow
        if (std::abs(jn) > 1e250) {
            jn *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            for (auto& v : j) v *= 1e-250;
        }
    }
    for (auto& v : j) v /= norm;
    return j;
}

std::vector<double> sph_bessel_array(int nmax, double x) {
    std::vector<double> j(nmax + 1, 0.0);
    if (x == 0.0) {
        j[0] = 1.0;
        return j;
    }
    if (x > 0.5 * nmax + 2.0) {
        // upward recurrence is stable for n < x
        double jm1 = std::cos(x) / x;  // j_{-1}
        double jn = std::sin(x) / x;
        j[0] = jn;
        for (int k = 0; k < nmax; ++k) {
            const double jp1 = (2.0 * k + 1.0) / x * jn - jm1;
            jm1 = jn;
            jn = jp1;
            j[k + 1] = jn;
            if (k + 1 >= x && std::abs(jn) > 1.0) break;  // entered the unstable tail
        }
        if (nmax < x || std::abs(j[nmax]) <= 1.0) return j;
    }
    // Miller downward recurrence, normalized by j_0
    const int start = nmax + 16 + static_cast<int>(std::ceil(std::sqrt(48.0 * (nmax + 1)))) +
                      static_cast<int>(0.06 * x);
    double jp1 = 0.0, jn = 1e-300;
    std::vector<double> tmp(nmax + 1, 0.0);
    for (int k = start; k > 0; --k) {
        const double jm1 = (2.0 * k + 1.0) / x * jn - jp1;
        jp1 = jn;
        jn = jm1;
        if (k - 1 <= nmax) tmp[k - 1] = jn;
        if (std::abs(jn) > 1e250) {
            jn *= 1e-250;
            jp1 *= 1e-250;
            for (auto& v : tmp) v *= 1e-250;
        }
    }
    const double scale = (std::sin(x) / x) / tmp[0];
    for (int k = 0; k <= nmax; ++k) j[k] = tmp[k] * scale;
    return j;
}

OscillatoryTransform::OscillatoryTransform(std::function<double(double)> f, double a, double b,
                                           std::vector<double> breakpoints, Options opt)
    : f_(std::move(f)), opt_(opt), band_len_(b - a) {
    const GaussLegendre gl(2 * opt_.degree);
    const int deg = opt_.degree;

    std::vector<double> cuts{a, b};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // absolute truncation error of the transform contributed by one panel is
    // bounded by 2*half*tail; budget the tolerance per unit length
    const double tol_per_len = 0.25 * opt_.tol / (b - a);

    struct Work {
        double lo, hi;
    };
    std::vector<Work> stack;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) stack.push_back({cuts[i], cuts[i + 1]});

    std::vector<double> fx(gl.x.size());
    while (!stack.empty()) {
        const Work wrk = stack.back();
        stack.pop_back();
        const double c = 0.5 * (wrk.lo + wrk.hi), h = 0.5 * (wrk.hi - wrk.lo);
        for (std::size_t i = 0; i < gl.x.size(); ++i) fx[i] = f_(c + h * gl.x[i]);

        // project on P_0..P_deg with the 2*deg-point rule
        std::vector<double> coef(deg + 1, 0.0);
        std::vector<double> p0(gl.x.size(), 1.0), p1(gl.x.size(), 0.0);
        for (int n = 0; n <= deg; ++n) {
            double s = 0.0;
            for (std::size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * fx[i] * p0[i];
            coef[n] = (2.0 * n + 1.0) / 2.0 * s;
            for (std::size_t i = 0; i < gl.x.size(); ++i) {
                const double p2 = p1[i];
                p1[i] = p0[i];
                p0[i] = ((2.0 * n + 1.0) * gl.x[i] * p1[i] - n * p2) / (n + 1.0);
            }
        }
        double tail = 0.0;
        for (int n = deg - 3; n <= deg; ++n) tail += std::abs(coef[n]) / (2.0 * n + 1.0);

        // accept when the panel's share of the error budget is met, or when
        // the panel's absolute contribution is negligible outright
        const bool converged = tail <= tol_per_len || 2.0 * h * tail <= 1e-4 * opt_.tol;
        if (!converged && 2.0 * h > opt_.min_width &&
            panels_.size() + stack.size() < static_cast<std::size_t>(opt_.max_panels)) {
            stack.push_back({wrk.lo, c});
            stack.push_back({c, wrk.hi});
            continue;
        }
        worst_tail_ = std::max(worst_tail_, 2.0 * h * tail);
        panels_.push_back({c, h, std::move(coef)});
    }
    if (panels_.size() >= static_cast<std::size_t>(opt_.max_panels))
        throw ConvergenceError("oscillatory transform: panel budget exhausted");
}

cplx OscillatoryTransform::operator()(double t) const {
    cplx total = 0.0;
    const cplx mi(0.0, -1.0);
    for (const auto& p : panels_) {
        const double theta = t * p.half;
        if (std::abs(theta) <= 0.5 * opt_.filon_threshold) {
            // small-phase regime: adaptive Gauss-Kronrod on the panel
            const double panel_tol =
                std::max(0.25 * opt_.tol * (2.0 * p.half) / band_len_, 1e-4 * opt_.tol);
            total += integrate_adaptive(
                [&](double e) { return f_(e) * std::exp(cplx(0.0, -e * t)); },
                p.center - p.half, p.center + p.half, panel_tol);
            continue;
        }
        const auto jn = sph_bessel_array(static_cast<int>(p.coef.size()) - 1, std::abs(theta));
        cplx s = 0.0;
        cplx phase = 1.0;  // (-i)^n, conjugated for negative theta
        for (std::size_t n = 0; n < p.coef.size(); ++n) {
            s += p.coef[n] * 2.0 * phase * jn[n];
            phase *= (theta >= 0.0 ? mi : -mi);
        }
        total += p.half * std::exp(cplx(0.0, -p.center * t)) * s;
    }
    return total;
}

}  // namespace survival
