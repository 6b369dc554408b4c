#ifndef SURVIVAL_QUADRATURE_HPP
#define SURVIVAL_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "survival/types.hpp"

namespace survival {

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7-15 pair, complex-valued integrands.

namespace gk {
// abscissae (positive half), Kronrod weights, Gauss weights (odd nodes)
inline constexpr double xk[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
inline constexpr double wk[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double wg[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};
}  // namespace gk

template <class F>
cplx gk15(const F& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx k = gk::wk[0] * fc;
    cplx g = gk::wg[0] * fc;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * gk::xk[i];
        const cplx fi = f(c + dx) + f(c - dx);
        k += gk::wk[i] * fi;
        if (i % 2 == 0) g += gk::wg[i / 2] * fi;
    }
    err = std::abs(k - g) * std::abs(h);
    return k * h;
}

// Adaptive bisection on [a,b] to an absolute tolerance. Panels narrower than
// min_width are frozen (integrable endpoint structure makes the GK estimator
// pessimistic there); if the frozen error alone exceeds the budget the
// quadrature has genuinely failed and we throw with the worst panel.
template <class F>
cplx integrate_adaptive(const F& f, double a, double b, double abs_tol,
                        int max_panels = 8000, double min_width = 1e-13) {
    struct Panel {
        double a, b, err;
        cplx val;
    };
    auto cmp = [](const Panel& p, const Panel& q) { return p.err < q.err; };
    std::vector<Panel> active;
    std::vector<Panel> frozen;
    double e0;
    cplx v0 = gk15(f, a, b, e0);
    active.push_back({a, b, e0, v0});
    double active_err = e0, frozen_err = 0.0;
    int used = 1;
    while (active_err + frozen_err > abs_tol && !active.empty()) {
        std::pop_heap(active.begin(), active.end(), cmp);
        Panel p = active.back();
        active.pop_back();
        active_err -= p.err;
        if (p.b - p.a < min_width || used >= max_panels) {
            frozen.push_back(p);
            frozen_err += p.err;
            if (frozen_err > 64.0 * abs_tol)
                throw ConvergenceError("quadrature stalled on panel [" + std::to_string(p.a) +
                                       ", " + std::to_string(p.b) +
                                       "], err=" + std::to_string(p.err));
            continue;
        }
        const double m = 0.5 * (p.a + p.b);
        double e1, e2;
        const cplx v1 = gk15(f, p.a, m, e1);
        const cplx v2 = gk15(f, m, p.b, e2);
        active.push_back({p.a, m, e1, v1});
        std::push_heap(active.begin(), active.end(), cmp);
        active.push_back({m, p.b, e2, v2});
        std::push_heap(active.begin(), active.end(), cmp);
        active_err += e1 + e2;
        ++used;
    }
    cplx sum = 0.0;
    for (const auto& p : active) sum += p.val;
    for (const auto& p : frozen) sum += p.val;
    return sum;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes/weights on [-1,1] (Newton on P_n).

struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int n);
};

// ---------------------------------------------------------------------------
// Bessel functions via backward (Miller) recurrences.

// J_0..J_nmax at real x >= 0.
std::vector<double> bessel_j_array(int nmax, double x);

// Spherical j_0..j_nmax at real x >= 0.
std::vector<double> sph_bessel_array(int nmax, double x);

// ---------------------------------------------------------------------------
// Filon-Legendre transform of a real function on a band:
//   A(t) = \int_a^b f(e) exp(-i e t) de.
// f is resolved once into per-panel Legendre series (panels bisected until
// the series tail is below tolerance); evaluating at any t is then a
// Bessel-weighted dot product,
//   \int_{-1}^{1} P_n(x) exp(-i theta x) dx = 2 (-i)^n j_n(theta).
// For t * panel_width <= filon_threshold the panel is summed by plain
// Gauss-Kronrod on the stored interval instead, per the small-phase regime.
class OscillatoryTransform {
  public:
    struct Options {
        double tol = 1e-10;     // absolute error target for A(t)
        int degree = 24;        // Legendre degree per panel
        int max_panels = 40000;
        double min_width = 1e-12;
        double filon_threshold = 8.0;
    };

    OscillatoryTransform(std::function<double(double)> f, double a, double b,
                         std::vector<double> breakpoints, Options opt = {});

    cplx operator()(double t) const;

    std::size_t panel_count() const { return panels_.size(); }
    double worst_tail() const { return worst_tail_; }

  private:
    struct Panel {
        double center, half;
        std::vector<double> coef;
    };
    std::function<double(double)> f_;
    std::vector<Panel> panels_;
    Options opt_;
    double band_len_ = 1.0;
    double worst_tail_ = 0.0;
};

}  // namespace survival

#endif
