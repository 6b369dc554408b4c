#include "survival/lattice_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "survival/quadrature.hpp"

namespace survival {

namespace {

// y = H x for the lattice + adatom Hamiltonian, real arithmetic.
void matvec(const FiniteLattice& lat, const std::vector<double>& x, std::vector<double>& y) {
    const int L = lat.size;
    const double v = lat.spec.substrate.hopping;
    const double onsite = lat.spec.substrate.onsite;
    const double v0 = lat.spec.v0;
    const int ad = lat.adatom_index();
    const int attach = lat.attach_x * L + lat.attach_y;

    for (int i = 0; i < L; ++i) {
        const int row = i * L;
        for (int j = 0; j < L; ++j) {
            const int n = row + j;
            double acc = onsite * x[n];
            if (i > 0) acc -= v * x[n - L];
            if (i < L - 1) acc -= v * x[n + L];
            if (j > 0) acc -= v * x[n - 1];
            if (j < L - 1) acc -= v * x[n + 1];
            y[n] = acc;
        }
    }
    y[attach] -= v0 * x[ad];
    y[ad] = lat.spec.epsilon0 * x[ad] - v0 * x[attach];
}

struct Scaling {
    double a, b;  // H = a * Htilde + b
};

Scaling gershgorin_scaling(const FiniteLattice& lat) {
    const double v = lat.spec.substrate.hopping;
    const double onsite = lat.spec.substrate.onsite;
    const double v0 = lat.spec.v0;
    const double lo = std::min(onsite - 4.0 * v - v0, lat.spec.epsilon0 - v0);
    const double hi = std::max(onsite + 4.0 * v + v0, lat.spec.epsilon0 + v0);
    return {0.5 * (hi - lo) * 1.05, 0.5 * (hi + lo)};
}

// Chebyshev order such that the Bessel coefficient tail is below tol.
int chebyshev_order(double theta, double tol) {
    int m = static_cast<int>(theta) + 16;
    for (;;) {
        const auto j = bessel_j_array(m + 40, theta);
        double tail = 0.0;
        for (int k = m + 1; k <= m + 40; ++k) tail += 2.0 * std::abs(j[k]);
        if (tail < tol) return m;
        m += std::max(8, m / 8);
        if (m > 40 * (theta + 50)) throw ConvergenceError("chebyshev_order: no convergence");
    }
}

}  // namespace

void FiniteLattice::validate() const {
    spec.validate();
    if (size < 32) throw DomainError("FiniteLattice: L must be >= 32");
    if (attach_x < 0 || attach_x >= size || attach_y < 0 || attach_y >= size)
        throw DomainError("FiniteLattice: attach site outside the lattice");
    if (spec.substrate.kind != SubstrateKind::Square2D)
        throw DomainError("FiniteLattice: square lattice substrate only");
}

double reflection_time(const FiniteLattice& lat) {
    const int L = lat.size;
    const int hops_x = std::min(lat.attach_x + 1, L - lat.attach_x);
    const int hops_y = std::min(lat.attach_y + 1, L - lat.attach_y);
    const double dist = std::min(hops_x, hops_y);
    const double vmax = 4.0 * lat.spec.substrate.hopping;
    return 0.8 * dist / vmax;
}

int required_size(const AdatomSpec& spec, double t) {
    const double vmax = 4.0 * spec.substrate.hopping;
    return 2 * static_cast<int>(std::ceil(t * vmax / 0.8)) + 2;
}

SurvivalSeries propagate(const FiniteLattice& lat, const std::vector<double>& times,
                         const PropagateOptions& opt) {
    lat.validate();
    if (times.empty()) throw DomainError("propagate: empty time grid");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw DomainError("propagate: times must be increasing");
    const double tmax = times.back();
    const double window = reflection_time(lat);
    if (tmax > window * (1.0 + 1e-12))
        throw DomainError("propagate: t = " + std::to_string(tmax) +
                          " beyond the reflection window " + std::to_string(window) +
                          "; need L >= " + std::to_string(required_size(lat.spec, tmax)));

    const Scaling sc = gershgorin_scaling(lat);
    const int order = chebyshev_order(sc.a * tmax, opt.tail_tol);

    // Chebyshev moments mu_k = <0| T_k(Htilde) |0>; the times then only enter
    // through Bessel-weighted sums.
    const int n = lat.nsites();
    const int ad = lat.adatom_index();
    std::vector<double> tkm1(n, 0.0), tk(n, 0.0), tmp(n, 0.0);
    tkm1[ad] = 1.0;
    std::vector<double> mu(order + 1, 0.0);
    mu[0] = 1.0;
    matvec(lat, tkm1, tk);
    for (int i = 0; i < n; ++i) tk[i] = (tk[i] - sc.b * tkm1[i]) / sc.a;
    mu[1] = tk[ad];
    for (int k = 2; k <= order; ++k) {
        matvec(lat, tk, tmp);
        for (int i = 0; i < n; ++i) {
            const double next = 2.0 * (tmp[i] - sc.b * tk[i]) / sc.a - tkm1[i];
            tkm1[i] = tk[i];
            tk[i] = next;
        }
        mu[k] = tk[ad];
    }

    SurvivalSeries s;
    s.method = Method::Oracle;
    s.times = times;
    s.psi_s.resize(times.size());
    s.psi_r.assign(times.size(), cplx(0.0, 0.0));
    s.p00.resize(times.size());
    for (std::size_t it = 0; it < times.size(); ++it) {
        const double t = times[it];
        const double theta = sc.a * t;
        const auto j = bessel_j_array(order, theta);
        cplx acc = mu[0] * j[0];
        cplx ik(0.0, -1.0);  // (-i)^k
        for (int k = 1; k <= order; ++k) {
            acc += 2.0 * ik * j[k] * mu[k];
            ik *= cplx(0.0, -1.0);
        }
        const cplx amp = std::exp(cplx(0.0, -sc.b * t)) * acc;
        s.psi_s[it] = amp;
        s.p00[it] = std::norm(amp);
    }
    s.validate();
    return s;
}

std::vector<cplx> propagate_state(const FiniteLattice& lat, double t,
                                  const PropagateOptions& opt) {
    lat.validate();
    const double window = reflection_time(lat);
    if (t > window * (1.0 + 1e-12))
        throw DomainError("propagate_state: time beyond the reflection window");
    const Scaling sc = gershgorin_scaling(lat);
    const int order = chebyshev_order(sc.a * t, opt.tail_tol);
    const auto j = bessel_j_array(order, sc.a * t);

    const int n = lat.nsites();
    const int ad = lat.adatom_index();
    std::vector<double> tkm1(n, 0.0), tk(n, 0.0), tmp(n, 0.0);
    std::vector<cplx> psi(n, cplx(0.0, 0.0));
    tkm1[ad] = 1.0;
    for (int i = 0; i < n; ++i) psi[i] += j[0] * tkm1[i];
    matvec(lat, tkm1, tk);
    for (int i = 0; i < n; ++i) tk[i] = (tk[i] - sc.b * tkm1[i]) / sc.a;
    cplx ik(0.0, -1.0);
    for (int i = 0; i < n; ++i) psi[i] += 2.0 * ik * j[1] * tk[i];
    for (int k = 2; k <= order; ++k) {
        matvec(lat, tk, tmp);
        for (int i = 0; i < n; ++i) {
            const double next = 2.0 * (tmp[i] - sc.b * tk[i]) / sc.a - tkm1[i];
            tkm1[i] = tk[i];
            tk[i] = next;
        }
        ik *= cplx(0.0, -1.0);
        for (int i = 0; i < n; ++i) psi[i] += 2.0 * ik * j[k] * tk[i];
    }
    const cplx phase = std::exp(cplx(0.0, -sc.b * t));
    for (auto& p : psi) p *= phase;
    (void)ad;
    return psi;
}

EigenHistogram eigen_histogram(const FiniteLattice& lat, int bins) {
    lat.validate();
    if (lat.size > 80) throw DomainError("eigen_histogram: dense diagonalization limited to L <= 80");
    if (bins < 1) throw DomainError("eigen_histogram: bins must be positive");

    const int n = lat.nsites();
    const int L = lat.size;
    const double v = lat.spec.substrate.hopping;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            const int s = i * L + j;
            h(s, s) = lat.spec.substrate.onsite;
            if (i + 1 < L) h(s, s + L) = h(s + L, s) = -v;
            if (j + 1 < L) h(s, s + 1) = h(s + 1, s) = -v;
        }
    const int ad = lat.adatom_index();
    const int attach = lat.attach_x * L + lat.attach_y;
    h(ad, ad) = lat.spec.epsilon0;
    h(ad, attach) = h(attach, ad) = -lat.spec.v0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const auto& evals = solver.eigenvalues();
    const auto& evecs = solver.eigenvectors();

    EigenHistogram out;
    const double lo = evals(0) - 1e-9, hi = evals(n - 1) + 1e-9;
    out.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) out.edges[b] = lo + (hi - lo) * b / bins;
    out.weight.assign(bins, 0.0);
    for (int k = 0; k < n; ++k) {
        const double wgt = evecs(ad, k) * evecs(ad, k);
        int b = static_cast<int>((evals(k) - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        out.weight[b] += wgt;
        out.total += wgt;
    }
    return out;
}

}  // namespace survival
