#include "survival/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "survival/substrate.hpp"

namespace survival {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_pi(double x) {
    x = std::fmod(x + kPi, 2.0 * kPi);
    if (x < 0.0) x += 2.0 * kPi;
    return x - kPi;
}

// golden-section minimization of f on [a, b]
template <class F>
double golden_min(const F& f, double a, double b, double xtol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// indices of series points inside [t_lo, t_hi] that survive the dip mask
std::vector<std::size_t> masked_window(const SurvivalSeries& s, double t_lo, double t_hi) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.times[i] >= t_lo && s.times[i] <= t_hi && s.p00[i] > 0.0) idx.push_back(i);
    // rolling median over 9 neighbors; drop points 10x below it
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        std::vector<double> win;
        for (std::size_t j = (k >= 4 ? k - 4 : 0); j < std::min(idx.size(), k + 5); ++j)
            win.push_back(s.p00[idx[j]]);
        std::nth_element(win.begin(), win.begin() + win.size() / 2, win.end());
        const double med = win[win.size() / 2];
        if (s.p00[idx[k]] >= 0.1 * med) keep.push_back(idx[k]);
    }
    return keep;
}

struct LinFit {
    double slope, intercept, rms;
};

LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy * sxx - sx * sxy) / det;
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - slope * x[i] - intercept;
        rss += r * r;
    }
    return {slope, intercept, std::sqrt(rss / n)};
}
}  // namespace

TsEstimate estimate_ts(const AdatomSpec& spec, const Resonance& res) {
    TsEstimate out;
    out.closed_form = kPi * substrate_ldos(spec.epsilon0, spec.substrate);
    const double m2 = spec.v0 * spec.v0;
    const double a2 = std::norm(res.residue_a);
    auto dist = [&](double t) {
        return std::abs((1.0 - m2 * t * t) - a2 * std::exp(-2.0 * res.gamma0 * t));
    };
    out.numerical = golden_min(dist, 1e-4, 4.0 * out.closed_form, 1e-10);
    return out;
}

std::vector<double> tr_crossings(const DecomposedEvaluator& ev, const SurvivalSeries& series) {
    std::vector<double> roots;
    auto diff = [&](double t) { return std::abs(ev.psi_s(t)) - std::abs(ev.psi_r(t)); };
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        const double da = std::abs(series.psi_s[i]) - std::abs(series.psi_r[i]);
        const double db = std::abs(series.psi_s[i + 1]) - std::abs(series.psi_r[i + 1]);
        if (da == 0.0) {
            roots.push_back(series.times[i]);
            continue;
        }
        if ((da > 0.0) == (db > 0.0)) continue;
        double a = series.times[i], b = series.times[i + 1];
        double fa = da;
        for (int k = 0; k < 80; ++k) {
            const double m = 0.5 * (a + b);
            const double fm = diff(m);
            if ((fm > 0.0) == (fa > 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        roots.push_back(0.5 * (a + b));
    }
    return roots;
}

double estimate_tr(const DecomposedEvaluator& ev, const SurvivalSeries& series) {
    const auto roots = tr_crossings(ev, series);
    if (roots.empty())
        throw DomainError("estimate_tr: no |psi_s| = |psi_r| crossing in the grid; extend t_max");
    return roots.front();
}

std::vector<CollapseDip> detect_collapse(const DecomposedEvaluator& ev,
                                         const SurvivalSeries& series) {
    std::vector<CollapseDip> dips;
    const auto& p = series.p00;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        if (!(p[i] < p[i - 1] && p[i] < p[i + 1])) continue;
        const double env =
            std::max(std::norm(series.psi_s[i]), std::norm(series.psi_r[i]));
        if (!(env >= 10.0 * p[i])) continue;
        // golden-section refinement on a fresh local evaluation
        const double a = series.times[i - 1], b = series.times[i + 1];
        const double t =
            golden_min([&](double tt) { return ev.p00(tt); }, a, b, 1e-11 * (b - a) + 1e-12);
        CollapseDip dip;
        dip.t_dip = t;
        const double pv = ev.p00(t);
        const double env_t = std::max(std::norm(ev.psi_s(t)), std::norm(ev.psi_r(t)));
        dip.depth = env_t / std::max(pv, 1e-300);
        if (dip.depth > 10.0) dips.push_back(dip);
    }
    return dips;
}

double check_collapse_phase(const DecomposedEvaluator& ev, const AdatomSpec& spec,
                            CollapseDip& dip, bool* inequality_chain_holds) {
    const Resonance& res = ev.resonance();
    const double t = dip.t_dip;
    const cplx s = ev.psi_s(t);
    const cplx r = ev.psi_r(t);
    dip.phase_residual = wrap_pi(std::arg(s) - std::arg(r) - kPi);

    // band-edge model: psi_r phase = -eps_L t + phi(t), psi_s phase
    // = -phi_a - eps_r t; the collapse condition is Eq. of the two phases
    const double band_lo = spec.substrate.band_min();
    const double bw = spec.substrate.bandwidth();
    const double phi_a = -std::arg(res.residue_a);
    const double phi_t =
        std::atan2(res.beta * std::sin(bw * t), 1.0 - res.beta * std::cos(bw * t));
    dip.phase_residual_beta_model =
        wrap_pi((res.epsilon_r - band_lo) * t - phi_t - (kPi - phi_a));

    if (inequality_chain_holds) {
        const double lhs = std::abs(res.epsilon_r - band_lo);
        *inequality_chain_holds =
            lhs > 10.0 * res.gamma0 && res.gamma0 > 2.0 * kPi / t;
    }
    return dip.phase_residual;
}

ExpFit fit_exponential(const SurvivalSeries& series, double t_lo, double t_hi) {
    const auto idx = masked_window(series, t_lo, t_hi);
    if (idx.size() < 10) throw DomainError("fit_exponential: window has fewer than 10 points");
    std::vector<double> x, y;
    for (auto i : idx) {
        x.push_back(series.times[i]);
        y.push_back(std::log(series.p00[i]));
    }
    const LinFit f = least_squares(x, y);
    return {-f.slope, std::exp(f.intercept), f.rms, static_cast<int>(idx.size())};
}

PowerFit fit_power_law(const SurvivalSeries& series, double t_lo, double t_hi) {
    const auto idx = masked_window(series, t_lo, t_hi);
    if (idx.size() < 10) throw DomainError("fit_power_law: window has fewer than 10 points");
    std::vector<double> x, y;
    for (auto i : idx) {
        x.push_back(std::log(series.times[i]));
        y.push_back(std::log(series.p00[i]));
    }
    const LinFit f = least_squares(x, y);
    return {f.slope, f.intercept, f.rms, static_cast<int>(idx.size())};
}

ModulationFit fit_modulation(const SurvivalSeries& series, double bandwidth) {
    if (series.size() < 64) throw DomainError("fit_modulation: need a dense tail series");
    const std::size_t n = series.size();

    // residual of log P00 after removing the power-law trend
    std::vector<double> t(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = series.times[i];
        y[i] = std::log(std::max(series.p00[i], 1e-300));
    }
    std::vector<double> lt(n);
    for (std::size_t i = 0; i < n; ++i) lt[i] = std::log(t[i]);
    const LinFit trend = least_squares(lt, y);
    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) resid[i] = y[i] - trend.slope * lt[i] - trend.intercept;

    // projection amplitude at frequency w
    auto amp_at = [&](double w) {
        double c = 0, s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            c += resid[i] * std::cos(w * t[i]);
            s += resid[i] * std::sin(w * t[i]);
        }
        return 2.0 * std::hypot(c, s) / static_cast<double>(n);
    };
    auto refine = [&](double w0) {
        return golden_min([&](double w) { return -amp_at(w); }, 0.9 * w0, 1.1 * w0,
                          1e-6 * w0);
    };

    ModulationFit out;
    out.freq = refine(bandwidth);
    out.amplitude = amp_at(out.freq);
    out.freq_half = refine(0.5 * bandwidth);
    out.amplitude_half = amp_at(out.freq_half);
    return out;
}

}  // namespace survival
