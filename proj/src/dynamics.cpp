#include "survival/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "survival/quadrature.hpp"
#include "survival/threads.hpp"

namespace survival {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kExpCutoff = 46.0;  // exp(-46) ~ 1e-20

void check_times(const std::vector<double>& times) {
    if (times.empty()) throw DomainError("empty time grid");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0)) throw DomainError("times must be non-negative");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw DomainError("times must be strictly increasing");
    }
}

// Gauss-Legendre panels for int_0^hi f(eps) deps, graded for edge structure:
// sqrt map eps = u^2 on [0, 0.25], geometric panels beyond. Each panel is
// bisected until halving changes its contribution by less than its share of
// the tolerance budget.
struct PanelRule {
    std::vector<double> eps, w;
};

template <class F>
void build_adaptive(const F& f, double a, double b, const GaussLegendre& gl, double tol_per_unit,
                    double tol_floor, std::vector<double>& eps, std::vector<double>& w,
                    int depth = 0) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx whole = 0.0, halves = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        whole += h * gl.w[i] * f(c + h * gl.x[i]);
        const double c1 = 0.5 * (a + c), c2 = 0.5 * (c + b), hh = 0.5 * h;
        halves += hh * gl.w[i] * (f(c1 + hh * gl.x[i]) + f(c2 + hh * gl.x[i]));
    }
    if (std::abs(whole - halves) <= tol_per_unit * (b - a) + tol_floor || depth >= 30) {
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            eps.push_back(c + h * gl.x[i]);
            w.push_back(h * gl.w[i]);
        }
        return;
    }
    build_adaptive(f, a, c, gl, tol_per_unit, tol_floor, eps, w, depth + 1);
    build_adaptive(f, c, b, gl, tol_per_unit, tol_floor, eps, w, depth + 1);
}

}  // namespace

ReturnAmplitude::ReturnAmplitude(const AdatomSpec& spec, double min_time,
                                 const DynamicsOptions& opt) {
    spec.validate();
    if (const auto bs = detect_bound_state(spec)) throw BoundStateError(*bs);
    if (!(min_time > 0.0)) throw DomainError("ReturnAmplitude: min_time must be positive");

    const auto& sub = spec.substrate;
    const double v = sub.hopping;
    const double hi = std::max(kExpCutoff / min_time, 2.0 * sub.bandwidth()) * 1.02;

    // line positions and jump functions of the continued LDoS
    struct Def {
        double x0;
        int kind;  // 0: left edge, 1: right edge, 2: interior van Hove
    };
    std::vector<Def> defs{{sub.band_min(), 0}, {sub.band_max(), 1}};
    for (double c : sub.interior_van_hove()) defs.push_back({c, 2});
    std::sort(defs.begin(), defs.end(), [](const Def& a, const Def& b) { return a.x0 < b.x0; });

    const GaussLegendre gl(24);
    const double side = 5e-13 * v;  // side selector for the interior branch line
    for (const auto& d : defs) {
        auto jumpf = [&](double ep) -> cplx {
            const cplx z(d.x0, -ep);
            switch (d.kind) {
                case 0: return ldos0_continued(z, spec);
                case 1: return -ldos0_continued(z, spec);
                default:
                    return ldos0_continued(z + side, spec) - ldos0_continued(z - side, spec);
            }
        };
        LineData line;
        line.x0 = d.x0;
        const double tol = 0.2 * opt.quadrature_tol;
        const double floor = 2e-3 * tol;
        // sqrt-mapped region [0, 0.25V]
        {
            std::vector<double> un, uw;
            auto fu = [&](double u) { return jumpf(u * u) * 2.0 * u; };
            build_adaptive(fu, 0.0, 0.5 * std::sqrt(v), gl, 0.5 * tol / std::sqrt(v), floor, un,
                           uw);
            for (std::size_t i = 0; i < un.size(); ++i) {
                line.eps.push_back(un[i] * un[i]);
                line.w.push_back(uw[i] * 2.0 * un[i]);
            }
        }
        build_adaptive(jumpf, 0.25 * v, hi, gl, 0.5 * tol / hi, floor, line.eps, line.w);
        line.jump.resize(line.eps.size());
        for (std::size_t i = 0; i < line.eps.size(); ++i) line.jump[i] = jumpf(line.eps[i]);
        positions_.push_back(d.x0);
        lines_.push_back(std::move(line));
    }
}

cplx ReturnAmplitude::line(std::size_t i, double t) const {
    const auto& l = lines_[i];
    cplx sum = 0.0;
    for (std::size_t k = 0; k < l.eps.size(); ++k) {
        const double x = l.eps[k] * t;
        if (x > kExpCutoff) continue;
        sum += l.w[k] * std::exp(-x) * l.jump[k];
    }
    return cplx(0.0, -1.0) * std::exp(cplx(0.0, -l.x0 * t)) * sum;
}

cplx ReturnAmplitude::operator()(double t) const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < lines_.size(); ++i) s += line(i, t);
    return s;
}

DecomposedEvaluator::DecomposedEvaluator(const AdatomSpec& spec, const Resonance& res,
                                         double min_time, const DynamicsOptions& opt)
    : res_(res), ret_(spec, min_time, opt) {}

cplx DecomposedEvaluator::psi_s(double t) const {
    return res_.residue_a * std::exp(cplx(-res_.gamma0 * t, -res_.epsilon_r * t));
}

SurvivalSeries survival_direct(const AdatomSpec& spec, const std::vector<double>& times,
                               const DynamicsOptions& opt) {
    spec.validate();
    check_times(times);
    if (const auto bs = detect_bound_state(spec)) throw BoundStateError(*bs);
    const auto& sub = spec.substrate;

    std::vector<double> cuts;
    for (double c : sub.interior_van_hove()) cuts.push_back(c);
    if (spec.v0 > 0.0) {
        const FirstPole fp = first_pole_approx(spec);
        for (double k : {-12.0, -3.0, 0.0, 3.0, 12.0}) {
            const double e = fp.epsilon_r + k * std::max(fp.gamma0, 1e-6 * sub.hopping);
            if (sub.in_band(e)) cuts.push_back(e);
        }
    }

    OscillatoryTransform::Options oopt;
    oopt.tol = opt.quadrature_tol;
    OscillatoryTransform transform([&](double e) { return ldos0(e, spec); }, sub.band_min(),
                                   sub.band_max(), cuts, oopt);

    SurvivalSeries s;
    s.method = Method::Direct;
    s.times = times;
    s.psi_s.resize(times.size());
    s.psi_r.assign(times.size(), cplx(0.0, 0.0));
    s.p00.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const cplx a = transform(times[i]);
        s.psi_s[i] = a;
        s.p00[i] = std::norm(a);
    });
    s.validate();
    return s;
}

SurvivalSeries survival_decomposed(const AdatomSpec& spec, const Resonance& res,
                                   const std::vector<double>& times, const DynamicsOptions& opt) {
    check_times(times);
    const double min_time = std::max(times.front(), 1e-4);
    DecomposedEvaluator ev(spec, res, min_time, opt);

    SurvivalSeries s;
    s.method = Method::Decomposed;
    s.times = times;
    s.psi_s.resize(times.size());
    s.psi_r.resize(times.size());
    s.p00.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        s.psi_s[i] = ev.psi_s(times[i]);
        s.psi_r[i] = ev.psi_r(times[i]);
        s.p00[i] = std::norm(s.psi_s[i] + s.psi_r[i]);
    });
    s.validate();
    return s;
}

SurvivalSeries short_time(const AdatomSpec& spec, const std::vector<double>& times,
                          double m2_override) {
    spec.validate();
    check_times(times);
    const double m2 = m2_override >= 0.0 ? m2_override : spec.v0 * spec.v0;
    SurvivalSeries s;
    s.method = Method::ShortTime;
    s.times = times;
    s.psi_s.assign(times.size(), cplx(0.0, 0.0));
    s.psi_r.assign(times.size(), cplx(0.0, 0.0));
    s.p00.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        s.p00[i] = std::max(0.0, 1.0 - m2 * times[i] * times[i]);
    s.validate();
    return s;
}

SurvivalSeries long_time_asymptote(const AdatomSpec& spec, const Resonance& res,
                                   const std::vector<double>& times, const DynamicsOptions& opt) {
    check_times(times);
    const auto& sub = spec.substrate;
    const double bandwidth = sub.bandwidth();
    ReturnAmplitude ret(spec, std::max(times.front(), 1e-4), opt);

    SurvivalSeries s;
    s.method = Method::LongTime;
    s.times = times;
    s.psi_s.assign(times.size(), cplx(0.0, 0.0));
    s.psi_r.resize(times.size());
    s.p00.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const double t = times[i];
        const cplx left = ret.line(0, t);  // lines are sorted; 0 is the lower edge
        const double mod =
            1.0 + res.beta * res.beta - 2.0 * res.beta * std::cos(bandwidth * t);
        s.psi_r[i] = left;
        s.p00[i] = mod * std::norm(left);
    });
    s.validate();
    return s;
}

}  // namespace survival
