// Command-line front end: computes LDoS grids, the resonance pole, survival
// series by every method, regime analysis, the finite-lattice oracle
// comparison, and the one-shot log-log figure with the collapse marker.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "survival/analysis.hpp"
#include "survival/config.hpp"
#include "survival/csv.hpp"
#include "survival/dynamics.hpp"
#include "survival/lattice_oracle.hpp"
#include "survival/resonance.hpp"
#include "survival/substrate.hpp"
#include "survival/svg.hpp"

namespace {

using namespace survival;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitNumerical = 2;

struct Cli {
    std::string config_path;
    std::string out_dir;
    bool quiet = false;
};

RunConfig make_config(const Cli& cli) {
    RunConfig cfg = cli.config_path.empty() ? RunConfig{} : load_config(cli.config_path);
    if (!cli.out_dir.empty()) cfg.out_dir = cli.out_dir;
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void note(const Cli& cli, const std::string& msg) {
    if (!cli.quiet) std::cout << msg << "\n";
}

std::vector<std::pair<std::string, std::string>> pole_report(const AdatomSpec& spec,
                                                             const Resonance& res) {
    const FirstPole seed = first_pole_approx(spec);
    return {
        {"epsilon_r", format_double(res.epsilon_r)},
        {"gamma0", format_double(res.gamma0)},
        {"delta0", format_double(res.delta0)},
        {"re_residue_a", format_double(res.residue_a.real())},
        {"im_residue_a", format_double(res.residue_a.imag())},
        {"abs_residue_a_sq", format_double(std::norm(res.residue_a))},
        {"beta", format_double(res.beta)},
        {"pole_residual", format_double(res.pole_residual)},
        {"seed_epsilon_r", format_double(seed.epsilon_r)},
        {"seed_gamma0", format_double(seed.gamma0)},
    };
}

int cmd_ldos(const Cli& cli) {
    const RunConfig cfg = make_config(cli);
    const auto& sub = cfg.system.substrate;
    const int n = 4000;
    std::ofstream out(out_path(cfg, "ldos.csv"));
    if (!out) throw DomainError("cannot write ldos.csv");
    out << "e,n0,n1_substrate\n";
    for (int i = 0; i < n; ++i) {
        const double pad = 0.02 * sub.bandwidth();
        const double e = sub.band_min() - pad + (sub.bandwidth() + 2 * pad) * (i + 0.5) / n;
        double n0 = 0.0, n1 = 0.0;
        try {
            n0 = ldos0(e, cfg.system);
            n1 = substrate_ldos(e, sub);
        } catch (const SingularityError&) {
            continue;  // skip the exact van Hove sample
        }
        out << format_double(e) << ',' << format_double(n0) << ',' << format_double(n1) << '\n';
    }
    note(cli, "wrote " + out_path(cfg, "ldos.csv"));
    return kExitOk;
}

int cmd_pole(const Cli& cli) {
    const RunConfig cfg = make_config(cli);
    const Resonance res = find_pole(cfg.system);
    emit_report(pole_report(cfg.system, res), out_path(cfg, "pole.txt"));
    note(cli, "epsilon_r = " + format_double(res.epsilon_r) +
                  ", gamma0 = " + format_double(res.gamma0) +
                  ", |a|^2 = " + format_double(std::norm(res.residue_a)));
    return kExitOk;
}

int cmd_survival(const Cli& cli) {
    const RunConfig cfg = make_config(cli);
    const auto times = cfg.time_grid();
    DynamicsOptions opt{cfg.quadrature_tol};

    std::vector<SurvivalSeries> runs;
    if (cfg.run_direct) runs.push_back(survival_direct(cfg.system, times, opt));
    if (cfg.run_decomposed || cfg.run_long_time) {
        const Resonance res = find_pole(cfg.system);
        if (cfg.run_decomposed) runs.push_back(survival_decomposed(cfg.system, res, times, opt));
        if (cfg.run_long_time) runs.push_back(long_time_asymptote(cfg.system, res, times, opt));
    }
    if (cfg.run_short_time) runs.push_back(short_time(cfg.system, times));

    for (const auto& s : runs) {
        const std::string name = "survival_" + method_name(s.method) + ".csv";
        emit_csv(s, out_path(cfg, name));
        note(cli, "wrote " + out_path(cfg, name));
    }

    // cross-method comparison of the two exact routes
    const SurvivalSeries* direct = nullptr;
    const SurvivalSeries* decomposed = nullptr;
    for (const auto& s : runs) {
        if (s.method == Method::Direct) direct = &s;
        if (s.method == Method::Decomposed) decomposed = &s;
    }
    if (direct && decomposed) {
        std::ofstream out(out_path(cfg, "survival_compare.csv"));
        out << "t,p00_direct,p00_decomposed,abs_diff\n";
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double d = std::abs(direct->p00[i] - decomposed->p00[i]);
            worst = std::max(worst, d);
            out << format_double(times[i]) << ',' << format_double(direct->p00[i]) << ','
                << format_double(decomposed->p00[i]) << ',' << format_double(d) << '\n';
        }
        note(cli, "max |direct - decomposed| = " + format_double(worst));
    }
    return kExitOk;
}

// dense linear grid helper
std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = a + (b - a) * i / static_cast<double>(n - 1);
    return t;
}

struct RegimeOutput {
    RegimeReport report;
    SurvivalSeries main_series;
    double dip_window_lo = 0.0, dip_window_hi = 0.0;
    SurvivalSeries dip_series;
    SurvivalSeries tail_series;
};

RegimeOutput run_regimes(const RunConfig& cfg) {
    RegimeOutput out;
    const Resonance res = find_pole(cfg.system);
    DynamicsOptions opt{cfg.quadrature_tol};

    const auto times = cfg.time_grid();
    out.main_series = survival_decomposed(cfg.system, res, times, opt);
    DecomposedEvaluator ev(cfg.system, res, std::max(times.front(), 1e-4), opt);

    RegimeReport& rep = out.report;
    const TsEstimate ts = estimate_ts(cfg.system, res);
    rep.t_s = ts.closed_form;
    rep.t_s_numerical = ts.numerical;
    rep.t_r = estimate_tr(ev, out.main_series);

    // exponential window, truncated before t_R
    const double lo = cfg.exp_window_lo / res.gamma0;
    const double hi = std::min(cfg.exp_window_hi / res.gamma0, cfg.exp_window_tr_fraction * rep.t_r);
    if (hi <= lo)
        throw DomainError("regimes: exponential window is empty; t_R too small for the fit");
    const ExpFit ef = fit_exponential(out.main_series, lo, hi);
    rep.fitted_rate = ef.rate;
    rep.fitted_prefactor = ef.prefactor;

    // dense linear refinement around t_R for the collapse (x50 local density)
    const double span = 8.0 * 2.0 * std::numbers::pi / cfg.system.substrate.bandwidth();
    out.dip_window_lo = std::max(times.front(), rep.t_r - span);
    out.dip_window_hi = rep.t_r + 2.0 * span;
    const double base_step =
        (out.dip_window_hi - out.dip_window_lo) / std::max(8.0, times.size() * 0.05);
    const int dip_points =
        std::clamp(static_cast<int>((out.dip_window_hi - out.dip_window_lo) / base_step * 50), 800,
                   20000);
    out.dip_series = survival_decomposed(
        cfg.system, res, linspace(out.dip_window_lo, out.dip_window_hi, dip_points), opt);
    rep.dips = detect_collapse(ev, out.dip_series);
    for (auto& dip : rep.dips) check_collapse_phase(ev, cfg.system, dip);

    // dense tail for the power law and the modulation
    const double bw = cfg.system.substrate.bandwidth();
    const double tail_lo = cfg.tail_window_lo * rep.t_r;
    const double tail_hi = cfg.tail_window_hi * rep.t_r;
    const int tail_points = std::clamp(
        static_cast<int>((tail_hi - tail_lo) / (2.0 * std::numbers::pi / bw) * 14.0), 2000, 60000);
    out.tail_series =
        survival_decomposed(cfg.system, res, linspace(tail_lo, tail_hi, tail_points), opt);
    const PowerFit pf = fit_power_law(out.tail_series, tail_lo, tail_hi);
    rep.tail_exponent = pf.exponent;
    const ModulationFit mf = fit_modulation(out.tail_series, bw);
    rep.modulation_freq = mf.freq;
    rep.modulation_freq_half = mf.freq_half;
    return out;
}

int cmd_regimes(const Cli& cli) {
    const RunConfig cfg = make_config(cli);
    const RegimeOutput out = run_regimes(cfg);
    const RegimeReport& rep = out.report;

    std::vector<std::pair<std::string, std::string>> kv{
        {"t_s_closed_form", format_double(rep.t_s)},
        {"t_s_numerical", format_double(rep.t_s_numerical)},
        {"t_r", format_double(rep.t_r)},
        {"fitted_rate", format_double(rep.fitted_rate)},
        {"fitted_prefactor", format_double(rep.fitted_prefactor)},
        {"tail_exponent", format_double(rep.tail_exponent)},
        {"modulation_freq", format_double(rep.modulation_freq)},
        {"modulation_freq_half", format_double(rep.modulation_freq_half)},
        {"dip_count", std::to_string(rep.dips.size())},
    };
    for (std::size_t i = 0; i < rep.dips.size(); ++i) {
        const auto& d = rep.dips[i];
        const std::string p = "dip" + std::to_string(i) + "_";
        kv.emplace_back(p + "t", format_double(d.t_dip));
        kv.emplace_back(p + "depth", format_double(d.depth));
        kv.emplace_back(p + "phase_residual", format_double(d.phase_residual));
        kv.emplace_back(p + "phase_residual_beta_model",
                        format_double(d.phase_residual_beta_model));
    }
    emit_report(kv, out_path(cfg, "regimes.txt"));
    emit_csv(out.main_series, out_path(cfg, "regimes_series.csv"));
    emit_csv(out.dip_series, out_path(cfg, "regimes_dip_window.csv"));
    note(cli, "t_R = " + format_double(rep.t_r) + ", tail exponent = " +
                  format_double(rep.tail_exponent) + ", dips: " + std::to_string(rep.dips.size()));
    return kExitOk;
}

int cmd_oracle(const Cli& cli) {
    const RunConfig cfg = make_config(cli);
    const auto times = cfg.time_grid();
    const FiniteLattice lat = FiniteLattice::centered(cfg.lattice_size, cfg.system);
    const double window = reflection_time(lat);
    if (times.back() > window * (1.0 + 1e-12)) {
        std::cerr << "oracle: t_max = " << times.back() << " exceeds the reflection window "
                  << window << " of L = " << lat.size
                  << "; need L >= " << required_size(cfg.system, times.back()) << "\n";
        return kExitDomain;
    }
    const SurvivalSeries oracle = propagate(lat, times);
    const SurvivalSeries direct = survival_direct(cfg.system, times, {cfg.quadrature_tol});
    emit_csv(oracle, out_path(cfg, "oracle.csv"));
    std::ofstream out(out_path(cfg, "oracle_compare.csv"));
    out << "t,p00_oracle,p00_direct,abs_diff\n";
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double d = std::abs(oracle.p00[i] - direct.p00[i]);
        worst = std::max(worst, d);
        out << format_double(times[i]) << ',' << format_double(oracle.p00[i]) << ','
            << format_double(direct.p00[i]) << ',' << format_double(d) << '\n';
    }
    note(cli, "max |oracle - direct| = " + format_double(worst));
    return kExitOk;
}

int cmd_figure2(const Cli& cli) {
    const RunConfig cfg = make_config(cli);
    const RegimeOutput out = run_regimes(cfg);

    // merge the dip refinement into the plotted curve
    std::vector<double> t = out.main_series.times;
    std::vector<double> p = out.main_series.p00;
    for (std::size_t i = 0; i < out.dip_series.size(); ++i) {
        t.push_back(out.dip_series.times[i]);
        p.push_back(out.dip_series.p00[i]);
    }
    std::vector<std::size_t> order(t.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return t[a] < t[b]; });

    SvgFigure fig;
    fig.title = "survival probability P00, eps0/V = " + format_double(cfg.system.epsilon0) +
                ", V0/V = " + format_double(cfg.system.v0);
    SvgCurve curve;
    for (auto i : order) {
        if (i < t.size() && (curve.t.empty() || t[i] > curve.t.back())) {
            curve.t.push_back(t[i]);
            curve.p.push_back(p[i]);
        }
    }
    curve.label = "decomposed";
    fig.curves.push_back(std::move(curve));
    fig.marker_t = out.report.t_r;
    fig.marker_label = "t_R";

    // inset: the tail modulation over a few periods
    const double bw = cfg.system.substrate.bandwidth();
    const double period = 2.0 * std::numbers::pi / bw;
    fig.has_inset = true;
    const double in_lo = out.tail_series.times.front();
    const double in_hi = std::min(in_lo + 6.0 * period * 2.0, out.tail_series.times.back());
    for (std::size_t i = 0; i < out.tail_series.size(); ++i) {
        const double ti = out.tail_series.times[i];
        if (ti < in_lo || ti > in_hi) continue;
        fig.inset.t.push_back(ti);
        fig.inset.p.push_back(out.tail_series.p00[i] * ti * ti);  // detrended by t^2
    }
    fig.inset.title = "tail modulation: t^2 P00(t)";

    emit_svg(fig, out_path(cfg, "figure2.svg"));
    emit_csv(out.main_series, out_path(cfg, "figure2_series.csv"));
    emit_csv(out.dip_series, out_path(cfg, "figure2_dip_window.csv"));
    // machine-readable marker data; principal dip = deepest
    const CollapseDip* principal = nullptr;
    for (const auto& d : out.report.dips)
        if (!principal || d.depth > principal->depth) principal = &d;
    emit_report(
        {
            {"t_r", format_double(out.report.t_r)},
            {"principal_dip_t", format_double(principal ? principal->t_dip : 0.0)},
            {"principal_dip_depth", format_double(principal ? principal->depth : 0.0)},
        },
        out_path(cfg, "figure2_markers.txt"));
    note(cli, "wrote " + out_path(cfg, "figure2.svg"));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"survival-probability dynamics of a lattice add atom"};
    app.require_subcommand(1);

    Cli cli;
    app.add_option("--config", cli.config_path, "configuration file");
    app.add_option("--out", cli.out_dir, "output directory (overrides config)");
    app.add_flag("--quiet", cli.quiet, "suppress progress notes");

    auto* ldos = app.add_subcommand("ldos", "emit N0 and substrate LDoS grids");
    auto* pole = app.add_subcommand("pole", "locate the second-sheet pole");
    auto* surv = app.add_subcommand("survival", "survival series per enabled method");
    auto* regimes = app.add_subcommand("regimes", "regime boundaries, fits, collapse dips");
    auto* oracle = app.add_subcommand("oracle", "finite-lattice propagation vs direct method");
    auto* figure2 = app.add_subcommand("figure2", "one-shot log-log figure with t_R marker");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ldos->parsed()) return cmd_ldos(cli);
        if (pole->parsed()) return cmd_pole(cli);
        if (surv->parsed()) return cmd_survival(cli);
        if (regimes->parsed()) return cmd_regimes(cli);
        if (oracle->parsed()) return cmd_oracle(cli);
        if (figure2->parsed()) return cmd_figure2(cli);
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical non-convergence: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const BoundStateError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const SingularityError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}
