#ifndef SURVIVAL_CONFIG_HPP
#define SURVIVAL_CONFIG_HPP

#include <string>
#include <vector>

#include "survival/types.hpp"

namespace survival {

// Line-oriented key = value configuration with [section] headers and '#'
// comments. Unknown sections or keys are rejected with their line number.
// Defaults reproduce the reference setup eps0/V = 2, v0/V = 0.4 on the 2D
// square lattice.
struct RunConfig {
    // [system]
    AdatomSpec system{2.0, 0.4, SubstrateSpec::square2d()};

    // [time]
    double t_min = 0.01;
    double t_max = 250.0;
    int points = 600;
    bool geometric = true;

    // [methods]
    bool run_direct = true;
    bool run_decomposed = true;
    bool run_short_time = false;
    bool run_long_time = false;

    // [oracle]
    bool oracle_enabled = false;
    int lattice_size = 400;

    // [output]
    std::string out_dir = ".";

    // [tolerances]
    double quadrature_tol = 3e-10;
    double newton_tol = 1e-12;
    double exp_window_lo = 3.0;   // units of hbar/Gamma0
    double exp_window_hi = 30.0;  // units of hbar/Gamma0
    double exp_window_tr_fraction = 0.62;  // cap at this fraction of t_R
    double tail_window_lo = 1.3;  // units of t_R
    double tail_window_hi = 13.0;

    std::vector<double> time_grid() const;
    void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace survival

#endif
