#include "survival/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace survival {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw DomainError("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& v, int line, const std::string& key) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (...) {
        fail(line, "invalid number for " + key);
    }
    if (pos != v.size()) fail(line, "trailing characters after number for " + key);
    return out;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    fail(line, "expected true/false for " + key);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> RunConfig::time_grid() const {
    std::vector<double> t(points);
    if (geometric) {
        const double r = std::log(t_max / t_min) / (points - 1);
        for (int i = 0; i < points; ++i) t[i] = t_min * std::exp(r * i);
    } else {
        for (int i = 0; i < points; ++i)
            t[i] = t_min + (t_max - t_min) * i / static_cast<double>(points - 1);
    }
    t.back() = t_max;
    return t;
}

void RunConfig::validate() const {
    system.validate();
    if (!(t_min >= 0.0)) throw DomainError("config: t_min must be >= 0");
    if (!(t_max > t_min)) throw DomainError("config: t_max must exceed t_min");
    if (geometric && !(t_min > 0.0)) throw DomainError("config: geometric spacing needs t_min > 0");
    if (points < 2) throw DomainError("config: points must be >= 2");
    if (!(quadrature_tol > 0.0) || !(newton_tol > 0.0))
        throw DomainError("config: tolerances must be positive");
    if (lattice_size < 32) throw DomainError("config: lattice_size must be >= 32");
    if (!(exp_window_lo > 0.0) || !(exp_window_hi > exp_window_lo) ||
        !(exp_window_tr_fraction > 0.0))
        throw DomainError("config: invalid exponential fit window");
    if (!(tail_window_lo > 0.0) || !(tail_window_hi > tail_window_lo))
        throw DomainError("config: invalid tail fit window");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool onsite_set = false;
    double onsite_value = 0.0;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "system" && section != "time" && section != "methods" &&
                section != "oracle" && section != "output" && section != "tolerances")
                fail(line, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (val.empty()) fail(line, "empty value for " + key);
        if (section.empty()) fail(line, "key outside any [section]");

        if (section == "system") {
            if (key == "substrate") {
                if (val == "square2d")
                    cfg.system.substrate.kind = SubstrateKind::Square2D;
                else if (val == "chain")
                    cfg.system.substrate.kind = SubstrateKind::SemiInfiniteChain;
                else
                    fail(line, "substrate must be square2d or chain");
            } else if (key == "epsilon0")
                cfg.system.epsilon0 = parse_number(val, line, key);
            else if (key == "v0") {
                cfg.system.v0 = parse_number(val, line, key);
                if (cfg.system.v0 < 0.0) fail(line, "domain violation: v0 must be >= 0");
            } else if (key == "hopping") {
                cfg.system.substrate.hopping = parse_number(val, line, key);
                if (!(cfg.system.substrate.hopping > 0.0))
                    fail(line, "domain violation: hopping must be > 0");
            } else if (key == "onsite") {
                onsite_value = parse_number(val, line, key);
                onsite_set = true;
            } else
                fail(line, "unknown key " + key + " in [system]");
        } else if (section == "time") {
            if (key == "t_min")
                cfg.t_min = parse_number(val, line, key);
            else if (key == "t_max")
                cfg.t_max = parse_number(val, line, key);
            else if (key == "points")
                cfg.points = static_cast<int>(parse_number(val, line, key));
            else if (key == "spacing") {
                if (val == "geometric")
                    cfg.geometric = true;
                else if (val == "linear")
                    cfg.geometric = false;
                else
                    fail(line, "spacing must be linear or geometric");
            } else
                fail(line, "unknown key " + key + " in [time]");
        } else if (section == "methods") {
            if (key == "direct")
                cfg.run_direct = parse_bool(val, line, key);
            else if (key == "decomposed")
                cfg.run_decomposed = parse_bool(val, line, key);
            else if (key == "short_time")
                cfg.run_short_time = parse_bool(val, line, key);
            else if (key == "long_time")
                cfg.run_long_time = parse_bool(val, line, key);
            else
                fail(line, "unknown key " + key + " in [methods]");
        } else if (section == "oracle") {
            if (key == "enabled")
                cfg.oracle_enabled = parse_bool(val, line, key);
            else if (key == "lattice_size")
                cfg.lattice_size = static_cast<int>(parse_number(val, line, key));
            else
                fail(line, "unknown key " + key + " in [oracle]");
        } else if (section == "output") {
            if (key == "directory")
                cfg.out_dir = val;
            else
                fail(line, "unknown key " + key + " in [output]");
        } else if (section == "tolerances") {
            if (key == "quadrature")
                cfg.quadrature_tol = parse_number(val, line, key);
            else if (key == "newton")
                cfg.newton_tol = parse_number(val, line, key);
            else if (key == "exp_window_lo")
                cfg.exp_window_lo = parse_number(val, line, key);
            else if (key == "exp_window_hi")
                cfg.exp_window_hi = parse_number(val, line, key);
            else if (key == "exp_window_tr_fraction")
                cfg.exp_window_tr_fraction = parse_number(val, line, key);
            else if (key == "tail_window_lo")
                cfg.tail_window_lo = parse_number(val, line, key);
            else if (key == "tail_window_hi")
                cfg.tail_window_hi = parse_number(val, line, key);
            else
                fail(line, "unknown key " + key + " in [tolerances]");
        }
    }

    // substrate-dependent onsite default and override
    if (cfg.system.substrate.kind == SubstrateKind::Square2D) {
        if (onsite_set) throw DomainError("config: onsite is fixed at 4V for square2d");
        cfg.system.substrate.onsite = 4.0 * cfg.system.substrate.hopping;
    } else {
        cfg.system.substrate.onsite = onsite_set ? onsite_value : 0.0;
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[system]\n";
    out << "substrate = "
        << (cfg.system.substrate.kind == SubstrateKind::Square2D ? "square2d" : "chain") << "\n";
    out << "epsilon0 = " << fmt(cfg.system.epsilon0) << "\n";
    out << "v0 = " << fmt(cfg.system.v0) << "\n";
    out << "hopping = " << fmt(cfg.system.substrate.hopping) << "\n";
    if (cfg.system.substrate.kind == SubstrateKind::SemiInfiniteChain)
        out << "onsite = " << fmt(cfg.system.substrate.onsite) << "\n";
    out << "\n[time]\n";
    out << "t_min = " << fmt(cfg.t_min) << "\n";
    out << "t_max = " << fmt(cfg.t_max) << "\n";
    out << "points = " << cfg.points << "\n";
    out << "spacing = " << (cfg.geometric ? "geometric" : "linear") << "\n";
    out << "\n[methods]\n";
    out << "direct = " << (cfg.run_direct ? "true" : "false") << "\n";
    out << "decomposed = " << (cfg.run_decomposed ? "true" : "false") << "\n";
    out << "short_time = " << (cfg.run_short_time ? "true" : "false") << "\n";
    out << "long_time = " << (cfg.run_long_time ? "true" : "false") << "\n";
    out << "\n[oracle]\n";
    out << "enabled = " << (cfg.oracle_enabled ? "true" : "false") << "\n";
    out << "lattice_size = " << cfg.lattice_size << "\n";
    out << "\n[output]\n";
    out << "directory = " << cfg.out_dir << "\n";
    out << "\n[tolerances]\n";
    out << "quadrature = " << fmt(cfg.quadrature_tol) << "\n";
    out << "newton = " << fmt(cfg.newton_tol) << "\n";
    out << "exp_window_lo = " << fmt(cfg.exp_window_lo) << "\n";
    out << "exp_window_hi = " << fmt(cfg.exp_window_hi) << "\n";
    out << "exp_window_tr_fraction = " << fmt(cfg.exp_window_tr_fraction) << "\n";
    out << "tail_window_lo = " << fmt(cfg.tail_window_lo) << "\n";
    out << "tail_window_hi = " << fmt(cfg.tail_window_hi) << "\n";
    return out.str();
}

}  // namespace survival
