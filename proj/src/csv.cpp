#include "survival/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace survival {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_csv(const SurvivalSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path);
    out << "t,p00,re_psi_s,im_psi_s,re_psi_r,im_psi_r,method\n";
    const std::string name = method_name(series.method);
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_double(series.times[i]) << ',' << format_double(series.p00[i]) << ','
            << format_double(series.psi_s[i].real()) << ',' << format_double(series.psi_s[i].imag())
            << ',' << format_double(series.psi_r[i].real()) << ','
            << format_double(series.psi_r[i].imag()) << ',' << name << '\n';
    }
    if (!out) throw DomainError("write failed for " + path);
}

SurvivalSeries read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line != "t,p00,re_psi_s,im_psi_s,re_psi_r,im_psi_r,method")
        throw DomainError("unexpected CSV header in " + path);
    SurvivalSeries s;
    bool method_set = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double vals[6];
        for (int c = 0; c < 6; ++c) {
            if (!std::getline(row, cell, ',')) throw DomainError("short CSV row in " + path);
            vals[c] = std::stod(cell);
        }
        std::string name;
        std::getline(row, name);
        if (!method_set) {
            for (Method m : {Method::Direct, Method::Decomposed, Method::ShortTime,
                             Method::LongTime, Method::Oracle})
                if (method_name(m) == name) {
                    s.method = m;
                    method_set = true;
                }
            if (!method_set) throw DomainError("unknown method " + name + " in " + path);
        }
        s.times.push_back(vals[0]);
        s.p00.push_back(vals[1]);
        s.psi_s.emplace_back(vals[2], vals[3]);
        s.psi_r.emplace_back(vals[4], vals[5]);
    }
    return s;
}

void emit_report(const std::vector<std::pair<std::string, std::string>>& kv,
                 const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path);
    for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
    if (!out) throw DomainError("write failed for " + path);
}

}  // namespace survival
