#ifndef SURVIVAL_CSV_HPP
#define SURVIVAL_CSV_HPP

#include <string>
#include <utility>
#include <vector>

#include "survival/types.hpp"

namespace survival {

// Fixed schema: t,p00,re_psi_s,im_psi_s,re_psi_r,im_psi_r,method
// Floats carry 17 significant digits so a re-read is bit exact.
void emit_csv(const SurvivalSeries& series, const std::string& path);

// Re-reads a series written by emit_csv (tests and downstream tooling).
SurvivalSeries read_csv(const std::string& path);

// key = value report (pole parameters, regime report)
void emit_report(const std::vector<std::pair<std::string, std::string>>& kv,
                 const std::string& path);

std::string format_double(double v);  // %.17g

}  // namespace survival

#endif
