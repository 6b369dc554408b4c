#include "survival/types.hpp"

namespace survival {

std::string method_name(Method m) {
    switch (m) {
        case Method::Direct: return "direct";
        case Method::Decomposed: return "decomposed";
        case Method::ShortTime: return "short_time";
        case Method::LongTime: return "long_time";
        case Method::Oracle: return "oracle";
    }
    return "unknown";
}

void SurvivalSeries::validate() const {
    if (times.size() != p00.size() || times.size() != psi_s.size() || times.size() != psi_r.size())
        throw DomainError("SurvivalSeries: inconsistent array lengths");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i] > times[i - 1]))
            throw DomainError("SurvivalSeries: times must be strictly increasing");
        if (!(p00[i] >= -1e-12))
            throw DomainError("SurvivalSeries: negative probability at t = " +
                              std::to_string(times[i]));
        if (method != Method::LongTime && p00[i] > 1.0 + 1e-9)
            throw DomainError("SurvivalSeries: unitarity bound violated at t = " +
                              std::to_string(times[i]));
    }
}

}  // namespace survival
