#ifndef DEADLINE_REPORT_HPP
#define DEADLINE_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "network.hpp"
#include "pmf.hpp"

namespace deadline {

/// 17 significant digits: enough to reproduce any double bit-for-bit.
/// NaN renders as an empty CSV field.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// `t,cdf_lower,cdf_upper`, one row per point of the merged bracket supports.
inline void write_cdf_csv(std::ostream& out, const CdfBracket& b) {
    std::vector<double> grid(b.lower.support().begin(), b.lower.support().end());
    grid.insert(grid.end(), b.upper.support().begin(), b.upper.support().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const StepCdf lower(b.lower);
    const StepCdf upper(b.upper);
    out << "t,cdf_lower,cdf_upper\n";
    for (double t : grid) {
        out << format_double(t) << ',' << format_double(lower(t)) << ',' << format_double(upper(t)) << '\n';
    }
}

} // namespace deadline

#endif
