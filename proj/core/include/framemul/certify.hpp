#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "framemul/tolerances.hpp"

namespace framemul {

// One verified inequality instance: claimed bound vs measured value.
struct BoundCertificate {
    std::string name;
    double claimed = 0.0;
    double measured = 0.0;
    double margin = 0.0;  // claimed - measured
    bool holds = false;
};

// holds iff measured <= claimed + slack_rel * |claimed| + slack_abs.
BoundCertificate make_certificate(std::string name, double claimed, double measured,
                                  double slack_rel = tol::kCertSlackRel,
                                  double slack_abs = tol::kAbs);

struct ConvergenceRow {
    std::size_t index = 0;   // step l, or kept-entry count N for truncation
    double epsilon = 0.0;    // distance in the experiment's metric
    double measured = 0.0;   // operator difference in the paired norm
    double bound = 0.0;
    double margin = 0.0;     // bound - measured
};

struct ConvergenceTable {
    std::string name;
    std::string norm;  // "op" | "hs" | "trace"
    std::vector<ConvergenceRow> rows;

    bool all_hold(double slack_rel = tol::kCertSlackRel, double slack_abs = tol::kAbs) const;
    // Non-increasing running envelope of the measured column.
    std::vector<double> monotone_envelope() const;
};

} // namespace framemul
