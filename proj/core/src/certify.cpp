#include "framemul/certify.hpp"

#include <algorithm>
#include <cmath>

namespace framemul {

BoundCertificate make_certificate(std::string name, double claimed, double measured,
                                  double slack_rel, double slack_abs) {
    BoundCertificate c;
    c.name = std::move(name);
    c.claimed = claimed;
    c.measured = measured;
    c.margin = claimed - measured;
    c.holds = measured <= claimed + slack_rel * std::abs(claimed) + slack_abs;
    return c;
}

bool ConvergenceTable::all_hold(double slack_rel, double slack_abs) const {
    return std::all_of(rows.begin(), rows.end(), [&](const ConvergenceRow& r) {
        return r.measured <= r.bound + slack_rel * std::abs(r.bound) + slack_abs;
    });
}

std::vector<double> ConvergenceTable::monotone_envelope() const {
    std::vector<double> env(rows.size());
    double running = rows.empty() ? 0.0 : rows.front().measured;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        running = std::min(running, rows[i].measured);
        env[i] = running;
    }
    return env;
}

} // namespace framemul
