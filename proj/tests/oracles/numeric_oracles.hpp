#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// Water-filling by brute force: hand out `step` cores at a time to the
// unsaturated container with the smallest grant (lowest index on ties)
// until capacity or every demand is exhausted.
inline std::vector<double> waterfill_steps(double capacity, const std::vector<double>& demand,
                                           double step = 1e-4) {
    std::vector<double> got(demand.size(), 0.0);
    double left = capacity;
    while (left > 1e-12) {
        std::size_t pick = demand.size();
        for (std::size_t i = 0; i < demand.size(); ++i) {
            if (got[i] + 1e-12 >= demand[i]) {
                continue;
            }
            if (pick == demand.size() || got[i] < got[pick]) {
                pick = i;
            }
        }
        if (pick == demand.size()) {
            break;
        }
        double d = std::min({step, left, demand[pick] - got[pick]});
        got[pick] += d;
        left -= d;
    }
    return got;
}

// Bisection on tau for 1 - exp(-0.2 * total / tau) = f. The left side is
// decreasing in tau.
inline double solve_tau(double total, double f) {
    auto reach = [&](double tau) { return 1.0 - std::exp(-0.2 * total / tau); };
    double lo = 1e-9;
    double hi = 1e12;
    for (int i = 0; i < 400; ++i) {
        double mid = std::sqrt(lo * hi);
        if (reach(mid) > f) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::sqrt(lo * hi);
}

}  // namespace oracle
