#pragma once

// Brute-force placement: argmin score, stay if the host is among the minima,
// else argmin R, else lowest id.

#include <cstddef>
#include <vector>

namespace oracle {

struct PlacementAnswer {
    bool stay;
    std::size_t target;
};

inline PlacementAnswer place(std::size_t host, const std::vector<double>& score,
                             const std::vector<double>& r) {
    double lo = score[0];
    for (double s : score) {
        if (s < lo) {
            lo = s;
        }
    }
    if (score[host] == lo) {
        return {true, host};
    }
    std::size_t best = score.size();
    for (std::size_t w = 0; w < score.size(); ++w) {
        if (score[w] != lo) {
            continue;
        }
        if (best == score.size() || r[w] < r[best]) {
            best = w;
        }
    }
    return {false, best};
}

}  // namespace oracle
