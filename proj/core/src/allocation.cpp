#include <specon/allocation.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace specon {

std::vector<double> allocate_cpu(double usable_capacity, std::span<const double> demands) {
    if (usable_capacity < 0.0) {
        throw std::invalid_argument("usable capacity must be non-negative");
    }
    std::vector<std::size_t> order(demands.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return demands[a] < demands[b]; });

    std::vector<double> grant(demands.size(), 0.0);
    double remaining = usable_capacity;
    std::size_t left = demands.size();
    for (std::size_t idx : order) {
        if (!(demands[idx] > 0.0)) {
            throw std::invalid_argument("cpu demands must be positive");
        }
        double fair = remaining / static_cast<double>(left);
        grant[idx] = std::min(demands[idx], fair);
        remaining = std::max(remaining - grant[idx], 0.0);
        --left;
    }
    return grant;
}

}  // namespace specon
