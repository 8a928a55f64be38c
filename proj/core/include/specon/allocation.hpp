#pragma once

#include <span>
#include <vector>

namespace specon {

/// Max-min fair (water-filling) split of `usable_capacity` cores among
/// containers with the given positive demands. Nobody receives more than its
/// demand and the grants sum to min(sum of demands, usable_capacity).
std::vector<double> allocate_cpu(double usable_capacity, std::span<const double> demands);

}  // namespace specon
