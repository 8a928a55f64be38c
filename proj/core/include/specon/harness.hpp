#pragma once

#include <specon/config.hpp>
#include <specon/report.hpp>

#include <vector>

namespace specon {

/// Executes one scenario to quiescence.
RunReport run(const ScenarioConfig& config);

struct ComparisonRun {
    RunReport specon;
    RunReport ds;
    Comparison comparison;
};

/// Runs the scenario under both policies with the same seed and schedule.
/// The SpeCon report carries the share of jobs improved vs. DS.
ComparisonRun compare(const ScenarioConfig& config);

/// One comparison per grid point and seed (seeds base, base+1, ...). Points
/// may run concurrently; rows come back in grid order.
std::vector<SweepRow> sweep(const ScenarioConfig& base, const SweepGrid& grid,
                            bool parallel = true);

}  // namespace specon
