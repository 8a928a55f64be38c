#pragma once

#include <specon/model.hpp>
#include <specon/overhead.hpp>
#include <specon/scheduler.hpp>
#include <specon/simulation.hpp>
#include <specon/workload.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace specon {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WorkloadSpec {
    std::size_t jobs{20};
    ScheduleSpec schedule;
    ProfileRule profiles;
    ProfileDefaults defaults;
};

/// Everything needed to reproduce one run bit for bit.
struct ScenarioConfig {
    std::string label{"scenario"};
    std::uint64_t seed{1};
    Policy policy{Policy::SpeCon};
    ClusterSpec cluster;
    WorkloadSpec workload;
    MonitorConfig monitor;
    double read_delay{0.0};
    SchedulerConfig scheduler;
    double heartbeat_delay{0.0};
    OverheadModel overhead;

    /// Throws ConfigError describing the first invalid field.
    void validate() const;
};

/// Parses the JSON scenario document. Every field is optional and falls back
/// to the defaults above. Unknown keys are rejected.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);
std::string dump_config(const ScenarioConfig& config);

SimulationSetup to_setup(const ScenarioConfig& config);

struct GridPoint {
    double alpha{0.01};
    double interval{30.0};
};

struct SweepGrid {
    std::vector<GridPoint> points;
    std::size_t seeds{1};
};

/// `{"points": [{"alpha": a, "interval": s}, ...], "seeds": n}`; the grid
/// must be nonempty.
SweepGrid parse_grid(std::string_view text);
SweepGrid load_grid(const std::filesystem::path& path);

}  // namespace specon
