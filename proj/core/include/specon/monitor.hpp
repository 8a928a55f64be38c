#pragma once

#include <specon/model.hpp>

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace specon {

/// Absolute change between two normalized evaluation values.
double growth(double e_prev, double e_curr);

enum class GrowthCase : std::uint8_t {
    Slowing,   // G below both the previous growth and alpha
    Bouncing,  // G below alpha but not below the previous growth (or G == alpha)
    Surge,     // G above alpha
};

struct Transition {
    GrowthCase growth_case;
    Category next;
    bool confirms_converged;  // already CC and slowing again
};

/// One step of the PC/WC/CC state machine. `g_prev` is empty until two
/// growth values exist, which keeps the Slowing case unreachable.
Transition classify(Category current, double g_now, std::optional<double> g_prev, double alpha);

struct EvalTrace {
    ContainerId container;
    std::vector<std::pair<double, double>> samples;  // (time, raw evaluation value)
    std::vector<std::pair<double, double>> growths;  // (time, normalized growth)
};

struct ReallocationRequest {
    ContainerId container;
    WorkerId worker;
    double time{0.0};
};

struct CategoryChange {
    ContainerId container;
    Category from;
    Category to;
    double time{0.0};
};

struct TickResult {
    std::vector<CategoryChange> changes;
    std::vector<ReallocationRequest> requests;
};

/// Reads the raw evaluation value of a container at the given time.
using EvaluationSource = std::function<double(const ContainerState&, double)>;

/// Worker-side container monitor: samples each eligible resident once per
/// categorization interval and drives its category.
class ContainerMonitor {
public:
    ContainerMonitor(WorkerId worker, MonitorConfig config);

    WorkerId worker() const { return worker_; }
    const MonitorConfig& config() const { return config_; }
    double next_tick() const { return next_tick_; }

    /// Runs one categorization round at `now`, applying category changes to
    /// the cluster. Advances the next tick by exactly one interval.
    TickResult tick(ClusterState& cluster, double now, const EvaluationSource& source);

    const EvalTrace* trace(ContainerId id) const;

private:
    struct Track {
        double first_raw{0.0};
        double last_e{1.0};
        std::optional<double> last_g;
        EvalTrace trace;
    };

    WorkerId worker_;
    MonitorConfig config_;
    double next_tick_;
    std::map<ContainerId, Track> tracks_;
};

}  // namespace specon
