#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace specon {

/// Dense identifier assigned in submission order. Ordering is used for every
/// deterministic tie-break in the simulator.
struct ContainerId {
    std::uint32_t value{0};
    auto operator<=>(const ContainerId&) const = default;
};

struct WorkerId {
    std::uint32_t value{0};
    auto operator<=>(const WorkerId&) const = default;
};

enum class Category : std::uint8_t { Progressing, Watching, Converged };

std::string_view to_string(Category category);

class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ContainerState {
    ContainerId id;
    WorkerId host;
    std::string model_profile;
    std::uint64_t total_iterations{0};
    double completed_iterations{0.0};
    Category category{Category::Progressing};
    bool migrated{false};
    bool rebalanced{false};
    std::optional<double> converged_at;
    double submitted_at{0.0};
    std::optional<double> completed_at;
    double cpu_demand{0.0};

    // Engine bookkeeping.
    double base_iter_rate{0.0};  // iterations/s with cpu_demand fully granted
    double allocated_cores{0.0};
    bool in_transit{false};
    std::uint32_t migrations{0};

    bool completed() const { return completed_at.has_value(); }
};

struct WorkerState {
    WorkerId id;
    double cpu_capacity{16.0};
    double reserved_fraction{0.2};
    std::set<ContainerId> residents;
    std::set<ContainerId> pc_set;
    std::set<ContainerId> wc_set;
    std::set<ContainerId> cc_set;

    double usable_capacity() const { return cpu_capacity * (1.0 - reserved_fraction); }
    std::set<ContainerId>& set_for(Category category);
    const std::set<ContainerId>& set_for(Category category) const;
};

struct MonitorConfig {
    double alpha{0.01};
    double interval{30.0};

    void validate() const;
};

struct SchedulerConfig {
    double w_pc{2.0};
    double w_wc{1.5};
    double w_cc{1.0};

    void validate() const;
};

/// Owns every worker and container of a scenario. Mutations go through the
/// member functions so that the per-worker category sets stay a partition of
/// the active residents.
class ClusterState {
public:
    double now{0.0};

    WorkerId add_worker(double cpu_capacity, double reserved_fraction);

    /// Registers a submitted container on `host` in the Progressing category.
    /// Ids must be handed out densely in submission order.
    ContainerState& add_container(ContainerState container);

    bool has_worker(WorkerId id) const { return workers_.contains(id); }
    bool has_container(ContainerId id) const { return containers_.contains(id); }

    WorkerState& worker(WorkerId id);
    const WorkerState& worker(WorkerId id) const;
    ContainerState& container(ContainerId id);
    const ContainerState& container(ContainerId id) const;

    const std::map<WorkerId, WorkerState>& workers() const { return workers_; }
    const std::map<ContainerId, ContainerState>& containers() const { return containers_; }
    std::size_t worker_count() const { return workers_.size(); }

    void set_category(ContainerId id, Category category);

    /// Moves a container's residency to `to`. The container keeps its
    /// category; its allocation is cleared and it is flagged in transit.
    void relocate(ContainerId id, WorkerId to);

    void mark_completed(ContainerId id, double at);

    /// Active containers on the worker, in-transit arrivals included.
    std::size_t active_count(WorkerId id) const;

    /// Fraction of the worker's capacity allocated to its resident containers.
    double resource_consumption(WorkerId id) const;

    std::size_t active_total() const;

    /// Empty when all structural invariants hold, otherwise a description of
    /// the first violation found.
    std::optional<std::string> check_invariants() const;

private:
    std::map<WorkerId, WorkerState> workers_;
    std::map<ContainerId, ContainerState> containers_;
};

}  // namespace specon
