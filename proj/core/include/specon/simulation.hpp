#pragma once

#include <specon/event.hpp>
#include <specon/model.hpp>
#include <specon/monitor.hpp>
#include <specon/overhead.hpp>
#include <specon/rebalancer.hpp>
#include <specon/rng.hpp>
#include <specon/scheduler.hpp>
#include <specon/workload.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace specon {

struct ClusterSpec {
    std::size_t workers{4};
    double cpu_capacity{16.0};
    double reserved_fraction{0.2};
};

struct SimulationSetup {
    ClusterSpec cluster;
    SubmissionSchedule schedule;
    MonitorConfig monitor;
    SchedulerConfig scheduler;
    OverheadModel overhead;
    Policy policy{Policy::SpeCon};
    std::uint64_t seed{0};
    double heartbeat_delay{0.0};  // worker -> manager request latency
    double read_delay{0.0};       // staleness of evaluation values read by the monitor
    bool record_timeline{true};
};

struct TimelineSample {
    double time{0.0};
    std::size_t containers{0};
    double cpu_fraction{0.0};
};

struct MigrationRecord {
    ContainerId container;
    WorkerId from;
    WorkerId to;
    double start{0.0};
    double end{0.0};
    double progress_at_start{0.0};
    double progress_at_end{0.0};
    bool rebalance{false};
    bool finished{false};
};

struct RunRecord {
    std::vector<ContainerState> containers;  // final state, id order
    EventLog log;
    std::map<WorkerId, std::vector<TimelineSample>> timelines;
    std::vector<PlacementDecision> decisions;
    std::vector<RebalanceRound> rebalance_rounds;
    std::vector<CategoryChange> category_changes;
    std::vector<MigrationRecord> migrations;
    bool finished{false};
    double end_time{0.0};
};

/// Sustained iteration rate of a container given its current allocation.
double iteration_rate(const ContainerState& container);

/// Integrates progress of every running container over `dt` seconds at its
/// current allocation. Containers in transit do not progress.
void advance(ClusterState& cluster, double dt);

double completion_time(const ContainerState& container);
double makespan(const RunRecord& record);
double average_completion(const RunRecord& record);

/// Discrete-event simulation of one scenario. Single-threaded; distinct
/// instances share no state.
class Simulation {
public:
    explicit Simulation(SimulationSetup setup);

    /// Runs to quiescence and returns the record.
    RunRecord run();

    /// Processes the next event. Returns false once every job has completed.
    bool step();

    bool finished() const;
    const ClusterState& cluster() const { return cluster_; }
    const RunRecord& record() const { return record_; }
    const SimulationSetup& setup() const { return setup_; }
    const ContainerMonitor& monitor(WorkerId id) const { return monitors_.at(id); }

    /// Pauses `id` and moves it to `to`, resuming after a sampled checkpoint
    /// delay. Moving to the current host is a no-op; completed containers
    /// are ignored with a warning.
    void schedule_migration(ContainerId id, WorkerId to, bool rebalance);

    /// Evaluation value of a container as read by the monitor at time t.
    double observe(const ContainerState& container, double t) const;

private:
    void handle(const SimEvent& event);
    void on_submission(const SimEvent& event);
    void on_tick(const SimEvent& event);
    void on_request(const ReallocationRequest& request);
    void on_migration_complete(const SimEvent& event);
    void on_completion(const SimEvent& event);
    void on_rebalance(const SimEvent& event);

    void reallocate(WorkerId worker);
    void record_progress(const ContainerState& c);
    double progress_at(const ContainerState& c, double t) const;
    void sample_timelines_until(double t);
    void log(EventKind kind, std::optional<ContainerId> c, std::optional<WorkerId> w,
             std::string detail);

    SimulationSetup setup_;
    ClusterState cluster_;
    EventQueue queue_;
    RunRecord record_;
    StreamKey root_;
    Rng overhead_rng_;
    ClippedNormal overhead_;
    std::map<WorkerId, ContainerMonitor> monitors_;
    SpeculativeScheduler scheduler_;
    std::map<ContainerId, ModelProfile> profiles_;
    std::map<ContainerId, StreamKey> noise_;
    std::map<ContainerId, std::uint64_t> epochs_;
    std::map<ContainerId, std::size_t> open_migration_;
    std::map<ContainerId, std::vector<std::pair<double, double>>> progress_log_;
    std::size_t submitted_{0};
    std::size_t completed_{0};
    std::size_t rebalances_in_flight_{0};
    double next_sample_{0.0};
};

}  // namespace specon
