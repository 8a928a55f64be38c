#pragma once

#include <specon/model.hpp>
#include <specon/monitor.hpp>

#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

namespace specon {

enum class Policy : std::uint8_t { SpeCon, DS };

std::string_view to_string(Policy policy);
Policy parse_policy(std::string_view text);

using ScoreTable = std::map<WorkerId, double>;
using ConsumptionTable = std::map<WorkerId, double>;

/// |PC|*w_pc + |WC|*w_wc + |CC|*w_cc per worker over active containers.
ScoreTable score_workers(const ClusterState& cluster, const SchedulerConfig& config);

ConsumptionTable consumption_table(const ClusterState& cluster);

/// Workers attaining the minimum score, in id order. Scores within a
/// relative 1e-12 of the minimum count as tied so that uniformly rescaled
/// weights produce the same set.
std::vector<WorkerId> candidate_set(const ScoreTable& scores);

struct Placement {
    bool stay{true};
    WorkerId target;
};

/// Pure placement rule: stay if the current host is a candidate, otherwise
/// the sole candidate, otherwise the candidate with the lowest consumption
/// (lowest id on exact ties).
Placement choose_target(WorkerId current, const ScoreTable& scores,
                        const ConsumptionTable& consumption);

struct PlacementDecision {
    double time{0.0};
    ContainerId container;
    WorkerId from;
    Placement placement;
    ScoreTable scores;
    ConsumptionTable consumption;
};

/// Manager-side speculative scheduler. Handles each container at most once;
/// repeated or stale requests are dropped.
class SpeculativeScheduler {
public:
    explicit SpeculativeScheduler(SchedulerConfig config);

    const SchedulerConfig& config() const { return config_; }

    /// Decides the request against the current cluster state and marks the
    /// container migrated. The caller carries out a migrate decision.
    std::optional<PlacementDecision> select_target(const ReallocationRequest& request,
                                                   ClusterState& cluster);

    bool handled(ContainerId id) const { return handled_.contains(id); }

private:
    SchedulerConfig config_;
    std::set<ContainerId> handled_;
};

/// Round-robin by submission order: job k goes to worker k mod n_workers.
WorkerId initial_worker(std::size_t job_index, std::size_t n_workers);
std::vector<WorkerId> initial_placement(std::size_t n_jobs, std::size_t n_workers);

}  // namespace specon
