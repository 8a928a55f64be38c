#pragma once

#include <specon/model.hpp>

#include <cstddef>
#include <map>
#include <string_view>
#include <vector>

namespace specon {

/// floor(sum / n_workers); throws on an empty cluster.
std::size_t balance_factor(std::size_t sum, std::size_t n_workers);

struct RebalanceSnapshot {
    double time{0.0};
    std::size_t sum{0};
    std::size_t bf{0};
    std::map<WorkerId, std::size_t> counts;     // active containers per worker
    std::map<ContainerId, double> durations;    // converged duration of each movable container
    std::map<ContainerId, WorkerId> hosts;      // host of each movable container
    std::vector<WorkerId> idle;                 // workers with no active container
};

enum class RebalanceReason : std::uint8_t { IdleFill, OverloadSpill };

std::string_view to_string(RebalanceReason reason);

struct RebalanceDirective {
    ContainerId container;
    WorkerId from;
    WorkerId to;
    double duration{0.0};
    std::size_t bf{0};
    RebalanceReason reason{RebalanceReason::IdleFill};
};

/// Movable containers are active, migrated, not yet rebalanced and not in
/// the middle of a checkpoint transfer.
RebalanceSnapshot take_snapshot(const ClusterState& cluster, double t);

/// Plans one rebalancing round from a snapshot.
///
/// With idle workers, each idle worker (id order) repeatedly takes the
/// movable container with the smallest converged duration until it holds bf
/// containers; a source must have had at least as many containers at
/// snapshot time as the destination will hold after the move.
///
/// Without idle workers, the targets are the workers holding fewer than
/// bf - 1 containers. Every other worker (id order) offers its movable
/// container with the smallest duration to the first target that still
/// holds fewer than bf and stays no larger than the source after the move.
std::vector<RebalanceDirective> plan_rebalance(const RebalanceSnapshot& snapshot);

struct RebalanceRound {
    RebalanceSnapshot snapshot;
    std::vector<RebalanceDirective> directives;
};

/// Snapshot, plan, and flag every moved container as rebalanced. The caller
/// performs the migrations.
RebalanceRound rebalance(ClusterState& cluster, double t);

}  // namespace specon
