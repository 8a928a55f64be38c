#include <specon/rebalancer.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace specon {

std::size_t balance_factor(std::size_t sum, std::size_t n_workers) {
    if (n_workers == 0) {
        throw std::invalid_argument("balance factor needs at least one worker");
    }
    return sum / n_workers;
}

std::string_view to_string(RebalanceReason reason) {
    return reason == RebalanceReason::IdleFill ? "idle-fill" : "overload-spill";
}

RebalanceSnapshot take_snapshot(const ClusterState& cluster, double t) {
    RebalanceSnapshot snap;
    snap.time = t;
    for (const auto& [wid, w] : cluster.workers()) {
        std::size_t n = cluster.active_count(wid);
        snap.counts[wid] = n;
        snap.sum += n;
        if (n == 0) {
            snap.idle.push_back(wid);
        }
        for (ContainerId cid : w.residents) {
            const auto& c = cluster.container(cid);
            if (c.completed() || !c.migrated || c.rebalanced || c.in_transit) {
                continue;
            }
            snap.durations[cid] = t - *c.converged_at;
            snap.hosts[cid] = wid;
        }
    }
    snap.bf = balance_factor(snap.sum, cluster.worker_count());
    return snap;
}

namespace {

// Smallest duration among the remaining movable containers accepted by
// `eligible`, lowest id on ties.
template <typename Pred>
std::optional<ContainerId> min_duration(const std::map<ContainerId, double>& durations,
                                        Pred eligible) {
    std::optional<ContainerId> best;
    double best_d = 0.0;
    for (const auto& [cid, d] : durations) {
        if (!eligible(cid)) {
            continue;
        }
        if (!best || d < best_d) {
            best = cid;
            best_d = d;
        }
    }
    return best;
}

}  // namespace

std::vector<RebalanceDirective> plan_rebalance(const RebalanceSnapshot& snapshot) {
    std::vector<RebalanceDirective> out;
    auto counts = snapshot.counts;
    auto remaining = snapshot.durations;
    const std::size_t bf = snapshot.bf;

    auto move = [&](ContainerId cid, WorkerId to, RebalanceReason reason) {
        WorkerId from = snapshot.hosts.at(cid);
        out.push_back({cid, from, to, remaining.at(cid), bf, reason});
        remaining.erase(cid);
        --counts[from];
        ++counts[to];
    };

    if (!snapshot.idle.empty()) {
        for (WorkerId dst : snapshot.idle) {
            while (counts[dst] < bf) {
                auto pick = min_duration(remaining, [&](ContainerId cid) {
                    return snapshot.counts.at(snapshot.hosts.at(cid)) >= counts[dst] + 1;
                });
                if (!pick) {
                    break;
                }
                move(*pick, dst, RebalanceReason::IdleFill);
            }
        }
        return out;
    }

    std::vector<WorkerId> targets;
    for (const auto& [wid, n] : counts) {
        if (n + 1 < bf) {
            targets.push_back(wid);
        }
    }
    if (targets.empty()) {
        return out;
    }
    for (const auto& [src, n_src] : snapshot.counts) {
        (void)n_src;
        if (std::find(targets.begin(), targets.end(), src) != targets.end()) {
            continue;
        }
        auto pick = min_duration(remaining,
                                 [&](ContainerId cid) { return snapshot.hosts.at(cid) == src; });
        if (!pick) {
            continue;
        }
        for (WorkerId dst : targets) {
            if (counts[dst] < bf && counts[src] >= counts[dst] + 2) {
                move(*pick, dst, RebalanceReason::OverloadSpill);
                break;
            }
        }
    }
    return out;
}

RebalanceRound rebalance(ClusterState& cluster, double t) {
    RebalanceRound round;
    round.snapshot = take_snapshot(cluster, t);
    round.directives = plan_rebalance(round.snapshot);
    for (const auto& d : round.directives) {
        cluster.container(d.container).rebalanced = true;
    }
    return round;
}

}  // namespace specon
