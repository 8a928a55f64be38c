#include <specon/scheduler.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specon {

std::string_view to_string(Policy policy) {
    return policy == Policy::SpeCon ? "specon" : "ds";
}

Policy parse_policy(std::string_view text) {
    if (text == "specon") {
        return Policy::SpeCon;
    }
    if (text == "ds") {
        return Policy::DS;
    }
    throw std::invalid_argument(fmt::format("unknown policy '{}' (specon|ds)", text));
}

ScoreTable score_workers(const ClusterState& cluster, const SchedulerConfig& config) {
    ScoreTable scores;
    for (const auto& [id, w] : cluster.workers()) {
        scores[id] = static_cast<double>(w.pc_set.size()) * config.w_pc +
                     static_cast<double>(w.wc_set.size()) * config.w_wc +
                     static_cast<double>(w.cc_set.size()) * config.w_cc;
    }
    return scores;
}

ConsumptionTable consumption_table(const ClusterState& cluster) {
    ConsumptionTable out;
    for (const auto& [id, w] : cluster.workers()) {
        out[id] = cluster.resource_consumption(id);
    }
    return out;
}

std::vector<WorkerId> candidate_set(const ScoreTable& scores) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [id, s] : scores) {
        best = std::min(best, s);
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(best));
    std::vector<WorkerId> out;
    for (const auto& [id, s] : scores) {
        if (s - best <= slack) {
            out.push_back(id);
        }
    }
    return out;
}

Placement choose_target(WorkerId current, const ScoreTable& scores,
                        const ConsumptionTable& consumption) {
    auto candidates = candidate_set(scores);
    if (candidates.empty()) {
        throw std::invalid_argument("cannot place on an empty cluster");
    }
    if (std::find(candidates.begin(), candidates.end(), current) != candidates.end()) {
        return {true, current};
    }
    if (candidates.size() == 1) {
        return {false, candidates.front()};
    }
    WorkerId best = candidates.front();
    for (WorkerId w : candidates) {
        if (consumption.at(w) < consumption.at(best)) {
            best = w;
        }
    }
    return {false, best};
}

SpeculativeScheduler::SpeculativeScheduler(SchedulerConfig config) : config_(config) {
    config_.validate();
}

std::optional<PlacementDecision> SpeculativeScheduler::select_target(
    const ReallocationRequest& request, ClusterState& cluster) {
    if (handled_.contains(request.container) || !cluster.has_container(request.container)) {
        return std::nullopt;
    }
    auto& c = cluster.container(request.container);
    if (c.completed() || c.migrated || c.in_transit || c.category != Category::Converged ||
        c.host != request.worker) {
        return std::nullopt;
    }

    PlacementDecision decision;
    decision.time = cluster.now;
    decision.container = c.id;
    decision.from = c.host;
    decision.scores = score_workers(cluster, config_);
    decision.consumption = consumption_table(cluster);
    decision.placement = choose_target(c.host, decision.scores, decision.consumption);

    c.migrated = true;
    c.converged_at = cluster.now;
    handled_.insert(c.id);
    return decision;
}

WorkerId initial_worker(std::size_t job_index, std::size_t n_workers) {
    if (n_workers == 0) {
        throw std::invalid_argument("initial placement needs at least one worker");
    }
    return WorkerId{static_cast<std::uint32_t>(job_index % n_workers)};
}

std::vector<WorkerId> initial_placement(std::size_t n_jobs, std::size_t n_workers) {
    std::vector<WorkerId> out;
    out.reserve(n_jobs);
    for (std::size_t k = 0; k < n_jobs; ++k) {
        out.push_back(initial_worker(k, n_workers));
    }
    return out;
}

}  // namespace specon
