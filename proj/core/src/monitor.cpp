#include <specon/monitor.hpp>

#include <cmath>

namespace specon {

double growth(double e_prev, double e_curr) {
    return std::abs(e_curr - e_prev);
}

Transition classify(Category current, double g_now, std::optional<double> g_prev, double alpha) {
    if (g_now > alpha) {
        return {GrowthCase::Surge, Category::Progressing, false};
    }
    if (g_now < alpha && g_prev.has_value() && g_now < *g_prev) {
        switch (current) {
        case Category::Progressing:
            return {GrowthCase::Slowing, Category::Watching, false};
        case Category::Watching:
            return {GrowthCase::Slowing, Category::Converged, false};
        case Category::Converged:
            return {GrowthCase::Slowing, Category::Converged, true};
        }
    }
    return {GrowthCase::Bouncing, current, false};
}

ContainerMonitor::ContainerMonitor(WorkerId worker, MonitorConfig config)
    : worker_(worker), config_(config), next_tick_(config.interval) {
    config_.validate();
}

const EvalTrace* ContainerMonitor::trace(ContainerId id) const {
    auto it = tracks_.find(id);
    return it == tracks_.end() ? nullptr : &it->second.trace;
}

TickResult ContainerMonitor::tick(ClusterState& cluster, double now,
                                  const EvaluationSource& source) {
    TickResult result;
    next_tick_ = now + config_.interval;

    auto& w = cluster.worker(worker_);
    // Copy: category updates below do not touch residency, but keep the
    // iteration independent of the sets anyway.
    const std::vector<ContainerId> residents(w.residents.begin(), w.residents.end());
    for (ContainerId id : residents) {
        auto& c = cluster.container(id);
        if (c.completed() || c.migrated || c.in_transit) {
            continue;
        }
        double raw = source(c, now);
        auto [it, fresh] = tracks_.try_emplace(id);
        Track& track = it->second;
        track.trace.container = id;
        track.trace.samples.emplace_back(now, raw);
        if (fresh) {
            track.first_raw = raw;
            track.last_e = 1.0;
            continue;
        }
        double e = raw / track.first_raw;
        double g = growth(track.last_e, e);
        track.trace.growths.emplace_back(now, g);

        Transition tr = classify(c.category, g, track.last_g, config_.alpha);
        if (tr.next != c.category) {
            result.changes.push_back({id, c.category, tr.next, now});
            cluster.set_category(id, tr.next);
        }
        if (tr.confirms_converged && w.pc_set.size() + w.wc_set.size() > 1) {
            result.requests.push_back({id, worker_, now});
        }
        track.last_e = e;
        track.last_g = g;
    }
    return result;
}

}  // namespace specon
