#include <specon/model.hpp>

#include <fmt/format.h>

#include <algorithm>

namespace specon {

std::string_view to_string(Category category) {
    switch (category) {
    case Category::Progressing:
        return "PC";
    case Category::Watching:
        return "WC";
    case Category::Converged:
        return "CC";
    }
    return "?";
}

std::set<ContainerId>& WorkerState::set_for(Category category) {
    switch (category) {
    case Category::Progressing:
        return pc_set;
    case Category::Watching:
        return wc_set;
    case Category::Converged:
        break;
    }
    return cc_set;
}

const std::set<ContainerId>& WorkerState::set_for(Category category) const {
    return const_cast<WorkerState*>(this)->set_for(category);
}

void MonitorConfig::validate() const {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("monitor.alpha must be positive");
    }
    if (!(interval > 0.0)) {
        throw std::invalid_argument("monitor.interval must be positive");
    }
}

void SchedulerConfig::validate() const {
    if (!(w_pc > w_wc && w_wc > w_cc && w_cc > 0.0)) {
        throw std::invalid_argument("scheduler weights must satisfy w_pc > w_wc > w_cc > 0");
    }
}

WorkerId ClusterState::add_worker(double cpu_capacity, double reserved_fraction) {
    if (!(cpu_capacity > 0.0)) {
        throw std::invalid_argument("worker cpu_capacity must be positive");
    }
    if (!(reserved_fraction >= 0.0 && reserved_fraction < 1.0)) {
        throw std::invalid_argument("reserved_fraction must lie in [0, 1)");
    }
    WorkerId id{static_cast<std::uint32_t>(workers_.size())};
    WorkerState w;
    w.id = id;
    w.cpu_capacity = cpu_capacity;
    w.reserved_fraction = reserved_fraction;
    workers_.emplace(id, std::move(w));
    return id;
}

ContainerState& ClusterState::add_container(ContainerState container) {
    if (container.id.value != containers_.size()) {
        throw std::invalid_argument(
            fmt::format("container id {} is not dense (expected {})", container.id.value,
                        containers_.size()));
    }
    auto& host = worker(container.host);
    container.category = Category::Progressing;
    container.migrated = false;
    container.rebalanced = false;
    container.converged_at.reset();
    container.completed_at.reset();
    host.residents.insert(container.id);
    host.pc_set.insert(container.id);
    auto [it, inserted] = containers_.emplace(container.id, std::move(container));
    (void)inserted;
    return it->second;
}

WorkerState& ClusterState::worker(WorkerId id) {
    auto it = workers_.find(id);
    if (it == workers_.end()) {
        throw std::out_of_range(fmt::format("unknown worker id {}", id.value));
    }
    return it->second;
}

const WorkerState& ClusterState::worker(WorkerId id) const {
    return const_cast<ClusterState*>(this)->worker(id);
}

ContainerState& ClusterState::container(ContainerId id) {
    auto it = containers_.find(id);
    if (it == containers_.end()) {
        throw std::out_of_range(fmt::format("unknown container id {}", id.value));
    }
    return it->second;
}

const ContainerState& ClusterState::container(ContainerId id) const {
    return const_cast<ClusterState*>(this)->container(id);
}

void ClusterState::set_category(ContainerId id, Category category) {
    auto& c = container(id);
    if (c.completed()) {
        throw SimulationError(fmt::format("category change on completed container {}", id.value));
    }
    if (c.migrated && category != Category::Converged) {
        throw SimulationError(
            fmt::format("migrated container {} must stay converged", id.value));
    }
    auto& w = worker(c.host);
    w.set_for(c.category).erase(id);
    w.set_for(category).insert(id);
    c.category = category;
}

void ClusterState::relocate(ContainerId id, WorkerId to) {
    auto& c = container(id);
    if (c.completed()) {
        throw SimulationError(fmt::format("relocating completed container {}", id.value));
    }
    auto& dst = worker(to);
    auto& src = worker(c.host);
    src.residents.erase(id);
    src.set_for(c.category).erase(id);
    dst.residents.insert(id);
    dst.set_for(c.category).insert(id);
    c.host = to;
    c.allocated_cores = 0.0;
    c.in_transit = true;
}

void ClusterState::mark_completed(ContainerId id, double at) {
    auto& c = container(id);
    if (c.completed()) {
        throw SimulationError(fmt::format("container {} completed twice", id.value));
    }
    auto& w = worker(c.host);
    w.set_for(c.category).erase(id);
    c.completed_at = at;
    c.allocated_cores = 0.0;
}

std::size_t ClusterState::active_count(WorkerId id) const {
    const auto& w = worker(id);
    return static_cast<std::size_t>(std::count_if(
        w.residents.begin(), w.residents.end(),
        [this](ContainerId c) { return !container(c).completed(); }));
}

double ClusterState::resource_consumption(WorkerId id) const {
    const auto& w = worker(id);
    double used = 0.0;
    for (ContainerId cid : w.residents) {
        const auto& c = container(cid);
        if (!c.completed()) {
            used += c.allocated_cores;
        }
    }
    return std::min(used / w.cpu_capacity, 1.0 - w.reserved_fraction);
}

std::size_t ClusterState::active_total() const {
    return static_cast<std::size_t>(
        std::count_if(containers_.begin(), containers_.end(),
                      [](const auto& kv) { return !kv.second.completed(); }));
}

std::optional<std::string> ClusterState::check_invariants() const {
    std::set<ContainerId> seen;
    for (const auto& [wid, w] : workers_) {
        std::size_t categorized = 0;
        for (Category cat : {Category::Progressing, Category::Watching, Category::Converged}) {
            for (ContainerId cid : w.set_for(cat)) {
                if (!w.residents.contains(cid)) {
                    return fmt::format("worker {}: {} in {} set but not resident", wid.value,
                                       cid.value, to_string(cat));
                }
                const auto& c = container(cid);
                if (c.completed()) {
                    return fmt::format("worker {}: completed {} still categorized", wid.value,
                                       cid.value);
                }
                if (c.category != cat) {
                    return fmt::format("container {}: category {} but listed in {}", cid.value,
                                       to_string(c.category), to_string(cat));
                }
                ++categorized;
            }
        }
        if (categorized != active_count(wid)) {
            return fmt::format("worker {}: category sets do not partition active residents",
                               wid.value);
        }
        for (ContainerId cid : w.residents) {
            if (!seen.insert(cid).second) {
                return fmt::format("container {} resident on two workers", cid.value);
            }
            if (container(cid).host != wid) {
                return fmt::format("container {} host field disagrees with residency", cid.value);
            }
        }
    }
    for (const auto& [cid, c] : containers_) {
        if (!seen.contains(cid)) {
            return fmt::format("container {} has no residency", cid.value);
        }
        if (c.completed_iterations < 0.0 ||
            c.completed_iterations > static_cast<double>(c.total_iterations)) {
            return fmt::format("container {} progress out of range", cid.value);
        }
        if (c.converged_at.has_value() != c.migrated) {
            return fmt::format("container {}: converged_at set iff migrated violated", cid.value);
        }
        if (c.migrated && !c.completed() && c.category != Category::Converged) {
            return fmt::format("container {} migrated but not converged", cid.value);
        }
    }
    return std::nullopt;
}

}  // namespace specon
