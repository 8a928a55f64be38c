#include <specon/allocation.hpp>
#include <specon/simulation.hpp>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace specon {

namespace {

// Slack allowed between the predicted and integrated finish of a job.
constexpr double kCompletionSlack = 1e-6;

}  // namespace

double iteration_rate(const ContainerState& c) {
    if (c.in_transit || c.completed() || c.cpu_demand <= 0.0) {
        return 0.0;
    }
    return c.base_iter_rate * (c.allocated_cores / c.cpu_demand);
}

void advance(ClusterState& cluster, double dt) {
    if (dt < 0.0) {
        throw SimulationError(fmt::format("negative advance {} at t={}", dt, cluster.now));
    }
    if (dt > 0.0) {
        for (const auto& [id, c0] : cluster.containers()) {
            if (c0.completed() || c0.in_transit) {
                continue;
            }
            auto& c = cluster.container(id);
            double total = static_cast<double>(c.total_iterations);
            c.completed_iterations = std::min(c.completed_iterations + iteration_rate(c) * dt, total);
        }
    }
    cluster.now += dt;
}

double completion_time(const ContainerState& c) {
    if (!c.completed()) {
        throw SimulationError(fmt::format("container {} has not completed", c.id.value));
    }
    return *c.completed_at - c.submitted_at;
}

double makespan(const RunRecord& record) {
    if (!record.finished || record.containers.empty()) {
        throw SimulationError("makespan of an unfinished run");
    }
    double first = std::numeric_limits<double>::infinity();
    double last = -std::numeric_limits<double>::infinity();
    for (const auto& c : record.containers) {
        first = std::min(first, c.submitted_at);
        last = std::max(last, *c.completed_at);
    }
    return last - first;
}

double average_completion(const RunRecord& record) {
    if (!record.finished || record.containers.empty()) {
        throw SimulationError("average completion of an unfinished run");
    }
    double sum = 0.0;
    for (const auto& c : record.containers) {
        sum += completion_time(c);
    }
    return sum / static_cast<double>(record.containers.size());
}

Simulation::Simulation(SimulationSetup setup)
    : setup_(std::move(setup)),
      root_(StreamKey::root(setup_.seed)),
      overhead_rng_(root_.derive("overhead")),
      overhead_(fit_overhead(setup_.overhead)),
      scheduler_(setup_.scheduler) {
    setup_.monitor.validate();
    if (setup_.cluster.workers == 0) {
        throw std::invalid_argument("scenario needs at least one worker");
    }
    if (setup_.schedule.jobs.empty()) {
        throw std::invalid_argument("scenario needs at least one job");
    }
    if (setup_.heartbeat_delay < 0.0 || setup_.read_delay < 0.0) {
        throw std::invalid_argument("delays must be non-negative");
    }
    for (std::size_t i = 0; i < setup_.cluster.workers; ++i) {
        WorkerId id = cluster_.add_worker(setup_.cluster.cpu_capacity,
                                          setup_.cluster.reserved_fraction);
        monitors_.emplace(id, ContainerMonitor(id, setup_.monitor));
        if (setup_.record_timeline) {
            record_.timelines[id];
        }
    }
    std::stable_sort(setup_.schedule.jobs.begin(), setup_.schedule.jobs.end(),
                     [](const ScheduledJob& a, const ScheduledJob& b) { return a.offset < b.offset; });
    for (std::size_t k = 0; k < setup_.schedule.jobs.size(); ++k) {
        const auto& job = setup_.schedule.jobs[k];
        job.profile.validate();
        ContainerId id{static_cast<std::uint32_t>(k)};
        profiles_.emplace(id, job.profile);
        noise_.emplace(id, root_.derive("noise", k));
        SimEvent e;
        e.time = job.offset;
        e.kind = EventKind::Submission;
        e.container = id;
        queue_.push(e);
    }
    for (const auto& [wid, mon] : monitors_) {
        SimEvent e;
        e.time = mon.next_tick();
        e.kind = EventKind::CategorizationTick;
        e.worker = wid;
        queue_.push(e);
    }
    if (setup_.policy == Policy::SpeCon) {
        SimEvent e;
        e.time = setup_.monitor.interval;
        e.kind = EventKind::RebalanceCheck;
        queue_.push(e);
    }
}

bool Simulation::finished() const {
    return completed_ == setup_.schedule.jobs.size();
}

RunRecord Simulation::run() {
    while (step()) {
    }
    return record_;
}

bool Simulation::step() {
    if (finished() || queue_.empty()) {
        return false;
    }
    SimEvent event = queue_.pop();
    if (event.time < cluster_.now) {
        throw SimulationError(fmt::format("event at {} precedes now={}", event.time, cluster_.now));
    }
    if (setup_.record_timeline) {
        sample_timelines_until(event.time);
    }
    advance(cluster_, event.time - cluster_.now);
    handle(event);

    if (finished()) {
        record_.finished = true;
        record_.end_time = cluster_.now;
        record_.containers.clear();
        for (const auto& [id, c] : cluster_.containers()) {
            record_.containers.push_back(c);
        }
        return false;
    }
    return true;
}

void Simulation::handle(const SimEvent& event) {
    switch (event.kind) {
    case EventKind::Submission:
        on_submission(event);
        break;
    case EventKind::CategorizationTick:
        on_tick(event);
        break;
    case EventKind::MigrationComplete:
        on_migration_complete(event);
        break;
    case EventKind::JobCompletion:
        on_completion(event);
        break;
    case EventKind::RebalanceCheck:
        on_rebalance(event);
        break;
    case EventKind::RequestDelivery:
        on_request(ReallocationRequest{*event.container, *event.source, event.time});
        break;
    case EventKind::MigrationStart:
        // Migrations start synchronously in schedule_migration.
        break;
    }
}

void Simulation::log(EventKind kind, std::optional<ContainerId> c, std::optional<WorkerId> w,
                     std::string detail) {
    record_.log.append(LogEntry{cluster_.now, kind, c, w, std::move(detail)});
}

void Simulation::on_submission(const SimEvent& event) {
    const ContainerId id = *event.container;
    const auto& profile = profiles_.at(id);
    const auto& job = setup_.schedule.jobs[id.value];

    ContainerState c;
    c.id = id;
    c.host = initial_worker(submitted_++, cluster_.worker_count());
    c.model_profile = profile.name;
    c.total_iterations = profile.total_iterations;
    c.submitted_at = cluster_.now;
    c.cpu_demand = profile.cpu_demand;
    c.base_iter_rate = profile.base_iter_rate;
    const WorkerId host = c.host;
    cluster_.add_container(std::move(c));
    epochs_[id] = 0;

    log(EventKind::Submission, id, host,
        fmt::format("profile={} flavor={}", profile.name, job.flavor));
    reallocate(host);
}

double Simulation::progress_at(const ContainerState& c, double t) const {
    if (t >= cluster_.now) {
        return c.completed_iterations;
    }
    auto it = progress_log_.find(c.id);
    if (t <= c.submitted_at || it == progress_log_.end() || it->second.empty()) {
        return 0.0;
    }
    // Breakpoints are appended whenever the rate changes, so progress is
    // linear between consecutive entries (and up to the current state).
    const auto& points = it->second;
    auto upper = std::upper_bound(points.begin(), points.end(), t,
                                  [](double v, const auto& p) { return v < p.first; });
    if (upper == points.begin()) {
        return 0.0;
    }
    const auto& lo = *std::prev(upper);
    double t_hi = upper == points.end() ? cluster_.now : upper->first;
    double k_hi = upper == points.end() ? c.completed_iterations : upper->second;
    if (t_hi <= lo.first) {
        return lo.second;
    }
    return lo.second + (k_hi - lo.second) * (t - lo.first) / (t_hi - lo.first);
}

double Simulation::observe(const ContainerState& c, double t) const {
    double k = std::floor(progress_at(c, t - setup_.read_delay));
    k = std::clamp(k, 0.0, static_cast<double>(c.total_iterations));
    return loss_at(profiles_.at(c.id), k, noise_.at(c.id));
}

void Simulation::record_progress(const ContainerState& c) {
    if (setup_.read_delay > 0.0) {
        progress_log_[c.id].emplace_back(cluster_.now, c.completed_iterations);
    }
}

void Simulation::on_tick(const SimEvent& event) {
    const WorkerId wid = *event.worker;
    auto& mon = monitors_.at(wid);
    TickResult result = mon.tick(cluster_, cluster_.now,
                                 [this](const ContainerState& c, double t) { return observe(c, t); });

    std::string detail;
    for (const auto& ch : result.changes) {
        detail += fmt::format("{}c{}:{}->{}", detail.empty() ? "" : ",", ch.container.value,
                              to_string(ch.from), to_string(ch.to));
    }
    for (const auto& rq : result.requests) {
        detail += fmt::format("{}req:c{}", detail.empty() ? "" : ",", rq.container.value);
    }
    log(EventKind::CategorizationTick, std::nullopt, wid, std::move(detail));
    record_.category_changes.insert(record_.category_changes.end(), result.changes.begin(),
                                    result.changes.end());

    if (setup_.policy == Policy::SpeCon) {
        for (const auto& rq : result.requests) {
            if (setup_.heartbeat_delay > 0.0) {
                SimEvent e;
                e.time = cluster_.now + setup_.heartbeat_delay;
                e.kind = EventKind::RequestDelivery;
                e.container = rq.container;
                e.source = rq.worker;
                queue_.push(e);
            } else {
                on_request(rq);
            }
        }
    }

    SimEvent next;
    next.time = mon.next_tick();
    next.kind = EventKind::CategorizationTick;
    next.worker = wid;
    queue_.push(next);
}

void Simulation::on_request(const ReallocationRequest& request) {
    auto decision = scheduler_.select_target(request, cluster_);
    if (!decision) {
        log(EventKind::RequestDelivery, request.container, request.worker, "dropped=stale");
        return;
    }
    record_.decisions.push_back(*decision);
    // Logged before any migration it triggers; the log alone then suffices to
    // recover converged_at for every migrated container.
    log(EventKind::RequestDelivery, decision->container, decision->from,
        decision->placement.stay ? std::string("placement=stay")
                                 : fmt::format("placement=w{}", decision->placement.target.value));
    if (!decision->placement.stay) {
        schedule_migration(decision->container, decision->placement.target, false);
    }
}

void Simulation::schedule_migration(ContainerId id, WorkerId to, bool rebalance) {
    auto& c = cluster_.container(id);
    if (c.completed()) {
        spdlog::warn("t={:.3f} ignoring migration of completed container c{}", cluster_.now,
                     id.value);
        return;
    }
    cluster_.worker(to);
    if (c.host == to) {
        return;
    }
    if (c.in_transit) {
        throw SimulationError(fmt::format("container {} is already in transit", id.value));
    }
    const WorkerId from = c.host;
    record_progress(c);
    cluster_.relocate(id, to);
    ++c.migrations;
    ++epochs_[id];  // cancels the pending completion prediction

    double delay = overhead_.sample(overhead_rng_);
    MigrationRecord rec;
    rec.container = id;
    rec.from = from;
    rec.to = to;
    rec.start = cluster_.now;
    rec.end = cluster_.now + delay;
    rec.progress_at_start = c.completed_iterations;
    rec.rebalance = rebalance;
    open_migration_[id] = record_.migrations.size();
    record_.migrations.push_back(rec);
    if (rebalance) {
        ++rebalances_in_flight_;
    }

    log(EventKind::MigrationStart, id, to,
        fmt::format("from=w{} delay={:.6f} reason={}", from.value, delay,
                    rebalance ? "rebalance" : "speculative"));

    SimEvent e;
    e.time = cluster_.now + delay;
    e.kind = EventKind::MigrationComplete;
    e.container = id;
    e.worker = to;
    e.source = from;
    queue_.push(e);

    reallocate(from);
}

void Simulation::on_migration_complete(const SimEvent& event) {
    const ContainerId id = *event.container;
    auto& c = cluster_.container(id);
    c.in_transit = false;
    auto& rec = record_.migrations.at(open_migration_.at(id));
    rec.progress_at_end = c.completed_iterations;
    rec.finished = true;
    open_migration_.erase(id);
    if (rec.rebalance) {
        --rebalances_in_flight_;
    }
    log(EventKind::MigrationComplete, id, c.host, fmt::format("from=w{}", rec.from.value));
    reallocate(c.host);
}

void Simulation::on_completion(const SimEvent& event) {
    const ContainerId id = *event.container;
    if (event.epoch != epochs_.at(id)) {
        return;  // superseded prediction
    }
    auto& c = cluster_.container(id);
    const double total = static_cast<double>(c.total_iterations);
    if (total - c.completed_iterations > kCompletionSlack) {
        throw SimulationError(fmt::format("c{} predicted done with {} of {} iterations", id.value,
                                          c.completed_iterations, total));
    }
    const WorkerId host = c.host;
    cluster_.mark_completed(id, cluster_.now);
    ++completed_;
    log(EventKind::JobCompletion, id, host, fmt::format("iterations={:.6f}", c.completed_iterations));
    reallocate(host);
}

void Simulation::on_rebalance(const SimEvent& event) {
    (void)event;
    if (rebalances_in_flight_ > 0) {
        log(EventKind::RebalanceCheck, std::nullopt, std::nullopt, "skipped=in-flight");
    } else {
        RebalanceRound round = rebalance(cluster_, cluster_.now);
        log(EventKind::RebalanceCheck, std::nullopt, std::nullopt,
            fmt::format("sum={} bf={} movable={} directives={}", round.snapshot.sum,
                        round.snapshot.bf, round.snapshot.durations.size(),
                        round.directives.size()));
        for (const auto& d : round.directives) {
            schedule_migration(d.container, d.to, true);
        }
        if (!round.snapshot.durations.empty()) {
            record_.rebalance_rounds.push_back(std::move(round));
        }
    }
    SimEvent next;
    next.time = cluster_.now + setup_.monitor.interval;
    next.kind = EventKind::RebalanceCheck;
    queue_.push(next);
}

void Simulation::reallocate(WorkerId wid) {
    auto& w = cluster_.worker(wid);
    std::vector<ContainerId> running;
    std::vector<double> demands;
    for (ContainerId cid : w.residents) {
        const auto& c = cluster_.container(cid);
        if (!c.completed() && !c.in_transit) {
            running.push_back(cid);
            demands.push_back(c.cpu_demand);
        }
    }
    auto grants = allocate_cpu(w.usable_capacity(), demands);
    for (std::size_t i = 0; i < running.size(); ++i) {
        auto& c = cluster_.container(running[i]);
        record_progress(c);
        c.allocated_cores = grants[i];
        const std::uint64_t epoch = ++epochs_[c.id];
        double rate = iteration_rate(c);
        if (rate <= 0.0) {
            continue;
        }
        double remaining = static_cast<double>(c.total_iterations) - c.completed_iterations;
        SimEvent e;
        e.time = cluster_.now + std::max(remaining, 0.0) / rate;
        e.kind = EventKind::JobCompletion;
        e.container = c.id;
        e.worker = wid;
        e.epoch = epoch;
        queue_.push(e);
    }
}

void Simulation::sample_timelines_until(double t) {
    while (next_sample_ < t) {
        for (const auto& [wid, w] : cluster_.workers()) {
            (void)w;
            record_.timelines[wid].push_back(TimelineSample{
                next_sample_, cluster_.active_count(wid), cluster_.resource_consumption(wid)});
        }
        next_sample_ += 1.0;
    }
}

}  // namespace specon
