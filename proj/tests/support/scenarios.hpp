#pragma once

// Random scenario generator shared by property tests and the acceptance run.

#include <specon/config.hpp>
#include <specon/rng.hpp>

#include <cstdint>

namespace testing_support {

inline specon::ScenarioConfig random_scenario(std::uint64_t seed) {
    specon::Rng rng(specon::StreamKey::root(seed).derive("scenario-gen"));
    auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(rng.uniform() * static_cast<double>(hi - lo + 1));
    };
    specon::ScenarioConfig cfg;
    cfg.label = "random";
    cfg.seed = seed;
    cfg.cluster.workers = static_cast<std::size_t>(pick(2, 6));
    cfg.cluster.cpu_capacity = pick(0, 1) == 0 ? 16.0 : 8.0;
    cfg.workload.jobs = static_cast<std::size_t>(pick(3, 24));
    if (pick(0, 1) == 0) {
        cfg.workload.schedule.kind = specon::ScheduleKind::Fixed;
        cfg.workload.schedule.interval = static_cast<double>(pick(0, 80));
    } else {
        cfg.workload.schedule.kind = specon::ScheduleKind::Random;
        cfg.workload.schedule.window = static_cast<double>(pick(0, 400));
    }
    cfg.workload.profiles = specon::ProfileRule::parse(pick(0, 1) == 0 ? "uniform" : "single:vae");
    cfg.workload.defaults.total_iterations = static_cast<std::uint64_t>(pick(200, 1200));
    cfg.workload.defaults.cpu_demand = static_cast<double>(pick(2, 10));
    cfg.workload.defaults.base_iter_rate = 1.0 + rng.uniform() * 3.0;
    cfg.workload.defaults.speed_spread = rng.uniform() * 0.8;
    const double alphas[] = {0.005, 0.01, 0.05, 0.1};
    cfg.monitor.alpha = alphas[pick(0, 3)];
    cfg.monitor.interval = static_cast<double>(pick(10, 40));
    cfg.heartbeat_delay = pick(0, 3) == 0 ? rng.uniform() * 5.0 : 0.0;
    return cfg;
}

}  // namespace testing_support
