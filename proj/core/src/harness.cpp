#include <specon/harness.hpp>

#include <future>

namespace specon {

RunReport run(const ScenarioConfig& config) {
    Simulation sim(to_setup(config));
    return make_report(config, sim.run());
}

ComparisonRun compare(const ScenarioConfig& config) {
    ScenarioConfig sp = config;
    sp.policy = Policy::SpeCon;
    ScenarioConfig ds = config;
    ds.policy = Policy::DS;
    ComparisonRun out{run(sp), run(ds), {}};
    out.comparison = compare_reports(out.specon, out.ds);
    out.specon.summary.improved_fraction = out.comparison.reduced;
    return out;
}

namespace {

SweepRow sweep_point(const ScenarioConfig& base, const GridPoint& point, std::size_t seeds) {
    SweepRow row;
    row.point = point;
    for (std::size_t i = 0; i < seeds; ++i) {
        ScenarioConfig cfg = base;
        cfg.monitor.alpha = point.alpha;
        cfg.monitor.interval = point.interval;
        cfg.seed = base.seed + i;
        row.per_seed.push_back(compare(cfg).comparison);
    }
    auto column = [&](auto field) {
        std::vector<double> v;
        for (const auto& c : row.per_seed) {
            v.push_back(c.*field);
        }
        return median(std::move(v));
    };
    row.median = row.per_seed.front();
    row.median.reduced = column(&Comparison::reduced);
    row.median.overall = column(&Comparison::overall);
    row.median.best = column(&Comparison::best);
    row.median.makespan = column(&Comparison::makespan);
    row.median.specon_average = column(&Comparison::specon_average);
    row.median.ds_average = column(&Comparison::ds_average);
    row.median.specon_makespan = column(&Comparison::specon_makespan);
    row.median.ds_makespan = column(&Comparison::ds_makespan);
    return row;
}

}  // namespace

std::vector<SweepRow> sweep(const ScenarioConfig& base, const SweepGrid& grid, bool parallel) {
    if (grid.points.empty()) {
        throw ConfigError("sweep grid must be nonempty");
    }
    base.validate();
    std::vector<SweepRow> rows;
    if (!parallel) {
        for (const auto& p : grid.points) {
            rows.push_back(sweep_point(base, p, grid.seeds));
        }
        return rows;
    }
    std::vector<std::future<SweepRow>> pending;
    for (const auto& p : grid.points) {
        pending.push_back(std::async(std::launch::async, sweep_point, std::cref(base), p,
                                     grid.seeds));
    }
    for (auto& f : pending) {
        rows.push_back(f.get());
    }
    return rows;
}

}  // namespace specon
