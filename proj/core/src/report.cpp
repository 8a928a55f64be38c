#include <specon/report.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <limits>

namespace specon {

Summary summarize(const std::vector<JobRow>& rows) {
    Summary s;
    s.jobs = rows.size();
    if (rows.empty()) {
        return s;
    }
    double sum = 0.0;
    double first = std::numeric_limits<double>::infinity();
    double last = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        sum += r.completion;
        first = std::min(first, r.submitted_at);
        last = std::max(last, r.completed_at);
    }
    s.average_completion = sum / static_cast<double>(rows.size());
    s.makespan = last - first;
    return s;
}

RunReport make_report(const ScenarioConfig& config, RunRecord record) {
    if (!record.finished) {
        throw SimulationError("cannot report an unfinished run");
    }
    RunReport report;
    report.label = config.label;
    report.policy = config.policy;
    const auto schedule = make_schedule(config.workload.schedule, config.workload.jobs,
                                        config.workload.profiles, config.seed,
                                        config.workload.defaults);
    for (const auto& c : record.containers) {
        JobRow row;
        row.id = c.id;
        row.profile = c.model_profile;
        row.flavor = schedule.jobs.at(c.id.value).flavor;
        row.submitted_at = c.submitted_at;
        row.completed_at = *c.completed_at;
        row.completion = completion_time(c);
        row.migrations = c.migrations;
        row.rebalanced = c.rebalanced;
        report.jobs.push_back(std::move(row));
    }
    report.summary = summarize(report.jobs);
    report.record = std::move(record);
    return report;
}

std::string jobs_csv(const RunReport& report) {
    std::string out = "id,profile,flavor,submitted_at,completed_at,completion,migrations,rebalanced\n";
    for (const auto& r : report.jobs) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", r.id.value, r.profile, r.flavor,
                           r.submitted_at, r.completed_at, r.completion, r.migrations,
                           r.rebalanced ? 1 : 0);
    }
    return out;
}

std::string summary_csv(const RunReport& report) {
    const auto& s = report.summary;
    return fmt::format("label,policy,jobs,average_completion,makespan,improved_fraction\n"
                       "{},{},{},{},{},{}\n",
                       report.label, to_string(report.policy), s.jobs, s.average_completion,
                       s.makespan,
                       s.improved_fraction ? fmt::format("{}", *s.improved_fraction) : "");
}

std::string timeline_csv(const RunReport& report, WorkerId worker) {
    std::string out = "time,containers,cpu_fraction\n";
    auto it = report.record.timelines.find(worker);
    if (it == report.record.timelines.end()) {
        return out;
    }
    for (const auto& s : it->second) {
        out += fmt::format("{},{},{}\n", s.time, s.containers, s.cpu_fraction);
    }
    return out;
}

namespace {

std::string table_field(const std::map<WorkerId, double>& table) {
    std::string out;
    for (const auto& [w, v] : table) {
        out += fmt::format("{}w{}={}", out.empty() ? "" : ";", w.value, v);
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    }
    out << content;
}

}  // namespace

std::string decisions_csv(const RunReport& report) {
    std::string out = "time,container,from,to,scores,consumption\n";
    for (const auto& d : report.record.decisions) {
        out += fmt::format("{},{},w{},{},{},{}\n", d.time, d.container.value, d.from.value,
                           d.placement.stay ? std::string("stay")
                                            : fmt::format("w{}", d.placement.target.value),
                           table_field(d.scores), table_field(d.consumption));
    }
    return out;
}

std::string rebalance_csv(const RunReport& report) {
    std::string out = "time,container,from,to,duration,bf,reason\n";
    for (const auto& round : report.record.rebalance_rounds) {
        for (const auto& d : round.directives) {
            out += fmt::format("{},{},w{},w{},{},{},{}\n", round.snapshot.time, d.container.value,
                               d.from.value, d.to.value, d.duration, d.bf, to_string(d.reason));
        }
    }
    return out;
}

void write_report(const RunReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir / "jobs.csv", jobs_csv(report));
    write_file(dir / "summary.csv", summary_csv(report));
    for (const auto& [w, samples] : report.record.timelines) {
        (void)samples;
        write_file(dir / fmt::format("timeline_w{}.csv", w.value), timeline_csv(report, w));
    }
    write_file(dir / "decisions.csv", decisions_csv(report));
    write_file(dir / "rebalance.csv", rebalance_csv(report));
    write_file(dir / "events.log", report.record.log.to_text());
}

Comparison compare_reports(const RunReport& specon, const RunReport& ds) {
    if (specon.jobs.size() != ds.jobs.size()) {
        throw ConfigError("compared runs have different job counts");
    }
    Comparison cmp;
    std::size_t improved = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < specon.jobs.size(); ++i) {
        const auto& a = specon.jobs[i];
        const auto& b = ds.jobs[i];
        if (a.id != b.id || a.profile != b.profile || a.submitted_at != b.submitted_at) {
            throw ConfigError(fmt::format("compared runs disagree on job {}", a.id.value));
        }
        JobDelta d{a.id, a.profile, a.completion, b.completion,
                   (b.completion - a.completion) / b.completion};
        if (a.completion < b.completion) {
            ++improved;
        }
        best = std::max(best, d.reduction);
        cmp.jobs.push_back(std::move(d));
    }
    cmp.reduced = static_cast<double>(improved) / static_cast<double>(specon.jobs.size());
    cmp.best = best;
    cmp.specon_average = specon.summary.average_completion;
    cmp.ds_average = ds.summary.average_completion;
    cmp.specon_makespan = specon.summary.makespan;
    cmp.ds_makespan = ds.summary.makespan;
    cmp.overall = (cmp.ds_average - cmp.specon_average) / cmp.ds_average;
    cmp.makespan = (cmp.ds_makespan - cmp.specon_makespan) / cmp.ds_makespan;
    return cmp;
}

std::string comparison_csv(const Comparison& cmp) {
    std::string out = "id,profile,specon,ds,reduction\n";
    for (const auto& j : cmp.jobs) {
        out += fmt::format("{},{},{},{},{}\n", j.id.value, j.profile, j.specon, j.ds, j.reduction);
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "alpha,interval,seeds,Reduced,Overall,Best,Makespan\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{}\n", r.point.alpha, r.point.interval,
                           r.per_seed.size(), r.median.reduced, r.median.overall, r.median.best,
                           r.median.makespan);
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median of an empty set");
    }
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace specon
