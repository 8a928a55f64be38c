#pragma once

#include <specon/config.hpp>
#include <specon/simulation.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace specon {

struct JobRow {
    ContainerId id;
    std::string profile;
    std::string flavor;
    double submitted_at{0.0};
    double completed_at{0.0};
    double completion{0.0};
    std::uint32_t migrations{0};
    bool rebalanced{false};
};

struct Summary {
    std::size_t jobs{0};
    double average_completion{0.0};
    double makespan{0.0};
    std::optional<double> improved_fraction;  // vs. a paired baseline
};

/// Recomputes the summary statistics from per-job rows.
Summary summarize(const std::vector<JobRow>& rows);

struct RunReport {
    std::string label;
    Policy policy{Policy::SpeCon};
    std::vector<JobRow> jobs;
    Summary summary;
    RunRecord record;
};

RunReport make_report(const ScenarioConfig& config, RunRecord record);

// CSV renderings. Numbers use the shortest round-trip representation so
// that parsing a file back yields the exact values.
std::string jobs_csv(const RunReport& report);
std::string summary_csv(const RunReport& report);
std::string timeline_csv(const RunReport& report, WorkerId worker);
std::string decisions_csv(const RunReport& report);
std::string rebalance_csv(const RunReport& report);

/// Writes jobs.csv, summary.csv, timeline_w<k>.csv, decisions.csv,
/// rebalance.csv and events.log into `dir`.
void write_report(const RunReport& report, const std::filesystem::path& dir);

struct JobDelta {
    ContainerId id;
    std::string profile;
    double specon{0.0};
    double ds{0.0};
    double reduction{0.0};  // (ds - specon) / ds
};

/// Columns of the comparison table: Reduced, Overall, Best, Makespan, all
/// expressed as fractions of the DS value.
struct Comparison {
    std::vector<JobDelta> jobs;
    double reduced{0.0};   // share of jobs with a shorter completion time
    double overall{0.0};   // average completion improvement
    double best{0.0};      // largest per-job reduction
    double makespan{0.0};  // makespan improvement
    double specon_average{0.0};
    double ds_average{0.0};
    double specon_makespan{0.0};
    double ds_makespan{0.0};
};

/// Throws ConfigError if the two runs do not share their submission stream.
Comparison compare_reports(const RunReport& specon, const RunReport& ds);

std::string comparison_csv(const Comparison& cmp);

struct SweepRow {
    GridPoint point;
    std::vector<Comparison> per_seed;
    Comparison median;  // column-wise medians over seeds (jobs from the first seed)
};

std::string sweep_csv(const std::vector<SweepRow>& rows);

double median(std::vector<double> values);

}  // namespace specon
