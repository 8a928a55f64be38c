#pragma once

#include <specon/rng.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace specon {

/// Synthetic convergence profile of one training job. Loss follows
/// l_inf + (l0 - l_inf) * exp(-k / tau) with multiplicative noise.
struct ModelProfile {
    std::string name;
    double l0{1.0};
    double l_inf{0.0};
    double tau{1.0};  // iterations
    double noise_sigma{0.0};
    double base_iter_rate{2.0};  // iterations per second with the full cpu_demand granted
    double cpu_demand{4.0};      // cores
    std::uint64_t total_iterations{1000};

    void validate() const;
};

/// Knobs shared by every calibrated profile of a scenario.
struct ProfileDefaults {
    std::uint64_t total_iterations{1000};
    double base_iter_rate{2.0};
    double cpu_demand{4.0};
    double noise_sigma{0.02};
    // Log-normal spread of per-job iteration speed (0 = identical jobs).
    double speed_spread{0.0};
};

const std::vector<std::string>& supported_profiles();

/// Fraction of the total loss reduction reached within the first 20% of
/// training for each supported model.
double early_reduction_target(std::string_view name);

/// Builds a profile whose decay constant meets the model's early reduction
/// target exactly: tau = -0.2 * total / ln(1 - f).
ModelProfile calibrate_profile(std::string_view name, std::uint64_t total_iterations);
ModelProfile calibrate_profile(std::string_view name, const ProfileDefaults& defaults);

/// Fraction of the total reduction reached at iteration k with noise off.
double reduction_fraction(const ModelProfile& profile, double k);

/// Evaluation value after k completed iterations. Noise is keyed by floor(k)
/// on the given stream, so the value is a function of progress alone.
double loss_at(const ModelProfile& profile, double k, const StreamKey& noise);
double loss_at_noiseless(const ModelProfile& profile, double k);

enum class ScheduleKind { Fixed, Random };

struct ScheduleSpec {
    ScheduleKind kind{ScheduleKind::Fixed};
    double interval{50.0};  // Fixed: spacing between submissions
    double window{300.0};   // Random: offsets drawn from [0, window]
};

/// "single:<name>" or "uniform" (uniform over the supported models, each
/// with a P/T platform flavor that only affects labeling).
struct ProfileRule {
    enum class Kind { Single, Uniform };
    Kind kind{Kind::Single};
    std::string model{"vae"};

    static ProfileRule parse(std::string_view text);
    std::string to_string() const;
};

struct ScheduledJob {
    ModelProfile profile;
    std::string flavor;  // "P" or "T"
    double offset{0.0};
};

struct SubmissionSchedule {
    ScheduleSpec spec;
    std::vector<ScheduledJob> jobs;  // sorted by offset
};

SubmissionSchedule make_schedule(const ScheduleSpec& spec, std::size_t n_jobs,
                                 const ProfileRule& rule, std::uint64_t seed,
                                 const ProfileDefaults& defaults = {});

}  // namespace specon
