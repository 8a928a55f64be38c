#include <specon/workload.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specon {

namespace {

struct ProfileShape {
    std::string_view name;
    double early_fraction;
    double l0;
    double l_inf;
};

// Loss scales are per-model; only l_inf / l0 matters after the monitor
// normalizes each stream by its first sample.
constexpr ProfileShape kShapes[] = {
    {"vae", 0.65, 180.0, 9.0},
    {"gru", 0.90, 1.0, 0.04},
    {"birnn", 0.98, 2.3, 0.08},
    {"rnn", 0.90, 2.3, 0.10},
    {"dynrnn", 0.90, 2.3, 0.12},
};

const ProfileShape& shape_for(std::string_view name) {
    for (const auto& s : kShapes) {
        if (s.name == name) {
            return s;
        }
    }
    throw std::invalid_argument(fmt::format("unknown model profile '{}'", name));
}

}  // namespace

void ModelProfile::validate() const {
    if (!(l0 > l_inf && l_inf >= 0.0)) {
        throw std::invalid_argument("profile requires l0 > l_inf >= 0");
    }
    if (!(tau > 0.0) || !(noise_sigma >= 0.0) || !(base_iter_rate > 0.0) ||
        !(cpu_demand > 0.0) || total_iterations == 0) {
        throw std::invalid_argument(fmt::format("invalid parameters for profile '{}'", name));
    }
}

const std::vector<std::string>& supported_profiles() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& s : kShapes) {
            out.emplace_back(s.name);
        }
        return out;
    }();
    return names;
}

double early_reduction_target(std::string_view name) {
    return shape_for(name).early_fraction;
}

ModelProfile calibrate_profile(std::string_view name, std::uint64_t total_iterations) {
    ProfileDefaults defaults;
    defaults.total_iterations = total_iterations;
    return calibrate_profile(name, defaults);
}

ModelProfile calibrate_profile(std::string_view name, const ProfileDefaults& defaults) {
    const auto& shape = shape_for(name);
    ModelProfile p;
    p.name = std::string(name);
    p.l0 = shape.l0;
    p.l_inf = shape.l_inf;
    p.total_iterations = defaults.total_iterations;
    p.tau = -0.2 * static_cast<double>(defaults.total_iterations) /
            std::log1p(-shape.early_fraction);
    p.noise_sigma = defaults.noise_sigma;
    p.base_iter_rate = defaults.base_iter_rate;
    p.cpu_demand = defaults.cpu_demand;
    p.validate();
    return p;
}

double reduction_fraction(const ModelProfile& profile, double k) {
    return -std::expm1(-k / profile.tau);
}

double loss_at_noiseless(const ModelProfile& profile, double k) {
    if (!(k >= 0.0 && k <= static_cast<double>(profile.total_iterations))) {
        throw std::out_of_range(fmt::format("iteration {} outside [0, {}]", k,
                                            profile.total_iterations));
    }
    return profile.l_inf + (profile.l0 - profile.l_inf) * std::exp(-k / profile.tau);
}

double loss_at(const ModelProfile& profile, double k, const StreamKey& noise) {
    double clean = loss_at_noiseless(profile, k);
    if (profile.noise_sigma == 0.0) {
        return clean;
    }
    auto step = static_cast<std::uint64_t>(std::floor(k));
    // Keep the factor positive even for extreme draws.
    double factor = std::max(1.0 + profile.noise_sigma * noise.normal_at(step), 1e-3);
    return clean * factor;
}

ProfileRule ProfileRule::parse(std::string_view text) {
    ProfileRule rule;
    if (text == "uniform") {
        rule.kind = Kind::Uniform;
        rule.model.clear();
        return rule;
    }
    constexpr std::string_view prefix = "single:";
    if (text.starts_with(prefix)) {
        rule.kind = Kind::Single;
        rule.model = std::string(text.substr(prefix.size()));
        shape_for(rule.model);
        return rule;
    }
    throw std::invalid_argument(
        fmt::format("profile rule '{}' must be 'uniform' or 'single:<model>'", text));
}

std::string ProfileRule::to_string() const {
    return kind == Kind::Uniform ? std::string("uniform") : "single:" + model;
}

SubmissionSchedule make_schedule(const ScheduleSpec& spec, std::size_t n_jobs,
                                 const ProfileRule& rule, std::uint64_t seed,
                                 const ProfileDefaults& defaults) {
    if (n_jobs == 0) {
        throw std::invalid_argument("schedule needs at least one job");
    }
    const StreamKey root = StreamKey::root(seed);

    std::vector<double> offsets(n_jobs);
    if (spec.kind == ScheduleKind::Fixed) {
        if (!(spec.interval >= 0.0)) {
            throw std::invalid_argument("fixed schedule interval must be non-negative");
        }
        for (std::size_t k = 0; k < n_jobs; ++k) {
            offsets[k] = static_cast<double>(k) * spec.interval;
        }
    } else {
        if (!(spec.window >= 0.0)) {
            throw std::invalid_argument("random schedule window must be non-negative");
        }
        Rng rng(root.derive("schedule"));
        for (auto& off : offsets) {
            off = rng.uniform(0.0, spec.window);
        }
        std::sort(offsets.begin(), offsets.end());
    }

    if (!(defaults.speed_spread >= 0.0)) {
        throw std::invalid_argument("speed_spread must be non-negative");
    }
    Rng pick(root.derive("profiles"));
    const StreamKey speed = root.derive("speed");
    const auto& names = supported_profiles();
    SubmissionSchedule out;
    out.spec = spec;
    out.jobs.reserve(n_jobs);
    for (std::size_t k = 0; k < n_jobs; ++k) {
        std::string model;
        std::string flavor;
        if (rule.kind == ProfileRule::Kind::Single) {
            model = rule.model;
            flavor = "P";
        } else {
            auto idx = static_cast<std::size_t>(pick.uniform() * static_cast<double>(names.size()));
            model = names[std::min(idx, names.size() - 1)];
            flavor = pick.uniform() < 0.5 ? "P" : "T";
        }
        ModelProfile profile = calibrate_profile(model, defaults);
        if (defaults.speed_spread > 0.0) {
            // Mean-one multiplier, keyed by job index only.
            double s = defaults.speed_spread;
            profile.base_iter_rate *= std::exp(s * speed.normal_at(k) - 0.5 * s * s);
        }
        out.jobs.push_back(ScheduledJob{std::move(profile), flavor, offsets[k]});
    }
    return out;
}

}  // namespace specon
