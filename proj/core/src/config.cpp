#include <specon/config.hpp>

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace specon {

using nlohmann::json;

namespace {

void reject_unknown(const json& node, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
    if (!node.is_object()) {
        throw ConfigError(fmt::format("'{}' must be an object", where));
    }
    for (const auto& [key, value] : node.items()) {
        (void)value;
        bool ok = false;
        for (auto a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            throw ConfigError(fmt::format("unknown key '{}' in '{}'", key, where));
        }
    }
}

template <typename T>
void read(const json& node, std::string_view key, T& out) {
    auto it = node.find(std::string(key));
    if (it == node.end()) {
        return;
    }
    try {
        out = it->get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("field '{}': {}", key, e.what()));
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open '{}'", path.string()));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("malformed JSON: {}", e.what()));
    }
}

}  // namespace

void ScenarioConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (cluster.workers == 0) {
        fail("cluster.workers must be at least 1");
    }
    if (!(cluster.cpu_capacity > 0.0)) {
        fail("cluster.cpu_capacity must be positive");
    }
    if (!(cluster.reserved_fraction >= 0.0 && cluster.reserved_fraction < 1.0)) {
        fail("cluster.reserved_fraction must lie in [0, 1)");
    }
    if (workload.jobs == 0) {
        fail("workload.jobs must be at least 1");
    }
    if (workload.schedule.kind == ScheduleKind::Fixed && !(workload.schedule.interval >= 0.0)) {
        fail("workload.schedule.interval must be non-negative");
    }
    if (workload.schedule.kind == ScheduleKind::Random && !(workload.schedule.window >= 0.0)) {
        fail("workload.schedule.window must be non-negative");
    }
    const auto& d = workload.defaults;
    if (d.total_iterations == 0 || !(d.base_iter_rate > 0.0) || !(d.cpu_demand > 0.0) ||
        !(d.noise_sigma >= 0.0) || !(d.speed_spread >= 0.0)) {
        fail("workload profile parameters must be positive (noise_sigma non-negative)");
    }
    if (!(read_delay >= 0.0) || !(heartbeat_delay >= 0.0)) {
        fail("delays must be non-negative");
    }
    try {
        monitor.validate();
        scheduler.validate();
        fit_overhead(overhead);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

ScenarioConfig parse_config(std::string_view text) {
    json root = parse_json(text);
    reject_unknown(root, "<root>",
                   {"label", "seed", "policy", "cluster", "workload", "monitor", "scheduler",
                    "overhead"});
    ScenarioConfig cfg;
    read(root, "label", cfg.label);
    read(root, "seed", cfg.seed);
    if (root.contains("policy")) {
        std::string p;
        read(root, "policy", p);
        try {
            cfg.policy = parse_policy(p);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (root.contains("cluster")) {
        const auto& n = root["cluster"];
        reject_unknown(n, "cluster", {"workers", "cpu_capacity", "reserved_fraction"});
        read(n, "workers", cfg.cluster.workers);
        read(n, "cpu_capacity", cfg.cluster.cpu_capacity);
        read(n, "reserved_fraction", cfg.cluster.reserved_fraction);
    }
    if (root.contains("workload")) {
        const auto& n = root["workload"];
        reject_unknown(n, "workload",
                       {"jobs", "schedule", "profiles", "total_iterations", "base_iter_rate",
                        "cpu_demand", "noise_sigma", "speed_spread"});
        read(n, "jobs", cfg.workload.jobs);
        read(n, "total_iterations", cfg.workload.defaults.total_iterations);
        read(n, "base_iter_rate", cfg.workload.defaults.base_iter_rate);
        read(n, "cpu_demand", cfg.workload.defaults.cpu_demand);
        read(n, "noise_sigma", cfg.workload.defaults.noise_sigma);
        read(n, "speed_spread", cfg.workload.defaults.speed_spread);
        if (n.contains("profiles")) {
            std::string rule;
            read(n, "profiles", rule);
            try {
                cfg.workload.profiles = ProfileRule::parse(rule);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
        if (n.contains("schedule")) {
            const auto& s = n["schedule"];
            reject_unknown(s, "workload.schedule", {"kind", "interval", "window"});
            std::string kind = "fixed";
            read(s, "kind", kind);
            if (kind == "fixed") {
                cfg.workload.schedule.kind = ScheduleKind::Fixed;
            } else if (kind == "random") {
                cfg.workload.schedule.kind = ScheduleKind::Random;
            } else {
                throw ConfigError(fmt::format("unknown schedule kind '{}' (fixed|random)", kind));
            }
            read(s, "interval", cfg.workload.schedule.interval);
            read(s, "window", cfg.workload.schedule.window);
        }
    }
    if (root.contains("monitor")) {
        const auto& n = root["monitor"];
        reject_unknown(n, "monitor", {"alpha", "interval", "read_delay"});
        read(n, "alpha", cfg.monitor.alpha);
        read(n, "interval", cfg.monitor.interval);
        read(n, "read_delay", cfg.read_delay);
    }
    if (root.contains("scheduler")) {
        const auto& n = root["scheduler"];
        reject_unknown(n, "scheduler", {"w_pc", "w_wc", "w_cc", "heartbeat_delay"});
        read(n, "w_pc", cfg.scheduler.w_pc);
        read(n, "w_wc", cfg.scheduler.w_wc);
        read(n, "w_cc", cfg.scheduler.w_cc);
        read(n, "heartbeat_delay", cfg.heartbeat_delay);
    }
    if (root.contains("overhead")) {
        const auto& n = root["overhead"];
        reject_unknown(n, "overhead", {"mean", "sd", "lo", "hi"});
        read(n, "mean", cfg.overhead.mean);
        read(n, "sd", cfg.overhead.sd);
        read(n, "lo", cfg.overhead.lo);
        read(n, "hi", cfg.overhead.hi);
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_file(path));
}

std::string dump_config(const ScenarioConfig& cfg) {
    json schedule = {{"kind", cfg.workload.schedule.kind == ScheduleKind::Fixed ? "fixed" : "random"},
                     {"interval", cfg.workload.schedule.interval},
                     {"window", cfg.workload.schedule.window}};
    json root = {
        {"label", cfg.label},
        {"seed", cfg.seed},
        {"policy", std::string(to_string(cfg.policy))},
        {"cluster",
         {{"workers", cfg.cluster.workers},
          {"cpu_capacity", cfg.cluster.cpu_capacity},
          {"reserved_fraction", cfg.cluster.reserved_fraction}}},
        {"workload",
         {{"jobs", cfg.workload.jobs},
          {"schedule", schedule},
          {"profiles", cfg.workload.profiles.to_string()},
          {"total_iterations", cfg.workload.defaults.total_iterations},
          {"base_iter_rate", cfg.workload.defaults.base_iter_rate},
          {"cpu_demand", cfg.workload.defaults.cpu_demand},
          {"noise_sigma", cfg.workload.defaults.noise_sigma},
          {"speed_spread", cfg.workload.defaults.speed_spread}}},
        {"monitor",
         {{"alpha", cfg.monitor.alpha},
          {"interval", cfg.monitor.interval},
          {"read_delay", cfg.read_delay}}},
        {"scheduler",
         {{"w_pc", cfg.scheduler.w_pc},
          {"w_wc", cfg.scheduler.w_wc},
          {"w_cc", cfg.scheduler.w_cc},
          {"heartbeat_delay", cfg.heartbeat_delay}}},
        {"overhead",
         {{"mean", cfg.overhead.mean},
          {"sd", cfg.overhead.sd},
          {"lo", cfg.overhead.lo},
          {"hi", cfg.overhead.hi}}},
    };
    return root.dump(2) + "\n";
}

SimulationSetup to_setup(const ScenarioConfig& cfg) {
    cfg.validate();
    SimulationSetup s;
    s.cluster = cfg.cluster;
    s.schedule = make_schedule(cfg.workload.schedule, cfg.workload.jobs, cfg.workload.profiles,
                               cfg.seed, cfg.workload.defaults);
    s.monitor = cfg.monitor;
    s.scheduler = cfg.scheduler;
    s.overhead = cfg.overhead;
    s.policy = cfg.policy;
    s.seed = cfg.seed;
    s.heartbeat_delay = cfg.heartbeat_delay;
    s.read_delay = cfg.read_delay;
    return s;
}

SweepGrid parse_grid(std::string_view text) {
    json root = parse_json(text);
    reject_unknown(root, "<grid>", {"points", "seeds"});
    SweepGrid grid;
    read(root, "seeds", grid.seeds);
    if (!root.contains("points") || !root["points"].is_array()) {
        throw ConfigError("grid requires a 'points' array");
    }
    for (const auto& p : root["points"]) {
        reject_unknown(p, "points[]", {"alpha", "interval"});
        GridPoint gp;
        read(p, "alpha", gp.alpha);
        read(p, "interval", gp.interval);
        if (!(gp.alpha > 0.0) || !(gp.interval > 0.0)) {
            throw ConfigError("grid points need positive alpha and interval");
        }
        grid.points.push_back(gp);
    }
    if (grid.points.empty()) {
        throw ConfigError("grid must contain at least one point");
    }
    if (grid.seeds == 0) {
        throw ConfigError("grid seeds must be at least 1");
    }
    return grid;
}

SweepGrid load_grid(const std::filesystem::path& path) {
    return parse_grid(read_file(path));
}

}  // namespace specon
