#pragma once

// Re-derives every rebalancing round from the text event log alone and
// re-plans it with a brute-force scan. Independent of the library's
// snapshot and planner.

#include <cstddef>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

struct LogLine {
    double time;
    std::string kind;
    int container;  // -1 when absent
    int worker;     // -1 when absent
    std::string detail;
};

inline std::vector<LogLine> parse_log(const std::string& text) {
    std::vector<LogLine> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        LogLine l;
        std::string c;
        std::string w;
        ls >> l.time >> l.kind >> c >> w;
        std::getline(ls, l.detail);
        if (!l.detail.empty() && l.detail.front() == ' ') {
            l.detail.erase(0, 1);
        }
        l.container = c == "-" ? -1 : std::atoi(c.c_str() + 1);
        l.worker = w == "-" ? -1 : std::atoi(w.c_str() + 1);
        out.push_back(l);
    }
    return out;
}

inline bool has(const std::string& s, const std::string& needle) {
    return s.find(needle) != std::string::npos;
}

// Integer after `key=` in a detail string.
inline long field(const std::string& detail, const std::string& key) {
    auto p = detail.find(key + "=");
    if (p == std::string::npos) {
        return -1;
    }
    const char* s = detail.c_str() + p + key.size() + 1;
    if (*s == 'w' || *s == 'c') {
        ++s;  // worker / container prefix
    }
    return std::strtol(s, nullptr, 10);
}

struct Move {
    int container;
    int from;
    int to;
};

struct Round {
    double time;
    std::size_t sum;
    std::size_t bf;
    std::size_t logged_sum;
    std::size_t logged_bf;
    std::vector<Move> expected;  // oracle plan
    std::vector<Move> actual;    // rebalance migrations that followed in the log
};

struct Replay {
    std::vector<Round> rounds;
    std::map<int, int> speculative_moves;  // container -> count
    std::map<int, int> rebalance_moves;
    std::map<int, int> accepted_requests;
};

inline std::vector<Move> plan(std::size_t n_workers, const std::vector<std::size_t>& count0,
                              const std::map<int, int>& host,
                              const std::map<int, double>& converged_at) {
    std::size_t sum = 0;
    for (auto n : count0) {
        sum += n;
    }
    const std::size_t bf = sum / n_workers;
    std::vector<std::size_t> count = count0;
    std::set<int> pool;
    for (const auto& [c, t] : converged_at) {
        pool.insert(c);
    }
    // Smallest duration = latest converged_at; lowest id on ties.
    auto freshest = [&](auto ok) {
        int best = -1;
        for (int c : pool) {
            if (!ok(c)) {
                continue;
            }
            if (best < 0 || converged_at.at(c) > converged_at.at(best)) {
                best = c;
            }
        }
        return best;
    };
    std::vector<Move> out;
    std::vector<std::size_t> idle;
    for (std::size_t w = 0; w < n_workers; ++w) {
        if (count0[w] == 0) {
            idle.push_back(w);
        }
    }
    if (!idle.empty()) {
        for (std::size_t dst : idle) {
            while (count[dst] < bf) {
                int c = freshest([&](int x) {
                    return count0[static_cast<std::size_t>(host.at(x))] >= count[dst] + 1;
                });
                if (c < 0) {
                    break;
                }
                std::size_t src = static_cast<std::size_t>(host.at(c));
                out.push_back({c, static_cast<int>(src), static_cast<int>(dst)});
                pool.erase(c);
                --count[src];
                ++count[dst];
            }
        }
        return out;
    }
    std::vector<std::size_t> targets;
    for (std::size_t w = 0; w < n_workers; ++w) {
        if (count[w] + 1 < bf) {
            targets.push_back(w);
        }
    }
    if (targets.empty()) {
        return out;
    }
    for (std::size_t src = 0; src < n_workers; ++src) {
        bool is_target = false;
        for (auto t : targets) {
            is_target = is_target || t == src;
        }
        if (is_target) {
            continue;
        }
        int c = freshest([&](int x) { return host.at(x) == static_cast<int>(src); });
        if (c < 0) {
            continue;
        }
        for (std::size_t dst : targets) {
            if (count[dst] < bf && count[src] >= count[dst] + 2) {
                out.push_back({c, static_cast<int>(src), static_cast<int>(dst)});
                pool.erase(c);
                --count[src];
                ++count[dst];
                break;
            }
        }
    }
    return out;
}

inline Replay replay(const std::string& log_text, std::size_t n_workers) {
    Replay r;
    auto lines = parse_log(log_text);
    std::map<int, int> host;
    std::set<int> done;
    std::set<int> transit;
    std::set<int> rebalanced;
    std::map<int, double> converged_at;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.kind == "Submission") {
            host[l.container] = l.worker;
        } else if (l.kind == "JobCompletion") {
            done.insert(l.container);
        } else if (l.kind == "MigrationStart") {
            host[l.container] = l.worker;
            transit.insert(l.container);
            if (has(l.detail, "reason=rebalance")) {
                ++r.rebalance_moves[l.container];
                rebalanced.insert(l.container);
            } else {
                ++r.speculative_moves[l.container];
            }
        } else if (l.kind == "MigrationComplete") {
            transit.erase(l.container);
        } else if (l.kind == "RequestDelivery" && has(l.detail, "placement=")) {
            ++r.accepted_requests[l.container];
            converged_at[l.container] = l.time;
        } else if (l.kind == "RebalanceCheck" && !has(l.detail, "skipped")) {
            std::vector<std::size_t> count(n_workers, 0);
            for (const auto& [c, w] : host) {
                if (!done.contains(c)) {
                    ++count[static_cast<std::size_t>(w)];
                }
            }
            std::map<int, int> movable_host;
            std::map<int, double> movable_at;
            for (const auto& [c, t] : converged_at) {
                if (done.contains(c) || rebalanced.contains(c) || transit.contains(c)) {
                    continue;
                }
                movable_host[c] = host.at(c);
                movable_at[c] = t;
            }
            Round round;
            round.time = l.time;
            round.sum = 0;
            for (auto n : count) {
                round.sum += n;
            }
            round.bf = round.sum / n_workers;
            round.logged_sum = static_cast<std::size_t>(field(l.detail, "sum"));
            round.logged_bf = static_cast<std::size_t>(field(l.detail, "bf"));
            round.expected = plan(n_workers, count, movable_host, movable_at);
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                const auto& m = lines[j];
                if (m.kind != "MigrationStart" || !has(m.detail, "reason=rebalance") ||
                    m.time != l.time) {
                    break;
                }
                round.actual.push_back(
                    {m.container, static_cast<int>(field(m.detail, "from")), m.worker});
            }
            r.rounds.push_back(std::move(round));
        }
    }
    return r;
}

}  // namespace oracle
