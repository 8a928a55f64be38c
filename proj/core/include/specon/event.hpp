#pragma once

#include <specon/model.hpp>

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

namespace specon {

enum class EventKind : std::uint8_t {
    Submission,
    CategorizationTick,
    MigrationStart,
    MigrationComplete,
    JobCompletion,
    RebalanceCheck,
    RequestDelivery,
};

std::string_view to_string(EventKind kind);

struct SimEvent {
    double time{0.0};
    EventKind kind{EventKind::Submission};
    std::optional<ContainerId> container;
    std::optional<WorkerId> worker;  // tick target, migration destination
    std::optional<WorkerId> source;  // migration source, request origin
    std::uint64_t epoch{0};          // completion prediction generation
    std::uint64_t seq{0};
};

/// Min-queue on (time, seq); seq is assigned at insertion.
class EventQueue {
public:
    const SimEvent& push(SimEvent event);
    SimEvent pop();
    const SimEvent& top() const { return heap_.top(); }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const {
            if (a.time != b.time) {
                return a.time > b.time;
            }
            return a.seq > b.seq;
        }
    };
    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
    std::uint64_t next_seq_{0};
};

struct LogEntry {
    double time{0.0};
    EventKind kind{EventKind::Submission};
    std::optional<ContainerId> container;
    std::optional<WorkerId> worker;
    std::string detail;
};

/// Append-only event log. Text form: one line per entry,
/// `time kind container worker detail`, with `-` for absent fields.
class EventLog {
public:
    void append(LogEntry entry) { entries_.push_back(std::move(entry)); }
    const std::vector<LogEntry>& entries() const { return entries_; }
    std::size_t count(EventKind kind) const;
    std::string to_text() const;
    static std::string format(const LogEntry& entry);

private:
    std::vector<LogEntry> entries_;
};

}  // namespace specon
