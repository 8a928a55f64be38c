#include <specon/event.hpp>

#include <fmt/format.h>

#include <algorithm>

namespace specon {

std::string_view to_string(EventKind kind) {
    switch (kind) {
    case EventKind::Submission:
        return "Submission";
    case EventKind::CategorizationTick:
        return "CategorizationTick";
    case EventKind::MigrationStart:
        return "MigrationStart";
    case EventKind::MigrationComplete:
        return "MigrationComplete";
    case EventKind::JobCompletion:
        return "JobCompletion";
    case EventKind::RebalanceCheck:
        return "RebalanceCheck";
    case EventKind::RequestDelivery:
        return "RequestDelivery";
    }
    return "Unknown";
}

const SimEvent& EventQueue::push(SimEvent event) {
    event.seq = next_seq_++;
    heap_.push(std::move(event));
    return heap_.top();
}

SimEvent EventQueue::pop() {
    SimEvent e = heap_.top();
    heap_.pop();
    return e;
}

std::size_t EventLog::count(EventKind kind) const {
    return static_cast<std::size_t>(std::count_if(
        entries_.begin(), entries_.end(), [kind](const LogEntry& e) { return e.kind == kind; }));
}

std::string EventLog::format(const LogEntry& e) {
    std::string container = e.container ? fmt::format("c{}", e.container->value) : "-";
    std::string worker = e.worker ? fmt::format("w{}", e.worker->value) : "-";
    return fmt::format("{:.6f} {} {} {} {}", e.time, to_string(e.kind), container, worker,
                       e.detail.empty() ? "-" : e.detail);
}

std::string EventLog::to_text() const {
    std::string out;
    for (const auto& e : entries_) {
        out += format(e);
        out += '\n';
    }
    return out;
}

}  // namespace specon
