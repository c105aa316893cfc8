/// @file session_store.hpp
/// @brief Sessions kept in memory and mirrored to an append-only JSONL log.
///
/// Log events:
///   {"event": "create", "session": {...}}
///   {"event": "turn", "session_id": "...", "turn": {...}}
/// Replaying the log rebuilds the in-memory state exactly.

#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "pqa/core/error.hpp"
#include "pqa/core/types.hpp"

namespace pqa::service {

class UnknownSession : public Error {
public:
    using Error::Error;
};

using Clock = std::function<std::int64_t()>;

/// Milliseconds since the Unix epoch.
std::int64_t system_clock_ms();

class SessionStore {
public:
    /// In-memory only.
    explicit SessionStore(Clock clock = system_clock_ms);
    /// Replays `log_path` when it exists, then appends new events to it.
    /// Throws IoError or ParseError.
    explicit SessionStore(const std::string& log_path, Clock clock = system_clock_ms);

    SessionStore(const SessionStore&) = delete;
    SessionStore& operator=(const SessionStore&) = delete;

    Session create(UserContext user_context, std::optional<std::string> page_product_id);
    /// Throws UnknownSession.
    Session get(const std::string& session_id) const;
    bool contains(const std::string& session_id) const;
    /// Appends a turn with the next index and the clock's timestamp.
    /// Throws UnknownSession.
    Session append(const std::string& session_id, ConversationTurn turn);

    /// Mutex serializing turns of one session. Throws UnknownSession.
    std::shared_ptr<std::mutex> turn_lock(const std::string& session_id) const;

    std::vector<std::string> ids() const;
    std::int64_t now() const { return clock_(); }

    /// Sessions rebuilt from a log stream. Throws ParseError naming the line.
    static std::map<std::string, Session> replay(std::istream& log);

private:
    void write_event(const std::string& line);

    Clock clock_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, Session> sessions_;
    std::map<std::string, std::shared_ptr<std::mutex>> locks_;
    std::uint64_t next_id_ = 1;
    std::optional<std::ofstream> log_;
    std::mutex log_mutex_;
};

}  // namespace pqa::service
