#include "pqa/service/session_store.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>

#include "pqa/core/json_io.hpp"

namespace pqa::service {
namespace {

std::string format_id(std::uint64_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "s-%06llu", static_cast<unsigned long long>(n));
    return buf;
}

std::uint64_t id_number(const std::string& id) {
    if (id.size() < 3 || id.compare(0, 2, "s-") != 0) return 0;
    try {
        return std::stoull(id.substr(2));
    } catch (const std::exception&) {
        return 0;
    }
}

}  // namespace

std::int64_t system_clock_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

SessionStore::SessionStore(Clock clock) : clock_(std::move(clock)) {}

SessionStore::SessionStore(const std::string& log_path, Clock clock) : clock_(std::move(clock)) {
    if (std::filesystem::exists(log_path)) {
        std::ifstream in(log_path);
        if (!in) throw IoError("cannot read session log " + log_path);
        sessions_ = replay(in);
        for (const auto& [id, s] : sessions_) {
            locks_[id] = std::make_shared<std::mutex>();
            next_id_ = std::max(next_id_, id_number(id) + 1);
        }
    }
    log_.emplace(log_path, std::ios::app);
    if (!*log_) throw IoError("cannot open session log " + log_path);
}

void SessionStore::write_event(const std::string& line) {
    if (!log_) return;
    std::lock_guard lock(log_mutex_);
    *log_ << line << '\n';
    log_->flush();
    if (!*log_) throw IoError("session log write failed");
}

Session SessionStore::create(UserContext user_context, std::optional<std::string> page_product_id) {
    Session s;
    s.user_context = std::move(user_context);
    s.current_page_product_id = std::move(page_product_id);
    {
        std::unique_lock lock(mutex_);
        s.session_id = format_id(next_id_++);
        sessions_[s.session_id] = s;
        locks_[s.session_id] = std::make_shared<std::mutex>();
    }
    write_event(Json{{"event", "create"}, {"session", s}}.dump());
    return s;
}

Session SessionStore::get(const std::string& session_id) const {
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw UnknownSession("unknown session " + session_id);
    return it->second;
}

bool SessionStore::contains(const std::string& session_id) const {
    std::shared_lock lock(mutex_);
    return sessions_.contains(session_id);
}

Session SessionStore::append(const std::string& session_id, ConversationTurn turn) {
    Session updated;
    {
        std::unique_lock lock(mutex_);
        auto it = sessions_.find(session_id);
        if (it == sessions_.end()) throw UnknownSession("unknown session " + session_id);
        turn.turn_index = it->second.turns.empty() ? 1 : it->second.turns.back().turn_index + 1;
        turn.timestamp_ms = clock_();
        it->second = session_append_turn(std::move(it->second), turn);
        updated = it->second;
    }
    write_event(Json{{"event", "turn"}, {"session_id", session_id}, {"turn", turn}}.dump());
    return updated;
}

std::shared_ptr<std::mutex> SessionStore::turn_lock(const std::string& session_id) const {
    std::shared_lock lock(mutex_);
    auto it = locks_.find(session_id);
    if (it == locks_.end()) throw UnknownSession("unknown session " + session_id);
    return it->second;
}

std::vector<std::string> SessionStore::ids() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [id, s] : sessions_) out.push_back(id);
    return out;
}

std::map<std::string, Session> SessionStore::replay(std::istream& log) {
    std::map<std::string, Session> sessions;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(log, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const Json j = Json::parse(line);
            const auto event = j.at("event").get<std::string>();
            if (event == "create") {
                Session s = j.at("session").get<Session>();
                const std::string id = s.session_id;
                if (!sessions.emplace(id, std::move(s)).second) throw Error("session " + id + " created twice");
            } else if (event == "turn") {
                const auto id = j.at("session_id").get<std::string>();
                auto it = sessions.find(id);
                if (it == sessions.end()) throw Error("turn for unknown session " + id);
                it->second = session_append_turn(std::move(it->second), j.at("turn").get<ConversationTurn>());
            } else {
                throw Error("unknown event '" + event + "'");
            }
        } catch (const std::exception& e) {
            throw ParseError("session log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return sessions;
}

}  // namespace pqa::service
