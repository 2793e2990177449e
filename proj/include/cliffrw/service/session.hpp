#pragma once

// Interactive derivation sessions behind a small JSON protocol.
//
//   POST /sessions                       {"source": CQC, "policy"?: "opaque"|"transparent"}
//   GET  /sessions/:id
//   GET  /sessions/:id/matches?rule=R[&direction=backward]
//   POST /sessions/:id/apply             {"rule", "at"?, "wires"?, "position"?, "direction"?, "revision"?, "label"?}
//   POST /sessions/:id/undo              {"revision"?}
//   GET  /sessions/:id/verify
//   GET  /sessions/:id/classify
//   GET  /sessions/:id/trace
//   GET  /sessions/:id/diagram.svg
//   GET  /rules
//
// Errors carry {"error": message} with 400 (bad request), 404 (unknown
// session or route), 409 (stale revision) or 422 (no such match).

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>

#include "cliffrw/rewrite/derivation.hpp"

namespace cliffrw::service {

struct Response {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

class SessionService {
public:
    explicit SessionService(std::uint64_t seed = 0);

    /// Routes one request. Thread-safe; requests to one session are serialized.
    Response handle(std::string_view method, std::string_view path,
                    const std::map<std::string, std::string>& query, std::string_view body);

    [[nodiscard]] std::size_t session_count() const;

private:
    struct Session {
        Session(std::string session_id, Circuit initial, rewrite::BarrierPolicy barrier_policy)
            : id(std::move(session_id)), history(std::move(initial)), policy(barrier_policy) {}

        std::string id;
        rewrite::Derivation history;
        rewrite::BarrierPolicy policy;
        std::uint64_t revision = 0;
        std::mutex mutex;
    };

    std::shared_ptr<Session> find(const std::string& id) const;
    std::string fresh_id();

    Response create(std::string_view body);
    Response dispatch(Session& s, std::string_view method, std::string_view action,
                      const std::map<std::string, std::string>& query, std::string_view body);

    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::mt19937_64 rng_;
};

}  // namespace cliffrw::service
