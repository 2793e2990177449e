#include "cliffrw/service/session.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "cliffrw/error.hpp"
#include "cliffrw/render.hpp"
#include "cliffrw/service/json.hpp"
#include "cliffrw/taxonomy.hpp"

namespace cliffrw::service {
namespace {

using rewrite::BarrierPolicy;
using rewrite::Direction;
using rewrite::Match;

/// Thrown inside the handlers to produce a non-200 response.
struct HttpError {
    int status;
    std::string message;
};

Response json_response(const Json& j, int status = 200) { return {status, "application/json", j.dump()}; }

Response error_response(int status, const std::string& message) {
    return json_response(Json{{"error", message}}, status);
}

Json parse_body(std::string_view body) {
    if (body.empty()) return Json::object();
    try {
        Json j = Json::parse(body);
        if (!j.is_object()) throw HttpError{400, "request body must be a JSON object"};
        return j;
    } catch (const Json::parse_error& e) {
        throw HttpError{400, std::string("malformed JSON: ") + e.what()};
    }
}

std::vector<std::string_view> split_path(std::string_view path) {
    std::vector<std::string_view> parts;
    while (!path.empty()) {
        if (path.front() == '/') {
            path.remove_prefix(1);
            continue;
        }
        const auto end = path.find('/');
        parts.push_back(path.substr(0, end));
        if (end == std::string_view::npos) break;
        path.remove_prefix(end);
    }
    return parts;
}

std::optional<std::uint64_t> body_revision(const Json& j) {
    if (!j.contains("revision")) return std::nullopt;
    if (!j["revision"].is_number_unsigned()) throw HttpError{400, "'revision' must be a non-negative integer"};
    return j["revision"].get<std::uint64_t>();
}

}  // namespace

SessionService::SessionService(std::uint64_t seed) : rng_(seed == 0 ? std::random_device{}() : seed) {}

std::size_t SessionService::session_count() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw HttpError{404, "no session " + id};
    return it->second;
}

std::string SessionService::fresh_id() {
    // Caller holds mutex_.
    for (;;) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
        if (!sessions_.count(buf)) return buf;
    }
}

Response SessionService::handle(std::string_view method, std::string_view path,
                                const std::map<std::string, std::string>& query, std::string_view body) {
    try {
        const auto parts = split_path(path);
        if (parts.size() == 1 && parts[0] == "rules") {
            if (method != "GET") throw HttpError{405, "use GET for /rules"};
            Json rules = Json::array();
            for (auto r : rewrite::all_rules()) rules.push_back(rule_json(r));
            return json_response(rules);
        }
        if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
            throw HttpError{404, "no route for " + std::string(path)};
        }
        if (parts.size() == 1) {
            if (method != "POST") throw HttpError{405, "use POST to create a session"};
            return create(body);
        }
        auto s = find(std::string(parts[1]));
        std::lock_guard lock(s->mutex);
        return dispatch(*s, method, parts.size() == 3 ? parts[2] : std::string_view{}, query, body);
    } catch (const HttpError& e) {
        return error_response(e.status, e.message);
    } catch (const StaleMatchError& e) {
        return error_response(409, e.what());
    } catch (const ValidationError& e) {
        return error_response(400, e.what());
    } catch (const ParseError& e) {
        return error_response(400, e.what());
    } catch (const Error& e) {
        return error_response(422, e.what());
    }
}

Response SessionService::create(std::string_view body) {
    const Json j = parse_body(body);
    if (!j.contains("source") || !j["source"].is_string()) throw HttpError{400, "missing string field 'source'"};
    BarrierPolicy policy = BarrierPolicy::Opaque;
    if (j.contains("policy")) {
        const auto p = j["policy"].is_string() ? rewrite::policy_from_string(j["policy"].get<std::string>())
                                               : std::nullopt;
        if (!p) throw HttpError{400, "policy must be \"opaque\" or \"transparent\""};
        policy = *p;
    }
    Circuit c = parse_circuit(j["source"].get<std::string>());
    std::shared_ptr<Session> s;
    {
        std::lock_guard lock(mutex_);
        const std::string id = fresh_id();
        s = std::make_shared<Session>(id, std::move(c), policy);
        sessions_.emplace(id, s);
    }
    std::lock_guard lock(s->mutex);
    return json_response({{"id", s->id},
                          {"revision", s->revision},
                          {"policy", to_string(s->policy)},
                          {"circuit", circuit_json(s->history.current())},
                          {"matches_summary", matches_summary(s->history.current(), s->policy)}},
                         201);
}

Response SessionService::dispatch(Session& s, std::string_view method, std::string_view action,
                                  const std::map<std::string, std::string>& query, std::string_view body) {
    auto& d = s.history;
    auto require = [&](std::string_view m) {
        if (method != m) throw HttpError{405, "use " + std::string(m) + " for " + std::string(action)};
    };

    if (action.empty()) {
        require("GET");
        Json steps = Json::array();
        for (std::size_t k = 0; k < d.size(); ++k) steps.push_back(step_json(d.steps()[k], k + 1));
        return json_response({{"id", s.id},
                              {"revision", s.revision},
                              {"policy", to_string(s.policy)},
                              {"circuit", circuit_json(d.current())},
                              {"steps", std::move(steps)},
                              {"matches_summary", matches_summary(d.current(), s.policy)}});
    }

    if (action == "matches") {
        require("GET");
        auto it = query.find("rule");
        if (it == query.end()) throw HttpError{400, "query parameter 'rule' is required"};
        const auto rule = rewrite::rule_from_string(it->second);
        if (!rule) throw HttpError{400, "unknown rule " + it->second};
        Direction dir = Direction::Forward;
        if (auto dit = query.find("direction"); dit != query.end()) {
            const auto parsed = rewrite::direction_from_string(dit->second);
            if (!parsed) throw HttpError{400, "unknown direction " + dit->second};
            dir = *parsed;
        }
        Json matches = Json::array();
        for (auto m : rewrite::find_matches(d.current(), *rule, s.policy, dir)) {
            m.revision = s.revision;
            matches.push_back(match_json(m));
        }
        return json_response({{"rule", it->second}, {"revision", s.revision}, {"matches", std::move(matches)}});
    }

    if (action == "apply") {
        require("POST");
        const Json j = parse_body(body);
        if (auto r = body_revision(j); r && *r != s.revision) {
            throw HttpError{409, "request is for revision " + std::to_string(*r) + " but the session is at " +
                                     std::to_string(s.revision)};
        }
        Match want = match_from_json(j);
        if (!j.contains("policy")) want.policy = s.policy;
        const Circuit& cur = d.current();
        const auto found = rewrite::find_matches(cur, want.rule, want.policy, want.direction);
        auto it = std::find_if(found.begin(), found.end(), [&](const Match& m) {
            return (!j.contains("at") || m.gate_indices == want.gate_indices) &&
                   (!j.contains("wires") || m.wires == want.wires) &&
                   (!j.contains("position") || m.position == want.position);
        });
        if (it == found.end()) {
            throw HttpError{422, std::string(to_string(want.rule)) + " does not match at the requested site"};
        }
        std::string label;
        if (j.contains("label")) {
            if (!j["label"].is_string()) throw HttpError{400, "'label' must be a string"};
            label = j["label"].get<std::string>();
        }
        d.apply(*it, std::move(label));
        d.verify();
        ++s.revision;
        const auto& step = d.steps().back();
        return json_response({{"revision", s.revision},
                              {"circuit", circuit_json(d.current())},
                              {"badge", badge(step.check)},
                              {"step", step_json(step, d.size())}});
    }

    if (action == "undo") {
        require("POST");
        const Json j = parse_body(body);
        if (auto r = body_revision(j); r && *r != s.revision) {
            throw HttpError{409, "request is for revision " + std::to_string(*r) + " but the session is at " +
                                     std::to_string(s.revision)};
        }
        if (d.size() == 0) throw HttpError{422, "nothing to undo"};
        d.undo();
        ++s.revision;
        return json_response({{"revision", s.revision}, {"circuit", circuit_json(d.current())}});
    }

    if (action == "verify") {
        require("GET");
        d.verify();
        Json badges = Json::array();
        for (const auto& step : d.steps()) badges.push_back(badge(step.check));
        return json_response({{"revision", s.revision}, {"all_verified", d.all_verified()}, {"steps", badges}});
    }

    if (action == "classify") {
        require("GET");
        return json_response(verdict_json(taxonomy::classify(d.current())));
    }

    if (action == "trace") {
        require("GET");
        return {200, "text/plain", rewrite::serialize(d)};
    }

    if (action == "diagram.svg") {
        require("GET");
        return {200, "image/svg+xml", render(d.current(), DiagramFormat::Svg).payload};
    }

    throw HttpError{404, "no session action " + std::string(action)};
}

}  // namespace cliffrw::service
