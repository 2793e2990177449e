#include <gtest/gtest.h>

#include <thread>

#include "cliffrw/algorithms.hpp"
#include "cliffrw/error.hpp"
#include "cliffrw/service/http.hpp"
#include "cliffrw/service/json.hpp"
#include "cliffrw/service/session.hpp"

// After Eigen: the resolver headers pulled in here define _res, an Eigen parameter name.
#include <httplib.h>

using namespace cliffrw;
using namespace cliffrw::service;

namespace {

const std::string kBell = "qubits 2\nh q0\ncx q0 q1";

struct Reply {
    int status;
    Json body;
};

Reply call(SessionService& svc, std::string_view method, const std::string& path, const Json& body = Json::object(),
           std::map<std::string, std::string> query = {}) {
    const auto r = svc.handle(method, path, query, body.empty() ? std::string() : body.dump());
    return {r.status, r.content_type == "application/json" ? Json::parse(r.body) : Json(r.body)};
}

std::string open_session(SessionService& svc, const std::string& source) {
    const auto r = call(svc, "POST", "/sessions", {{"source", source}});
    EXPECT_EQ(r.status, 201);
    return r.body.at("id").get<std::string>();
}

Json apply_body(const rewrite::Match& m) {
    return {{"rule", to_string(m.rule)},
            {"direction", to_string(m.direction)},
            {"at", m.gate_indices},
            {"wires", m.wires},
            {"position", m.position},
            {"policy", to_string(m.policy)}};
}

}  // namespace

TEST(JsonViews, CircuitMirrorsGates) {
    const Json j = circuit_json(parse_circuit("qubits 2\nbits 1\ncx ~q0 q1\nmeasure q1 -> c0"));
    EXPECT_EQ(j["qubits"], 2);
    EXPECT_EQ(j["bits"], 1);
    EXPECT_EQ(j["gates"].size(), 2U);
    EXPECT_EQ(j["gates"][0]["controls"][0]["open"], true);
    EXPECT_EQ(j["gates"][1]["bit"], 0);
    EXPECT_EQ(j["hash"].get<std::string>().size(), 16U);
}

TEST(JsonViews, MatchRoundTrip) {
    const Circuit c = parse_circuit("qubits 2\nh q0\nh q0\ncz q0 q1");
    for (auto rule : {rewrite::RuleId::HH_CANCEL, rewrite::RuleId::CZ_TO_HCXH}) {
        for (const auto& m : rewrite::find_matches(c, rule)) {
            auto back = match_from_json(match_json(m));
            back.revision = m.revision;
            EXPECT_EQ(back, m);
        }
    }
}

TEST(JsonViews, MatchErrors) {
    EXPECT_THROW((void)match_from_json(Json::array()), ValidationError);
    EXPECT_THROW((void)match_from_json({{"rule", "NOPE"}}), ValidationError);
    EXPECT_THROW((void)match_from_json({{"rule", "HH_CANCEL"}, {"at", "x"}}), ValidationError);
    EXPECT_THROW((void)match_from_json({{"rule", "HH_CANCEL"}, {"direction", "sideways"}}), ValidationError);
}

TEST(Sessions, CreateReportsMatches) {
    SessionService svc(1);
    const auto r = call(svc, "POST", "/sessions", {{"source", "qubits 1\nh q0\nh q0"}});
    EXPECT_EQ(r.status, 201);
    EXPECT_EQ(r.body["revision"], 0);
    EXPECT_EQ(r.body["matches_summary"]["HH_CANCEL"], 1);
    EXPECT_EQ(svc.session_count(), 1U);
}

TEST(Sessions, ApplyVerifiesAndUndoRestores) {
    SessionService svc(2);
    const Circuit start = algorithms::build_bv_classical("101");
    const auto id = open_session(svc, emit_circuit(start));
    const auto applied = call(svc, "POST", "/sessions/" + id + "/apply", {{"rule", "CX_TO_HCZH"}, {"at", {3}}});
    ASSERT_EQ(applied.status, 200) << applied.body.dump();
    EXPECT_EQ(applied.body["badge"], "verified");
    EXPECT_EQ(applied.body["revision"], 1);
    EXPECT_NE(applied.body["circuit"]["cqc"], emit_circuit(start));

    const auto undone = call(svc, "POST", "/sessions/" + id + "/undo", {{"revision", 1}});
    ASSERT_EQ(undone.status, 200);
    EXPECT_EQ(undone.body["circuit"]["cqc"], emit_circuit(start));
    EXPECT_EQ(undone.body["revision"], 2);
    EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/undo").status, 422);
}

TEST(Sessions, StaleRevisionConflicts) {
    SessionService svc(3);
    const auto id = open_session(svc, "qubits 1\nh q0\nh q0\nh q0\nh q0");
    EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/apply", {{"rule", "HH_CANCEL"}, {"revision", 0}}).status, 200);
    const auto stale = call(svc, "POST", "/sessions/" + id + "/apply", {{"rule", "HH_CANCEL"}, {"revision", 0}});
    EXPECT_EQ(stale.status, 409);
    EXPECT_TRUE(stale.body.contains("error"));
    EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/apply", {{"rule", "HH_CANCEL"}, {"revision", 1}}).status, 200);
}

TEST(Sessions, ErrorStatuses) {
    SessionService svc(4);
    EXPECT_EQ(call(svc, "GET", "/sessions/nope").status, 404);
    EXPECT_EQ(call(svc, "GET", "/elsewhere").status, 404);
    EXPECT_EQ(call(svc, "POST", "/sessions", {{"source", "qubits 1\nfoo q0"}}).status, 400);
    EXPECT_EQ(call(svc, "POST", "/sessions", {{"nothing", 1}}).status, 400);
    EXPECT_EQ(svc.handle("POST", "/sessions", {}, "{not json").status, 400);
    const auto id = open_session(svc, kBell);
    EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/apply", {{"rule", "HH_CANCEL"}}).status, 422);
    EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/apply", {{"rule", "BOGUS"}}).status, 400);
    EXPECT_EQ(call(svc, "GET", "/sessions/" + id + "/matches").status, 400);
    EXPECT_EQ(call(svc, "GET", "/sessions/" + id + "/apply").status, 405);
}

TEST(Sessions, MatchesClassifyVerifyAndDiagram) {
    SessionService svc(5);
    const auto id = open_session(svc, kBell);
    const auto m = call(svc, "GET", "/sessions/" + id + "/matches", {}, {{"rule", "CX_TO_HCZH"}});
    ASSERT_EQ(m.status, 200);
    ASSERT_EQ(m.body["matches"].size(), 1U);
    EXPECT_EQ(m.body["matches"][0]["at"], Json::array({1}));

    const auto cls = call(svc, "GET", "/sessions/" + id + "/classify");
    EXPECT_EQ(cls.body["family"], "III");
    EXPECT_EQ(cls.body["witness"]["rank"], 1);

    EXPECT_EQ(call(svc, "GET", "/sessions/" + id + "/verify").body["all_verified"], true);

    const auto svg = svc.handle("GET", "/sessions/" + id + "/diagram.svg", {}, "");
    EXPECT_EQ(svg.status, 200);
    EXPECT_EQ(svg.content_type, "image/svg+xml");
    EXPECT_NE(svg.body.find("<svg"), std::string::npos);

    const auto rules = call(svc, "GET", "/rules");
    EXPECT_EQ(rules.body.size(), rewrite::all_rules().size());
}

TEST(Sessions, BvTourMatchesScriptedDerivation) {
    const std::string secret = "10110011";
    const auto d = algorithms::derive_bv_chain(secret);
    SessionService svc(6);
    const auto id = open_session(svc, emit_circuit(d.initial()));
    std::uint64_t rev = 0;
    for (const auto& step : d.steps()) {
        Json body = apply_body(step.match);
        body["revision"] = rev;
        const auto r = call(svc, "POST", "/sessions/" + id + "/apply", body);
        ASSERT_EQ(r.status, 200) << r.body.dump();
        EXPECT_EQ(r.body["badge"], "verified");
        rev = r.body["revision"].get<std::uint64_t>();
    }
    const auto final_state = call(svc, "GET", "/sessions/" + id);
    EXPECT_EQ(final_state.body["circuit"]["cqc"], emit_circuit(algorithms::build_bv_canonical(secret)));
    EXPECT_EQ(final_state.body["circuit"]["cqc"], emit_circuit(d.current()));
}

TEST(Sessions, InterleavedSessionsStayIndependent) {
    SessionService svc(7);
    const std::string src = "qubits 2\nh q0\nh q0\nh q1\nh q1";
    const auto a = open_session(svc, src);
    const auto b = open_session(svc, src);
    std::vector<std::thread> pool;
    for (const auto& id : {a, b}) {
        pool.emplace_back([&svc, id, first = id == a] {
            for (int k = 0; k < 50; ++k) {
                (void)call(svc, "POST", "/sessions/" + id + "/apply", {{"rule", "HH_CANCEL"}, {"at", {0, 1}}});
                if (first) (void)call(svc, "POST", "/sessions/" + id + "/undo");
            }
        });
    }
    for (auto& t : pool) t.join();
    const auto ra = call(svc, "GET", "/sessions/" + a).body;
    EXPECT_EQ(ra["circuit"]["cqc"], emit_circuit(parse_circuit(src)));
    EXPECT_EQ(ra["revision"], 100);
    EXPECT_EQ(ra["steps"].size(), 0U);
    const auto rb = call(svc, "GET", "/sessions/" + b).body;
    EXPECT_EQ(rb["circuit"]["cqc"], "qubits 2");
    EXPECT_EQ(rb["steps"].size(), 2U);
}

TEST(Http, ServesTheProtocol) {
    SessionService svc(8);
    HttpServer server(svc);
    const int port = server.bind("127.0.0.1", 0);
    ASSERT_GT(port, 0);
    std::thread t([&server] { server.listen(); });

    httplib::Client cli("127.0.0.1", port);
    auto created = cli.Post("/sessions", Json{{"source", kBell}}.dump(), "application/json");
    ASSERT_TRUE(created);
    EXPECT_EQ(created->status, 201);
    const auto id = Json::parse(created->body)["id"].get<std::string>();

    auto matches = cli.Get("/sessions/" + id + "/matches?rule=CX_TO_HCZH");
    ASSERT_TRUE(matches);
    EXPECT_EQ(Json::parse(matches->body)["matches"].size(), 1U);

    auto applied = cli.Post("/sessions/" + id + "/apply", R"({"rule":"CX_TO_HCZH","at":[1],"revision":0})",
                            "application/json");
    ASSERT_TRUE(applied);
    EXPECT_EQ(applied->status, 200);
    EXPECT_EQ(Json::parse(applied->body)["badge"], "verified");

    auto missing = cli.Get("/sessions/none");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 404);

    server.stop();
    t.join();
}
