#include "cliffrw/service/json.hpp"

#include "cliffrw/error.hpp"

namespace cliffrw::service {

using rewrite::Direction;
using rewrite::Match;
using rewrite::RuleId;

Json gate_json(const Gate& g) {
    Json j{{"kind", to_string(g.kind())}, {"cqc", g.to_cqc()}, {"targets", g.targets()}};
    Json controls = Json::array();
    for (const auto& c : g.controls()) controls.push_back({{"wire", c.wire}, {"open", c.open}});
    j["controls"] = std::move(controls);
    if (g.bit()) j["bit"] = *g.bit();
    return j;
}

Json circuit_json(const Circuit& c) {
    Json gates = Json::array();
    for (const auto& g : c.gates()) gates.push_back(gate_json(g));
    return {{"cqc", emit_circuit(c)},    {"hash", circuit_hash(c)},   {"qubits", c.num_qubits()},
            {"bits", c.num_bits()},     {"revision", c.revision()},  {"gates", std::move(gates)}};
}

Json match_json(const Match& m) {
    return {{"rule", to_string(m.rule)},
            {"direction", to_string(m.direction)},
            {"at", m.gate_indices},
            {"wires", m.wires},
            {"position", m.position},
            {"revision", m.revision},
            {"policy", to_string(m.policy)},
            {"description", rewrite::describe(m)}};
}

Match match_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("match must be a JSON object");
    if (!j.contains("rule") || !j["rule"].is_string()) throw ValidationError("match needs a string field 'rule'");
    Match m;
    const auto name = j["rule"].get<std::string>();
    const auto rule = rewrite::rule_from_string(name);
    if (!rule) throw ValidationError("unknown rule " + name);
    m.rule = *rule;
    try {
        if (j.contains("direction")) {
            const auto d = rewrite::direction_from_string(j["direction"].get<std::string>());
            if (!d) throw ValidationError("unknown direction " + j["direction"].dump());
            m.direction = *d;
        }
        if (j.contains("policy")) {
            const auto p = rewrite::policy_from_string(j["policy"].get<std::string>());
            if (!p) throw ValidationError("unknown barrier policy " + j["policy"].dump());
            m.policy = *p;
        }
        if (j.contains("at")) m.gate_indices = j["at"].get<std::vector<std::size_t>>();
        if (j.contains("wires")) m.wires = j["wires"].get<std::vector<int>>();
        if (j.contains("position")) m.position = j["position"].get<std::size_t>();
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("malformed match: ") + e.what());
    }
    return m;
}

std::string badge(rewrite::StepCheck check) {
    switch (check) {
        case rewrite::StepCheck::Verified: return "verified";
        case rewrite::StepCheck::Failed: return "failed";
        case rewrite::StepCheck::Skipped: return "unverified (size)";
        case rewrite::StepCheck::Unchecked: break;
    }
    return "unchecked";
}

Json step_json(const rewrite::DerivationStep& s, std::size_t index) {
    Json j{{"index", index},
           {"match", match_json(s.match)},
           {"hash", circuit_hash(s.snapshot)},
           {"check", to_string(s.check)},
           {"badge", badge(s.check)}};
    if (!s.label.empty()) j["label"] = s.label;
    return j;
}

Json derivation_json(const rewrite::Derivation& d) {
    Json steps = Json::array();
    for (std::size_t k = 0; k < d.size(); ++k) steps.push_back(step_json(d.steps()[k], k + 1));
    Json j{{"initial", circuit_json(d.initial())},
           {"current", circuit_json(d.current())},
           {"steps", std::move(steps)},
           {"milestones", d.milestones()}};
    if (!d.initial_label().empty()) j["initial_label"] = d.initial_label();
    return j;
}

Json verdict_json(const taxonomy::FamilyVerdict& v) {
    Json j{{"family", to_string(v.family)}, {"label", v.label()}, {"confirmed", v.confirmed}, {"notes", v.notes}};
    if (v.frame) j["frame"] = taxonomy::to_string(*v.frame);
    if (v.reduced) j["reduced"] = emit_circuit(*v.reduced);
    if (!v.cut.empty()) {
        j["witness"] = {{"cut", v.cut}, {"input", v.input}, {"rank", v.rank}};
    }
    return j;
}

Json equivalence_json(const sim::EquivalenceReport& r) {
    return {{"equivalent", r.equivalent},
            {"global_phase", {r.global_phase.real(), r.global_phase.imag()}},
            {"max_deviation", r.max_deviation}};
}

Json rule_json(RuleId rule) {
    const auto s = rewrite::rule_semantics(rule);
    return {{"name", to_string(rule)},
            {"pattern", s.pattern},
            {"replacement", s.replacement},
            {"inverse", to_string(s.inverse)},
            {"inverse_direction", to_string(s.inverse_direction)},
            {"state_dependent", s.state_dependent}};
}

Json identity_json(const sim::IdentityCheck& c) {
    return {{"name", c.name}, {"holds", c.holds}, {"deviation", c.deviation}};
}

Json matches_summary(const Circuit& c, rewrite::BarrierPolicy policy) {
    Json j = Json::object();
    for (RuleId r : rewrite::all_rules()) {
        // Insertions are possible almost everywhere; they are listed on request only.
        if (r == RuleId::BARRIER_INSERT) continue;
        const auto n = rewrite::find_matches(c, r, policy).size();
        if (n > 0) j[std::string(to_string(r))] = n;
    }
    return j;
}

}  // namespace cliffrw::service
