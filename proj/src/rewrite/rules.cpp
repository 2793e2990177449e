#include "cliffrw/rewrite/rules.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "cliffrw/error.hpp"
#include "rules_internal.hpp"

namespace cliffrw::rewrite {
namespace {

struct CatalogueEntry {
    RuleId id;
    std::string_view name;
    std::string_view pattern;
    std::string_view replacement;
    RuleId inverse;
    Direction inverse_direction;
    bool state_dependent;
};

constexpr Direction F = Direction::Forward;
constexpr Direction B = Direction::Backward;

constexpr std::array kCatalogue{
    CatalogueEntry{RuleId::HH_CANCEL, "HH_CANCEL", "[H q; H q]", "[]", RuleId::HH_CANCEL, B, false},
    CatalogueEntry{RuleId::XX_CANCEL, "XX_CANCEL", "[G; G] for an X-family gate G, nothing between on its wires",
                   "[]", RuleId::XX_CANCEL, B, false},
    CatalogueEntry{RuleId::ZZ_CANCEL, "ZZ_CANCEL", "[P; P] for a phase gate P, only diagonal gates between", "[]",
                   RuleId::ZZ_CANCEL, B, false},
    CatalogueEntry{RuleId::HXH_TO_Z, "HXH_TO_Z", "[H q; X q; H q]", "[Z q]", RuleId::HXH_TO_Z, B, false},
    CatalogueEntry{RuleId::HZH_TO_X, "HZH_TO_X", "[H q; Z q; H q]", "[X q]", RuleId::HZH_TO_X, B, false},
    CatalogueEntry{RuleId::CX_TO_HCZH, "CX_TO_HCZH", "[CX c t]", "[H t; CZ c t; H t]", RuleId::CX_TO_HCZH, B, false},
    CatalogueEntry{RuleId::CZ_TO_HCXH, "CZ_TO_HCXH", "[CZ c t]", "[H t; CX c t; H t] (t any closed participant)",
                   RuleId::CZ_TO_HCXH, B, false},
    CatalogueEntry{RuleId::CX_FULL_H_REVERSE, "CX_FULL_H_REVERSE", "[H c; H t; CX c t; H c; H t]", "[CX t c]",
                   RuleId::CX_FULL_H_REVERSE, B, false},
    CatalogueEntry{RuleId::MCX_TO_HMCZH, "MCX_TO_HMCZH", "[MCX C -> t] with |C| >= 2", "[H t; MCZ C+t; H t]",
                   RuleId::MCX_TO_HMCZH, B, false},
    CatalogueEntry{RuleId::MCZ_TO_HMCXH, "MCZ_TO_HMCXH", "[MCZ S] with |S| >= 3, t closed in S",
                   "[H t; MCX S-t -> t; H t]", RuleId::MCZ_TO_HMCXH, B, false},
    CatalogueEntry{RuleId::DISJOINT_COMMUTE, "DISJOINT_COMMUTE", "[A; B] adjacent, disjoint wires", "[B; A]",
                   RuleId::DISJOINT_COMMUTE, F, false},
    CatalogueEntry{RuleId::DIAGONAL_COMMUTE, "DIAGONAL_COMMUTE", "[A; B] adjacent diagonal gates sharing a wire",
                   "[B; A]", RuleId::DIAGONAL_COMMUTE, F, false},
    CatalogueEntry{RuleId::X_THROUGH_MCZ, "X_THROUGH_MCZ", "[X a; MCZ S] with a in S",
                   "[MCZ S-a; MCZ S; X a]", RuleId::X_THROUGH_MCZ, B, false},
    CatalogueEntry{RuleId::CZ_PAST_X, "CZ_PAST_X", "[X b; CZ b c]", "[CZ b c; Z c; X b]", RuleId::CZ_PAST_X, B,
                   false},
    CatalogueEntry{RuleId::MCZ_EXHAUSTION_MERGE, "MCZ_EXHAUSTION_MERGE",
                   "[MCZ S with w closed; MCZ S with w open], only diagonal gates between", "[MCZ S-w]",
                   RuleId::MCZ_EXHAUSTION_MERGE, B, false},
    CatalogueEntry{RuleId::OPEN_CONTROL_DESUGAR, "OPEN_CONTROL_DESUGAR", "[G with open controls W]",
                   "[X W; G with W closed; X W]", RuleId::OPEN_CONTROL_RESUGAR, F, false},
    CatalogueEntry{RuleId::OPEN_CONTROL_RESUGAR, "OPEN_CONTROL_RESUGAR", "[X W; G; X W] with W among G's controls",
                   "[G with W flipped]", RuleId::OPEN_CONTROL_DESUGAR, F, false},
    CatalogueEntry{RuleId::ANCILLA_SEVER, "ANCILLA_SEVER",
                   "prepared ancilla a ({}, X, H or X;H) used only as a phase participant or X-family control "
                   "(Z basis) or X-family target (X basis)",
                   "every use of a removed or resolved; preparation kept", RuleId::ANCILLA_SEVER, B, true},
    CatalogueEntry{RuleId::CX_CONTROL_SAME_AS_X, "CX_CONTROL_SAME_AS_X", "[CX c t] with c in a known basis state",
                   "[X t] if the control fires, [] otherwise", RuleId::CX_CONTROL_SAME_AS_X, B, true},
    CatalogueEntry{RuleId::BARRIER_INSERT, "BARRIER_INSERT", "[]", "[BARRIER]", RuleId::BARRIER_INSERT, B, false},
};

const CatalogueEntry& entry(RuleId id) {
    return kCatalogue.at(static_cast<std::size_t>(id));
}

std::size_t primary(const Match& m) { return m.gate_indices.empty() ? m.position : m.gate_indices.front(); }

}  // namespace

std::string_view to_string(RuleId rule) noexcept { return entry(rule).name; }

std::string_view to_string(Direction dir) noexcept { return dir == Direction::Forward ? "forward" : "backward"; }

std::string_view to_string(BarrierPolicy policy) noexcept {
    return policy == BarrierPolicy::Opaque ? "opaque" : "transparent";
}

std::optional<RuleId> rule_from_string(std::string_view name) noexcept {
    for (const auto& e : kCatalogue) {
        if (e.name == name) return e.id;
    }
    return std::nullopt;
}

std::optional<Direction> direction_from_string(std::string_view name) noexcept {
    if (name == "forward") return Direction::Forward;
    if (name == "backward") return Direction::Backward;
    return std::nullopt;
}

std::optional<BarrierPolicy> policy_from_string(std::string_view name) noexcept {
    if (name == "opaque") return BarrierPolicy::Opaque;
    if (name == "transparent") return BarrierPolicy::Transparent;
    return std::nullopt;
}

const std::vector<RuleId>& all_rules() {
    static const std::vector<RuleId> rules = [] {
        std::vector<RuleId> out;
        for (const auto& e : kCatalogue) out.push_back(e.id);
        return out;
    }();
    return rules;
}

RuleSemantics rule_semantics(RuleId rule) {
    const auto& e = entry(rule);
    return {e.id, std::string(e.pattern), std::string(e.replacement), e.inverse, e.inverse_direction,
            e.state_dependent};
}

std::uint64_t input_constraint_mask(const Match& m) noexcept {
    if ((m.rule == RuleId::ANCILLA_SEVER || m.rule == RuleId::CX_CONTROL_SAME_AS_X) && !m.wires.empty()) {
        return std::uint64_t{1} << m.wires.front();
    }
    return 0;
}

std::string describe(const Match& m) {
    std::ostringstream out;
    out << to_string(m.rule) << " " << to_string(m.direction) << " at=[";
    for (std::size_t k = 0; k < m.gate_indices.size(); ++k) out << (k ? "," : "") << m.gate_indices[k];
    out << "] wires=[";
    for (std::size_t k = 0; k < m.wires.size(); ++k) out << (k ? "," : "") << m.wires[k];
    out << "] pos=" << m.position;
    return out.str();
}

namespace detail {

RuleImpl rule_impl(RuleId rule, Direction dir) {
    switch (rule) {
        case RuleId::X_THROUGH_MCZ:
        case RuleId::CZ_PAST_X:
        case RuleId::MCZ_EXHAUSTION_MERGE:
        case RuleId::OPEN_CONTROL_DESUGAR:
        case RuleId::OPEN_CONTROL_RESUGAR:
        case RuleId::ANCILLA_SEVER:
        case RuleId::CX_CONTROL_SAME_AS_X: return phase_rule(rule, dir);
        default: return local_rule(rule, dir);
    }
}

}  // namespace detail

std::vector<Match> find_matches(const Circuit& c, RuleId rule, BarrierPolicy policy, Direction direction) {
    auto ms = detail::rule_impl(rule, direction).find(c, policy, direction);
    for (auto& m : ms) {
        m.revision = c.revision();
        m.policy = policy;
    }
    std::stable_sort(ms.begin(), ms.end(), [](const Match& a, const Match& b) {
        return std::make_tuple(primary(a), a.gate_indices, a.wires, a.position) <
               std::make_tuple(primary(b), b.gate_indices, b.wires, b.position);
    });
    return ms;
}

Circuit apply_rule(const Circuit& c, const Match& m) {
    if (m.revision != c.revision()) {
        throw StaleMatchError("match was found on revision " + std::to_string(m.revision) +
                              " but the circuit is at revision " + std::to_string(c.revision()));
    }
    auto same_site = [&m](const Match& f) {
        return f.gate_indices == m.gate_indices && f.position == m.position && (m.wires.empty() || f.wires == m.wires);
    };
    const auto impl = detail::rule_impl(m.rule, m.direction);
    const auto found = impl.find(c, m.policy, m.direction);
    auto it = std::find_if(found.begin(), found.end(), same_site);
    if (it == found.end()) {
        if (m.policy == BarrierPolicy::Opaque) {
            const auto through = impl.find(c, BarrierPolicy::Transparent, m.direction);
            if (std::any_of(through.begin(), through.end(), same_site)) {
                throw BarrierViolationError(describe(m) + " crosses a barrier");
            }
        }
        throw StaleMatchError(describe(m) + " does not apply to this circuit");
    }
    return c.with_gates(impl.rewrite(c, *it));
}

Circuit sever_ancilla(const Circuit& c, int ancilla) {
    if (ancilla < 0 || ancilla >= c.num_qubits()) {
        throw ValidationError("ancilla wire out of range");
    }
    auto gates = detail::sever(c, ancilla);
    if (gates == c.gates()) return c;
    return c.with_gates(std::move(gates));
}

Circuit exhaustion_merge(const Circuit& c, const std::vector<std::size_t>& gate_indices, BarrierPolicy policy) {
    std::vector<std::size_t> idx = gate_indices;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.size() < 2) throw NotMergeableError("exhaustion needs at least two gates");
    const auto& g = c.gates();
    for (auto i : idx) {
        if (i >= g.size() || !g[i].is_phase_family()) throw NotMergeableError("exhaustion applies to phase gates only");
    }
    const auto wires = g[idx.front()].wires();
    for (auto i : idx) {
        if (g[i].wires() != wires) throw NotMergeableError("phase gates act on different wires");
    }
    for (std::size_t k = idx.front() + 1; k < idx.back(); ++k) {
        if (std::binary_search(idx.begin(), idx.end(), k)) continue;
        if (g[k].is_barrier()) {
            if (policy == BarrierPolicy::Opaque) throw BarrierViolationError("exhaustion group spans a barrier");
            continue;
        }
        const bool touches = std::any_of(wires.begin(), wires.end(), [&](int w) { return g[k].touches(w); });
        if (touches && !g[k].is_diagonal()) {
            throw NotMergeableError("a non-diagonal gate separates the group: " + g[k].to_cqc());
        }
    }
    std::vector<std::optional<Gate>> pool;
    for (auto i : idx) pool.emplace_back(g[i]);
    bool merged_any = false;
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t a = 0; a < pool.size() && !progress; ++a) {
            for (std::size_t b = a + 1; b < pool.size() && !progress; ++b) {
                if (!pool[a] || !pool[b]) continue;
                auto w = detail::merge_wire(*pool[a], *pool[b]);
                if (!w) continue;
                pool[a] = phase_up_to_global(detail::participants_without(*pool[a], *w));
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(b));
                if (!pool[a]) pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(a));
                progress = merged_any = true;
            }
        }
    }
    if (!merged_any) throw NotMergeableError("no two gates in the group differ in exactly one polarity");
    std::vector<Gate> rest;
    for (const auto& p : pool) {
        if (p) rest.push_back(*p);
    }
    return c.with_gates(detail::splice(g, {idx.begin(), idx.end()}, idx.front(), rest));
}

Circuit exhaustion_merge(const Circuit& c, const std::vector<Match>& group) {
    std::vector<std::size_t> idx;
    BarrierPolicy policy = BarrierPolicy::Opaque;
    for (const auto& m : group) {
        if (m.revision != c.revision()) throw StaleMatchError("exhaustion group was found on another revision");
        idx.insert(idx.end(), m.gate_indices.begin(), m.gate_indices.end());
        policy = m.policy;
    }
    return exhaustion_merge(c, idx, policy);
}

}  // namespace cliffrw::rewrite
