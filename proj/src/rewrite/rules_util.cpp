#include <algorithm>

#include "rules_internal.hpp"

namespace cliffrw::rewrite::detail {

std::optional<std::size_t> next_on_wire(const Gates& g, std::size_t i, int w, BarrierPolicy policy) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
        if (g[j].is_barrier()) {
            if (policy == BarrierPolicy::Opaque) return std::nullopt;
            continue;
        }
        if (g[j].touches(w)) return j;
    }
    return std::nullopt;
}

std::optional<std::size_t> prev_on_wire(const Gates& g, std::size_t i, int w, BarrierPolicy policy) {
    for (std::size_t j = i; j-- > 0;) {
        if (g[j].is_barrier()) {
            if (policy == BarrierPolicy::Opaque) return std::nullopt;
            continue;
        }
        if (g[j].touches(w)) return j;
    }
    return std::nullopt;
}

std::optional<std::size_t> next_touching(const Gates& g, std::size_t i, const std::vector<int>& wires,
                                         BarrierPolicy policy) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
        if (g[j].is_barrier()) {
            if (policy == BarrierPolicy::Opaque) return std::nullopt;
            continue;
        }
        for (int w : wires) {
            if (g[j].touches(w)) return j;
        }
    }
    return std::nullopt;
}

bool measured_before(const Gates& g, std::size_t pos, int w) {
    for (std::size_t k = 0; k < pos && k < g.size(); ++k) {
        if (g[k].is_measure() && g[k].touches(w)) return true;
    }
    return false;
}

Gates splice(const Gates& g, const std::set<std::size_t>& remove, std::size_t insert_at, const Gates& insert) {
    Gates out;
    out.reserve(g.size() + insert.size());
    for (std::size_t k = 0; k <= g.size(); ++k) {
        if (k == insert_at) {
            out.insert(out.end(), insert.begin(), insert.end());
        }
        if (k < g.size() && !remove.count(k)) {
            out.push_back(g[k]);
        }
    }
    return out;
}

Match make_match(RuleId rule, Direction dir, std::vector<std::size_t> indices, std::vector<int> wires,
                 std::size_t position) {
    Match m;
    m.rule = rule;
    m.direction = dir;
    m.gate_indices = std::move(indices);
    m.wires = std::move(wires);
    m.position = position;
    return m;
}

std::vector<Control> participants_without(const Gate& g, int wire) {
    std::vector<Control> out;
    for (const auto& p : g.participants()) {
        if (p.wire != wire) out.push_back(p);
    }
    return out;
}

std::optional<Control> participant_on(const Gate& g, int wire) {
    for (const auto& p : g.participants()) {
        if (p.wire == wire) return p;
    }
    return std::nullopt;
}

std::vector<std::vector<std::optional<int>>> known_basis_values(const Circuit& c) {
    std::vector<std::optional<int>> known(static_cast<std::size_t>(c.num_qubits()), 0);
    std::vector<std::vector<std::optional<int>>> before;
    before.reserve(c.size());
    for (const auto& g : c.gates()) {
        before.push_back(known);
        if (g.is_barrier() || g.is_measure()) continue;
        switch (g.kind()) {
            case GateKind::X:
            case GateKind::Y: {
                auto& k = known[g.targets().front()];
                if (k) k = 1 - *k;
                break;
            }
            case GateKind::I:
            case GateKind::Z:
            case GateKind::S:
            case GateKind::Sdg: break;
            default:
                if (g.is_phase_family()) break;
                if (g.is_x_family()) {
                    known[g.targets().front()].reset();
                    break;
                }
                for (int w : g.wires()) known[w].reset();
        }
    }
    return before;
}

}  // namespace cliffrw::rewrite::detail
