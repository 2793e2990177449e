// Push-through, exhaustion, open-control sugar and the state-dependent rules.

#include <algorithm>
#include <map>

#include "cliffrw/error.hpp"
#include "rules_internal.hpp"

namespace cliffrw::rewrite {

std::optional<Gate> phase_up_to_global(std::vector<Control> participants) {
    if (participants.empty()) return std::nullopt;
    if (std::any_of(participants.begin(), participants.end(), [](const Control& p) { return !p.open; })) {
        return Gate::phase(std::move(participants));
    }
    if (participants.size() == 1) {
        // (-1)^[q = 0] = -Z
        return Gate::z(participants.front().wire);
    }
    throw NotMergeableError("an all-open phase condition on several wires has no single-gate form");
}

namespace detail {
namespace {

using D = Direction;

// --- X pushed through a phase gate ---------------------------------------------

struct PushSite {
    std::size_t x_index;
    std::size_t phase_index;
    int wire;
    std::optional<Gate> rest;
};

std::vector<PushSite> push_sites(const Circuit& c, BarrierPolicy pol, bool cz_only) {
    std::vector<PushSite> out;
    const auto& g = c.gates();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].kind() != GateKind::X) continue;
        const int a = g[i].targets().front();
        auto j = next_on_wire(g, i, a, pol);
        if (!j || !g[*j].is_phase_family() || g[*j].arity() < 2) continue;
        if (cz_only && g[*j].arity() != 2) continue;
        try {
            out.push_back({i, *j, a, phase_up_to_global(participants_without(g[*j], a))});
        } catch (const NotMergeableError&) {
        }
    }
    return out;
}

std::vector<Match> find_push(const Circuit& c, BarrierPolicy pol, RuleId rule) {
    std::vector<Match> out;
    for (const auto& s : push_sites(c, pol, rule == RuleId::CZ_PAST_X)) {
        out.push_back(make_match(rule, D::Forward, {s.x_index, s.phase_index}, {s.wire}));
    }
    return out;
}

Gates push(const Circuit& c, const Match& m) {
    const std::size_t i = m.gate_indices[0];
    const std::size_t j = m.gate_indices[1];
    const int a = m.wires.front();
    const Gate& ph = c[j];
    auto rest = phase_up_to_global(participants_without(ph, a));
    Gates ins;
    if (m.rule == RuleId::CZ_PAST_X) {
        ins.push_back(ph);
        if (rest) ins.push_back(*rest);
    } else {
        if (rest) ins.push_back(*rest);
        ins.push_back(ph);
    }
    ins.push_back(Gate::x(a));
    return splice(c.gates(), {i, j}, j, ins);
}

// Finds `target` between `from` and `to` (exclusive), scanning in `step`
// direction, crossing only diagonal gates on its wires.
std::optional<std::size_t> find_diagonal_partner(const Gates& g, std::size_t from, std::ptrdiff_t step,
                                                  std::size_t limit, const Gate& target, BarrierPolicy pol) {
    const auto wires = target.wires();
    for (auto k = static_cast<std::ptrdiff_t>(from) + step; k >= 0 && static_cast<std::size_t>(k) != limit &&
                                                             static_cast<std::size_t>(k) < g.size();
         k += step) {
        const Gate& h = g[static_cast<std::size_t>(k)];
        if (h.is_barrier()) {
            if (pol == BarrierPolicy::Opaque) return std::nullopt;
            continue;
        }
        if (!std::any_of(wires.begin(), wires.end(), [&](int w) { return h.touches(w); })) continue;
        if (h == target) return static_cast<std::size_t>(k);
        if (!h.is_diagonal()) return std::nullopt;
    }
    return std::nullopt;
}

// Inverse: [rest; MCZ; X a] -> [X a; MCZ]   (CZ_PAST_X: [CZ; Z c; X b] -> [X b; CZ])
std::vector<Match> find_pull(const Circuit& c, BarrierPolicy pol, RuleId rule) {
    std::vector<Match> out;
    const auto& g = c.gates();
    const bool cz = rule == RuleId::CZ_PAST_X;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g[k].kind() != GateKind::X) continue;
        const int a = g[k].targets().front();
        auto j = prev_on_wire(g, k, a, pol);
        if (!j || !g[*j].is_phase_family() || g[*j].arity() < 2) continue;
        if (cz && g[*j].arity() != 2) continue;
        std::optional<Gate> rest;
        try {
            rest = phase_up_to_global(participants_without(g[*j], a));
        } catch (const NotMergeableError&) {
            continue;
        }
        if (!rest) continue;
        if (cz) {
            auto i = find_diagonal_partner(g, *j, +1, k, *rest, pol);
            if (i) out.push_back(make_match(rule, D::Backward, {*j, *i, k}, {a}));
        } else {
            auto i = find_diagonal_partner(g, *j, -1, g.size(), *rest, pol);
            if (i) out.push_back(make_match(rule, D::Backward, {*i, *j, k}, {a}));
        }
    }
    return out;
}

Gates pull(const Circuit& c, const Match& m) {
    const auto& idx = m.gate_indices;
    const std::size_t phase_index = m.rule == RuleId::CZ_PAST_X ? idx[0] : idx[1];
    return splice(c.gates(), {idx[0], idx[1], idx[2]}, phase_index, {Gate::x(m.wires.front()), c[phase_index]});
}

// --- exhaustion ------------------------------------------------------------------

/// Wire on which two phase gates on the same wires differ in polarity, if exactly one.
std::optional<int> single_polarity_difference(const Gate& a, const Gate& b) {
    if (!a.is_phase_family() || !b.is_phase_family() || a.wires() != b.wires()) return std::nullopt;
    const auto pa = a.participants();
    const auto pb = b.participants();
    std::optional<int> diff;
    for (std::size_t k = 0; k < pa.size(); ++k) {
        if (pa[k].open != pb[k].open) {
            if (diff) return std::nullopt;
            diff = pa[k].wire;
        }
    }
    return diff;
}

std::vector<Match> find_merge(const Circuit& c, BarrierPolicy pol) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_phase_family() || g[i].arity() < 2) continue;
        const auto wires = g[i].wires();
        for (std::size_t k = i + 1; k < g.size(); ++k) {
            if (g[k].is_barrier()) {
                if (pol == BarrierPolicy::Opaque) break;
                continue;
            }
            if (!std::any_of(wires.begin(), wires.end(), [&](int w) { return g[k].touches(w); })) continue;
            if (auto w = single_polarity_difference(g[i], g[k])) {
                out.push_back(make_match(RuleId::MCZ_EXHAUSTION_MERGE, D::Forward, {i, k}, {*w}));
            }
            if (!g[k].is_diagonal()) break;
        }
    }
    return out;
}

Gates merge(const Circuit& c, const Match& m) {
    const std::size_t i = m.gate_indices[0];
    const std::size_t k = m.gate_indices[1];
    auto merged = phase_up_to_global(participants_without(c[i], m.wires.front()));
    Gates ins;
    if (merged) ins.push_back(*merged);
    return splice(c.gates(), {i, k}, i, ins);
}

std::vector<Match> find_split(const Circuit& c) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_phase_family()) continue;
        for (int w = 0; w < c.num_qubits(); ++w) {
            if (!g[i].touches(w) && !measured_before(g, i, w)) {
                out.push_back(make_match(RuleId::MCZ_EXHAUSTION_MERGE, D::Backward, {i}, {w}));
            }
        }
    }
    return out;
}

Gates split(const Circuit& c, const Match& m) {
    const std::size_t i = m.gate_indices.front();
    const int w = m.wires.front();
    auto closed = c[i].participants();
    auto open = closed;
    closed.push_back({w, false});
    open.push_back({w, true});
    return splice(c.gates(), {i}, i, {Gate::phase(closed), Gate::phase(open)});
}

// --- open controls -----------------------------------------------------------------

bool has_controls(const Gate& g) {
    return (g.is_x_family() && !g.controls().empty()) || (g.is_phase_family() && g.arity() >= 2);
}

std::vector<Control> control_list(const Gate& g) {
    return g.is_phase_family() ? g.participants() : g.controls();
}

Gate with_controls(const Gate& g, std::vector<Control> ctl) {
    return g.is_phase_family() ? Gate::phase(std::move(ctl)) : Gate::x_family(std::move(ctl), g.targets().front());
}

std::vector<Match> find_desugar(const Circuit& c) {
    std::vector<Match> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!has_controls(c[i]) || !c[i].has_open_control()) continue;
        std::vector<int> wires;
        for (const auto& p : control_list(c[i])) {
            if (p.open) wires.push_back(p.wire);
        }
        out.push_back(make_match(RuleId::OPEN_CONTROL_DESUGAR, D::Forward, {i}, wires));
    }
    return out;
}

Gates desugar(const Circuit& c, const Match& m) {
    const std::size_t i = m.gate_indices.front();
    auto ctl = control_list(c[i]);
    Gates xs;
    for (auto& p : ctl) {
        if (p.open) {
            p.open = false;
            xs.push_back(Gate::x(p.wire));
        }
    }
    Gates ins = xs;
    ins.push_back(with_controls(c[i], ctl));
    ins.insert(ins.end(), xs.begin(), xs.end());
    return splice(c.gates(), {i}, i, ins);
}

std::vector<Match> find_resugar(const Circuit& c, BarrierPolicy pol) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (!has_controls(g[j])) continue;
        std::vector<int> wires;
        std::vector<std::size_t> before, after;
        for (const auto& p : control_list(g[j])) {
            auto i = prev_on_wire(g, j, p.wire, pol);
            auto k = next_on_wire(g, j, p.wire, pol);
            if (i && k && g[*i].kind() == GateKind::X && g[*k].kind() == GateKind::X) {
                wires.push_back(p.wire);
                before.push_back(*i);
                after.push_back(*k);
            }
        }
        if (g[j].is_phase_family()) {
            // Flipping every closed participant would leave no closed one; keep the target.
            auto ctl = control_list(g[j]);
            const bool all_closed_flipped = std::all_of(ctl.begin(), ctl.end(), [&](const Control& p) {
                return p.open || std::find(wires.begin(), wires.end(), p.wire) != wires.end();
            });
            if (all_closed_flipped) {
                const int t = g[j].targets().front();
                auto it = std::find(wires.begin(), wires.end(), t);
                if (it != wires.end()) {
                    const auto pos = it - wires.begin();
                    wires.erase(it);
                    before.erase(before.begin() + pos);
                    after.erase(after.begin() + pos);
                }
            }
        }
        if (wires.empty()) continue;
        std::vector<std::size_t> idx = before;
        idx.push_back(j);
        idx.insert(idx.end(), after.begin(), after.end());
        out.push_back(make_match(RuleId::OPEN_CONTROL_RESUGAR, D::Forward, idx, wires));
    }
    return out;
}

Gates resugar(const Circuit& c, const Match& m) {
    const std::size_t n = m.wires.size();
    const std::size_t j = m.gate_indices[n];
    auto ctl = control_list(c[j]);
    for (auto& p : ctl) {
        if (std::find(m.wires.begin(), m.wires.end(), p.wire) != m.wires.end()) p.open = !p.open;
    }
    return splice(c.gates(), {m.gate_indices.begin(), m.gate_indices.end()}, j, {with_controls(c[j], ctl)});
}

// --- ancilla severing ----------------------------------------------------------------

enum class Prep { Zero, One, Plus, Minus };

struct AncillaPlan {
    Prep prep;
    std::size_t prep_end;              // first index after the preparation gates
    std::vector<std::size_t> uses;     // gates involving the ancilla after preparation
};

AncillaPlan plan_ancilla(const Circuit& c, int a) {
    const auto& g = c.gates();
    std::vector<std::size_t> touching;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_barrier() && g[i].touches(a)) touching.push_back(i);
    }
    std::size_t np = 0;
    bool x = false, h = false;
    if (np < touching.size() && g[touching[np]].kind() == GateKind::X) {
        x = true;
        ++np;
    }
    if (np < touching.size() && g[touching[np]].kind() == GateKind::H) {
        h = true;
        ++np;
    }
    AncillaPlan plan{h ? (x ? Prep::Minus : Prep::Plus) : (x ? Prep::One : Prep::Zero),
                     np == 0 ? 0 : touching[np - 1] + 1,
                     {touching.begin() + static_cast<std::ptrdiff_t>(np), touching.end()}};
    for (std::size_t i : plan.uses) {
        const Gate& u = g[i];
        bool ok = false;
        if (h) {
            ok = u.is_x_family() && u.targets().front() == a;
        } else {
            ok = u.is_phase_family() ||
                 (u.is_x_family() && u.targets().front() != a);
        }
        if (!ok) {
            throw SeverError("ancilla q" + std::to_string(a) + " is not in a fixed eigenstate at gate " +
                             std::to_string(i) + " (" + u.to_cqc() + ")");
        }
    }
    return plan;
}

Gates sever_gates(const Circuit& c, int a) {
    const AncillaPlan plan = plan_ancilla(c, a);
    const auto& g = c.gates();
    Gates out;
    std::size_t next_use = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (next_use >= plan.uses.size() || plan.uses[next_use] != i) {
            out.push_back(g[i]);
            continue;
        }
        ++next_use;
        const Gate& u = g[i];
        std::optional<Gate> replacement;
        try {
            if (plan.prep == Prep::Plus) {
                // X-family on |+>: no effect.
            } else if (plan.prep == Prep::Minus) {
                replacement = phase_up_to_global(u.controls());
            } else {
                const bool one = plan.prep == Prep::One;
                const auto ctl = control_list(u);
                const auto self = std::find_if(ctl.begin(), ctl.end(), [a](const Control& p) { return p.wire == a; });
                const bool satisfied = self->open != one;
                if (satisfied) {
                    std::vector<Control> rest;
                    for (const auto& p : ctl) {
                        if (p.wire != a) rest.push_back(p);
                    }
                    replacement = u.is_phase_family() ? phase_up_to_global(rest)
                                                      : std::optional<Gate>(Gate::x_family(rest, u.targets().front()));
                }
            }
        } catch (const NotMergeableError& e) {
            throw SeverError(std::string("cannot sever: ") + e.what());
        }
        if (replacement) out.push_back(*replacement);
    }
    return out;
}

std::vector<Match> find_sever(const Circuit& c) {
    std::vector<Match> out;
    for (int a = 0; a < c.num_qubits(); ++a) {
        try {
            const AncillaPlan plan = plan_ancilla(c, a);
            if (plan.uses.empty()) continue;
            (void)sever_gates(c, a);
            out.push_back(make_match(RuleId::ANCILLA_SEVER, D::Forward, plan.uses, {a}));
        } catch (const SeverError&) {
        }
    }
    return out;
}

// Backward: attach the prepared ancilla to one more gate.
std::vector<Match> find_attach(const Circuit& c) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (int a = 0; a < c.num_qubits(); ++a) {
        AncillaPlan plan;
        try {
            plan = plan_ancilla(c, a);
        } catch (const SeverError&) {
            continue;
        }
        if (plan.prep == Prep::Plus || measured_before(g, g.size(), a)) continue;
        for (std::size_t i = plan.prep_end; i < g.size(); ++i) {
            if (!g[i].is_phase_family() || g[i].touches(a)) continue;
            out.push_back(make_match(RuleId::ANCILLA_SEVER, D::Backward, {i}, {a}));
        }
    }
    std::sort(out.begin(), out.end(), [](const Match& x, const Match& y) {
        return std::tie(x.gate_indices, x.wires) < std::tie(y.gate_indices, y.wires);
    });
    return out;
}

Gates attach(const Circuit& c, const Match& m) {
    const std::size_t i = m.gate_indices.front();
    const int a = m.wires.front();
    const AncillaPlan plan = plan_ancilla(c, a);
    Gate replacement = c[i];
    if (plan.prep == Prep::Minus) {
        replacement = Gate::x_family(c[i].participants(), a);
    } else {
        auto parts = c[i].participants();
        parts.push_back({a, plan.prep == Prep::Zero});
        replacement = Gate::phase(parts);
    }
    return splice(c.gates(), {i}, i, {replacement});
}

// --- CX whose control holds a known basis value ---------------------------------------

std::vector<Match> find_known_cx(const Circuit& c) {
    std::vector<Match> out;
    const auto known = known_basis_values(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].kind() != GateKind::CX) continue;
        const int ctl = c[i].controls().front().wire;
        if (known[i][ctl]) {
            out.push_back(make_match(RuleId::CX_CONTROL_SAME_AS_X, D::Forward, {i}, {ctl, c[i].targets().front()}));
        }
    }
    return out;
}

Gates known_cx(const Circuit& c, const Match& m) {
    const std::size_t i = m.gate_indices.front();
    const auto known = known_basis_values(c);
    const Control ctl = c[i].controls().front();
    const bool fires = (*known[i][ctl.wire] == 1) != ctl.open;
    Gates ins;
    if (fires) ins.push_back(Gate::x(c[i].targets().front()));
    return splice(c.gates(), {i}, i, ins);
}

std::vector<Match> find_x_with_known_wire(const Circuit& c) {
    std::vector<Match> out;
    const auto known = known_basis_values(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].kind() != GateKind::X) continue;
        const int t = c[i].targets().front();
        for (int w = 0; w < c.num_qubits(); ++w) {
            if (w != t && known[i][w] && !measured_before(c.gates(), i, w)) {
                out.push_back(make_match(RuleId::CX_CONTROL_SAME_AS_X, D::Backward, {i}, {w, t}));
            }
        }
    }
    return out;
}

Gates x_to_known_cx(const Circuit& c, const Match& m) {
    const std::size_t i = m.gate_indices.front();
    const auto known = known_basis_values(c);
    const int w = m.wires[0];
    const bool open = *known[i][w] == 0;
    return splice(c.gates(), {i}, i, {Gate::x_family({{w, open}}, m.wires[1])});
}

}  // namespace

RuleImpl phase_rule(RuleId rule, Direction dir) {
    const bool fwd = dir == D::Forward;
    switch (rule) {
        case RuleId::X_THROUGH_MCZ:
        case RuleId::CZ_PAST_X:
            if (fwd) return {[rule](const Circuit& c, BarrierPolicy p, D) { return find_push(c, p, rule); }, push};
            return {[rule](const Circuit& c, BarrierPolicy p, D) { return find_pull(c, p, rule); }, pull};
        case RuleId::MCZ_EXHAUSTION_MERGE:
            if (fwd) return {[](const Circuit& c, BarrierPolicy p, D) { return find_merge(c, p); }, merge};
            return {[](const Circuit& c, BarrierPolicy, D) { return find_split(c); }, split};
        case RuleId::OPEN_CONTROL_DESUGAR:
        case RuleId::OPEN_CONTROL_RESUGAR: {
            // Each is the other's backward direction.
            const bool do_desugar = (rule == RuleId::OPEN_CONTROL_DESUGAR) == fwd;
            auto relabel = [rule, dir](std::vector<Match> ms) {
                for (auto& m : ms) {
                    m.rule = rule;
                    m.direction = dir;
                }
                return ms;
            };
            if (do_desugar) {
                return {[relabel](const Circuit& c, BarrierPolicy, D) { return relabel(find_desugar(c)); }, desugar};
            }
            return {[relabel](const Circuit& c, BarrierPolicy p, D) { return relabel(find_resugar(c, p)); },
                    resugar};
        }
        case RuleId::ANCILLA_SEVER:
            if (fwd) {
                return {[](const Circuit& c, BarrierPolicy, D) { return find_sever(c); },
                        [](const Circuit& c, const Match& m) { return sever_gates(c, m.wires.front()); }};
            }
            return {[](const Circuit& c, BarrierPolicy, D) { return find_attach(c); }, attach};
        case RuleId::CX_CONTROL_SAME_AS_X:
            if (fwd) return {[](const Circuit& c, BarrierPolicy, D) { return find_known_cx(c); }, known_cx};
            return {[](const Circuit& c, BarrierPolicy, D) { return find_x_with_known_wire(c); }, x_to_known_cx};
        default: break;
    }
    throw Error("rule is not a phase rule");
}

Gates sever(const Circuit& c, int ancilla) { return sever_gates(c, ancilla); }

std::optional<int> merge_wire(const Gate& a, const Gate& b) { return single_polarity_difference(a, b); }

}  // namespace detail
}  // namespace cliffrw::rewrite
