// Cancellations, Hadamard basis changes, commutations and barrier insertion.

#include <algorithm>

#include "cliffrw/error.hpp"
#include "rules_internal.hpp"

namespace cliffrw::rewrite::detail {
namespace {

using D = Direction;

bool disjoint(const Gate& a, const Gate& b) {
    for (int w : a.wires()) {
        if (b.touches(w)) return false;
    }
    return true;
}

// --- cancellations ---------------------------------------------------------

std::vector<Match> find_hh(const Circuit& c, BarrierPolicy pol, RuleId rule) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].kind() != GateKind::H) continue;
        const int q = g[i].targets().front();
        auto j = next_on_wire(g, i, q, pol);
        if (j && g[*j].kind() == GateKind::H) out.push_back(make_match(rule, D::Forward, {i, *j}, {q}));
    }
    return out;
}

std::vector<Match> find_xx(const Circuit& c, BarrierPolicy pol, RuleId rule) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_x_family()) continue;
        auto j = next_touching(g, i, g[i].wires(), pol);
        if (j && g[*j] == g[i]) out.push_back(make_match(rule, D::Forward, {i, *j}, g[i].wires()));
    }
    return out;
}

std::vector<Match> find_zz(const Circuit& c, BarrierPolicy pol, RuleId rule) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_phase_family()) continue;
        const auto wires = g[i].wires();
        for (std::size_t k = i + 1; k < g.size(); ++k) {
            if (g[k].is_barrier()) {
                if (pol == BarrierPolicy::Opaque) break;
                continue;
            }
            if (!std::any_of(wires.begin(), wires.end(), [&](int w) { return g[k].touches(w); })) continue;
            if (g[k] == g[i]) {
                out.push_back(make_match(rule, D::Forward, {i, k}, wires));
                break;
            }
            if (!g[k].is_diagonal()) break;
        }
    }
    return out;
}

Gates remove_matched(const Circuit& c, const Match& m) {
    return splice(c.gates(), {m.gate_indices.begin(), m.gate_indices.end()}, c.size(), {});
}

std::vector<Match> find_insert_pair(const Circuit& c, RuleId rule) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t p = 0; p <= g.size(); ++p) {
        for (int q = 0; q < c.num_qubits(); ++q) {
            if (!measured_before(g, p, q)) out.push_back(make_match(rule, D::Backward, {}, {q}, p));
        }
    }
    return out;
}

Gates insert_pair(const Circuit& c, const Match& m, GateKind kind) {
    const Gate one = Gate::single(kind, m.wires.front());
    return splice(c.gates(), {}, m.position, {one, one});
}

// --- H Z H = X and H X H = Z -------------------------------------------------

std::vector<Match> find_sandwich(const Circuit& c, BarrierPolicy pol, RuleId rule, GateKind middle) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].kind() != GateKind::H) continue;
        const int q = g[i].targets().front();
        auto j = next_on_wire(g, i, q, pol);
        if (!j || g[*j].kind() != middle) continue;
        auto k = next_on_wire(g, *j, q, pol);
        if (k && g[*k].kind() == GateKind::H) out.push_back(make_match(rule, D::Forward, {i, *j, *k}, {q}));
    }
    return out;
}

Gates collapse_sandwich(const Circuit& c, const Match& m, GateKind result) {
    const auto& idx = m.gate_indices;
    return splice(c.gates(), {idx[0], idx[1], idx[2]}, idx[1], {Gate::single(result, m.wires.front())});
}

std::vector<Match> find_single(const Circuit& c, RuleId rule, GateKind kind) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].kind() == kind) out.push_back(make_match(rule, D::Backward, {i}, {g[i].targets().front()}));
    }
    return out;
}

Gates expand_sandwich(const Circuit& c, const Match& m, GateKind middle) {
    const int q = m.wires.front();
    const std::size_t i = m.gate_indices.front();
    return splice(c.gates(), {i}, i, {Gate::h(q), Gate::single(middle, q), Gate::h(q)});
}

// --- controlled gates between H layers ---------------------------------------

// H t; G; H t around gate j on wire t.
std::optional<std::pair<std::size_t, std::size_t>> h_around(const Gates& g, std::size_t j, int t, BarrierPolicy pol) {
    auto i = prev_on_wire(g, j, t, pol);
    auto k = next_on_wire(g, j, t, pol);
    if (i && k && g[*i].kind() == GateKind::H && g[*k].kind() == GateKind::H) return std::make_pair(*i, *k);
    return std::nullopt;
}

bool x_arity_ok(const Gate& g, bool multi) {
    return g.is_x_family() && (multi ? g.controls().size() >= 2 : g.controls().size() == 1);
}

bool phase_arity_ok(const Gate& g, bool multi) {
    return g.is_phase_family() && (multi ? g.arity() >= 3 : g.arity() == 2);
}

std::vector<int> x_wires(const Gate& g) {
    std::vector<int> w;
    for (const auto& ctl : g.controls()) w.push_back(ctl.wire);
    w.push_back(g.targets().front());
    return w;
}

// X-family gate -> H t, phase gate, H t
std::vector<Match> find_x_gate(const Circuit& c, RuleId rule, D dir, bool multi) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (x_arity_ok(g[i], multi)) out.push_back(make_match(rule, dir, {i}, x_wires(g[i])));
    }
    return out;
}

Gates x_to_hzh(const Circuit& c, const Match& m) {
    const std::size_t i = m.gate_indices.front();
    const Gate& x = c[i];
    const int t = x.targets().front();
    auto parts = x.controls();
    parts.push_back({t, false});
    return splice(c.gates(), {i}, i, {Gate::h(t), Gate::phase(parts), Gate::h(t)});
}

// H t, phase gate, H t  -> X-family gate on t
std::vector<Match> find_hzh_around_phase(const Circuit& c, BarrierPolicy pol, RuleId rule, D dir, bool multi) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (!phase_arity_ok(g[j], multi)) continue;
        for (const auto& p : g[j].participants()) {
            if (p.open) continue;
            auto hk = h_around(g, j, p.wire, pol);
            if (!hk) continue;
            std::vector<int> wires;
            for (const auto& o : participants_without(g[j], p.wire)) wires.push_back(o.wire);
            wires.push_back(p.wire);
            out.push_back(make_match(rule, dir, {hk->first, j, hk->second}, wires));
        }
    }
    return out;
}

Gates hzh_to_x(const Circuit& c, const Match& m) {
    const auto& idx = m.gate_indices;
    const int t = m.wires.back();
    const Gate x = Gate::x_family(participants_without(c[idx[1]], t), t);
    return splice(c.gates(), {idx[0], idx[1], idx[2]}, idx[1], {x});
}

// phase gate -> H t, X-family, H t; one match per closed target choice
std::vector<Match> find_phase_gate(const Circuit& c, RuleId rule, D dir, bool multi) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (!phase_arity_ok(g[j], multi)) continue;
        for (const auto& p : g[j].participants()) {
            if (p.open) continue;
            std::vector<int> wires;
            for (const auto& o : participants_without(g[j], p.wire)) wires.push_back(o.wire);
            wires.push_back(p.wire);
            out.push_back(make_match(rule, dir, {j}, wires));
        }
    }
    return out;
}

Gates phase_to_hxh(const Circuit& c, const Match& m) {
    const std::size_t j = m.gate_indices.front();
    const int t = m.wires.back();
    const Gate x = Gate::x_family(participants_without(c[j], t), t);
    return splice(c.gates(), {j}, j, {Gate::h(t), x, Gate::h(t)});
}

// H t, X-family, H t -> phase gate
std::vector<Match> find_hxh_around_x(const Circuit& c, BarrierPolicy pol, RuleId rule, D dir, bool multi) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (!x_arity_ok(g[j], multi)) continue;
        auto hk = h_around(g, j, g[j].targets().front(), pol);
        if (hk) out.push_back(make_match(rule, dir, {hk->first, j, hk->second}, x_wires(g[j])));
    }
    return out;
}

Gates hxh_to_phase(const Circuit& c, const Match& m) {
    const auto& idx = m.gate_indices;
    const Gate& x = c[idx[1]];
    auto parts = x.controls();
    parts.push_back({x.targets().front(), false});
    return splice(c.gates(), {idx[0], idx[1], idx[2]}, idx[1], {Gate::phase(parts)});
}

// H c, H t, CX(c->t), H c, H t  <->  CX(t->c)
bool closed_cx(const Gate& g) { return g.kind() == GateKind::CX && !g.controls().front().open; }

std::vector<Match> find_full_reverse(const Circuit& c, BarrierPolicy pol) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (!closed_cx(g[j])) continue;
        const int ctl = g[j].controls().front().wire;
        const int t = g[j].targets().front();
        auto hc = h_around(g, j, ctl, pol);
        auto ht = h_around(g, j, t, pol);
        if (hc && ht) {
            out.push_back(make_match(RuleId::CX_FULL_H_REVERSE, D::Forward,
                                     {hc->first, ht->first, j, hc->second, ht->second}, {ctl, t}));
        }
    }
    return out;
}

Gates full_reverse(const Circuit& c, const Match& m) {
    const auto& idx = m.gate_indices;
    return splice(c.gates(), {idx.begin(), idx.end()}, idx[2], {Gate::cx(m.wires[1], m.wires[0])});
}

std::vector<Match> find_closed_cx(const Circuit& c) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (closed_cx(g[j])) {
            out.push_back(make_match(RuleId::CX_FULL_H_REVERSE, D::Backward, {j},
                                     {g[j].controls().front().wire, g[j].targets().front()}));
        }
    }
    return out;
}

Gates full_reverse_expand(const Circuit& c, const Match& m) {
    const std::size_t j = m.gate_indices.front();
    const int a = m.wires[0];
    const int b = m.wires[1];
    return splice(c.gates(), {j}, j, {Gate::h(b), Gate::h(a), Gate::cx(b, a), Gate::h(b), Gate::h(a)});
}

// --- commutation -------------------------------------------------------------

std::vector<Match> find_adjacent(const Circuit& c, RuleId rule, D dir, bool diagonal) {
    std::vector<Match> out;
    const auto& g = c.gates();
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const Gate& a = g[i];
        const Gate& b = g[i + 1];
        if (a.is_barrier() || b.is_barrier()) continue;
        const bool ok = diagonal ? (a.is_diagonal() && b.is_diagonal() && !disjoint(a, b)) : disjoint(a, b);
        if (ok) out.push_back(make_match(rule, dir, {i, i + 1}, {}));
    }
    return out;
}

Gates swap_adjacent(const Circuit& c, const Match& m) {
    const std::size_t i = m.gate_indices.front();
    return splice(c.gates(), {i, i + 1}, i, {c[i + 1], c[i]});
}

// --- barriers ----------------------------------------------------------------

std::vector<Match> find_barrier_slots(const Circuit& c) {
    std::vector<Match> out;
    for (std::size_t p = 0; p <= c.size(); ++p) {
        out.push_back(make_match(RuleId::BARRIER_INSERT, D::Forward, {}, {}, p));
    }
    return out;
}

std::vector<Match> find_barriers(const Circuit& c) {
    std::vector<Match> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_barrier()) out.push_back(make_match(RuleId::BARRIER_INSERT, D::Backward, {i}, {}));
    }
    return out;
}

RuleImpl with_dir(RuleImpl impl, D dir) {
    auto inner = impl.find;
    impl.find = [inner, dir](const Circuit& c, BarrierPolicy p, D) {
        auto ms = inner(c, p, dir);
        for (auto& m : ms) m.direction = dir;
        return ms;
    };
    return impl;
}

}  // namespace

RuleImpl local_rule(RuleId rule, Direction dir) {
    const bool fwd = dir == D::Forward;
    switch (rule) {
        case RuleId::HH_CANCEL:
        case RuleId::XX_CANCEL:
        case RuleId::ZZ_CANCEL: {
            const GateKind kind = rule == RuleId::HH_CANCEL   ? GateKind::H
                                  : rule == RuleId::XX_CANCEL ? GateKind::X
                                                              : GateKind::Z;
            if (!fwd) {
                return {[rule](const Circuit& c, BarrierPolicy, D) { return find_insert_pair(c, rule); },
                        [kind](const Circuit& c, const Match& m) { return insert_pair(c, m, kind); }};
            }
            return {[rule](const Circuit& c, BarrierPolicy p, D) {
                        if (rule == RuleId::HH_CANCEL) return find_hh(c, p, rule);
                        if (rule == RuleId::XX_CANCEL) return find_xx(c, p, rule);
                        return find_zz(c, p, rule);
                    },
                    remove_matched};
        }
        case RuleId::HXH_TO_Z:
        case RuleId::HZH_TO_X: {
            const GateKind middle = rule == RuleId::HXH_TO_Z ? GateKind::X : GateKind::Z;
            const GateKind result = rule == RuleId::HXH_TO_Z ? GateKind::Z : GateKind::X;
            if (fwd) {
                return {[rule, middle](const Circuit& c, BarrierPolicy p, D) {
                            return find_sandwich(c, p, rule, middle);
                        },
                        [result](const Circuit& c, const Match& m) { return collapse_sandwich(c, m, result); }};
            }
            return {[rule, result](const Circuit& c, BarrierPolicy, D) { return find_single(c, rule, result); },
                    [middle](const Circuit& c, const Match& m) { return expand_sandwich(c, m, middle); }};
        }
        case RuleId::CX_TO_HCZH:
        case RuleId::MCX_TO_HMCZH: {
            const bool multi = rule == RuleId::MCX_TO_HMCZH;
            if (fwd) {
                return {[rule, multi](const Circuit& c, BarrierPolicy, D) {
                            return find_x_gate(c, rule, D::Forward, multi);
                        },
                        x_to_hzh};
            }
            return {[rule, multi](const Circuit& c, BarrierPolicy p, D) {
                        return find_hzh_around_phase(c, p, rule, D::Backward, multi);
                    },
                    hzh_to_x};
        }
        case RuleId::CZ_TO_HCXH:
        case RuleId::MCZ_TO_HMCXH: {
            const bool multi = rule == RuleId::MCZ_TO_HMCXH;
            if (fwd) {
                return {[rule, multi](const Circuit& c, BarrierPolicy, D) {
                            return find_phase_gate(c, rule, D::Forward, multi);
                        },
                        phase_to_hxh};
            }
            return {[rule, multi](const Circuit& c, BarrierPolicy p, D) {
                        return find_hxh_around_x(c, p, rule, D::Backward, multi);
                    },
                    hxh_to_phase};
        }
        case RuleId::CX_FULL_H_REVERSE:
            if (fwd) {
                return {[](const Circuit& c, BarrierPolicy p, D) { return find_full_reverse(c, p); }, full_reverse};
            }
            return {[](const Circuit& c, BarrierPolicy, D) { return find_closed_cx(c); }, full_reverse_expand};
        case RuleId::DISJOINT_COMMUTE:
        case RuleId::DIAGONAL_COMMUTE: {
            const bool diagonal = rule == RuleId::DIAGONAL_COMMUTE;
            return with_dir({[rule, diagonal](const Circuit& c, BarrierPolicy, D d) {
                                 return find_adjacent(c, rule, d, diagonal);
                             },
                             swap_adjacent},
                            dir);
        }
        case RuleId::BARRIER_INSERT:
            if (fwd) {
                return {[](const Circuit& c, BarrierPolicy, D) { return find_barrier_slots(c); },
                        [](const Circuit& c, const Match& m) {
                            return splice(c.gates(), {}, m.position, {Gate::barrier()});
                        }};
            }
            return {[](const Circuit& c, BarrierPolicy, D) { return find_barriers(c); }, remove_matched};
        default: break;
    }
    throw Error("rule is not a local rule");
}

}  // namespace cliffrw::rewrite::detail
