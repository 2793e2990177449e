#include "cliffrw/algorithms.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "cliffrw/error.hpp"
#include "cliffrw/rewrite/rules.hpp"

namespace cliffrw::algorithms {
namespace {

using rewrite::BarrierPolicy;
using rewrite::Derivation;
using rewrite::Direction;
using rewrite::Match;
using rewrite::RuleId;

using MatchFilter = std::function<bool(const Circuit&, const Match&)>;

std::optional<Match> find_first(const Circuit& c, RuleId rule, const MatchFilter& keep,
                                Direction dir = Direction::Forward, BarrierPolicy pol = BarrierPolicy::Opaque) {
    for (auto& m : rewrite::find_matches(c, rule, pol, dir)) {
        if (keep(c, m)) return m;
    }
    return std::nullopt;
}

void apply_first(Derivation& d, RuleId rule, const MatchFilter& keep, Direction dir = Direction::Forward,
                 BarrierPolicy pol = BarrierPolicy::Opaque) {
    auto m = find_first(d.current(), rule, keep, dir, pol);
    if (!m) throw std::logic_error(std::string("scripted derivation found no ") + std::string(to_string(rule)) + " site");
    d.apply(std::move(*m));
}

/// Swaps the gate at `from` with its neighbours until it sits at `to`.
void move_gate(Derivation& d, std::size_t from, std::size_t to) {
    while (from != to) {
        const std::size_t i = from < to ? from : from - 1;
        apply_first(d, RuleId::DISJOINT_COMMUTE,
                    [i](const Circuit&, const Match& m) { return m.gate_indices.front() == i; });
        from = from < to ? from + 1 : from - 1;
    }
}

bool is_h_on(const Gate& g, int w) { return g.kind() == GateKind::H && g.targets().front() == w; }

/// Adds `name` to the label of the current snapshot.
void mark(Derivation& d, const std::string& name, std::size_t steps_before) {
    const std::string& prev = d.size() == 0 ? d.initial_label() : d.steps().back().label;
    if (d.size() == steps_before && !prev.empty()) {
        d.label_current(prev + "." + name);
    } else {
        d.label_current(name);
    }
}

std::vector<int> one_wires(std::string_view s) {
    const int n = static_cast<int>(s.size());
    std::vector<int> out;
    for (int k = 0; k < n; ++k) {
        if (s[n - 1 - k] == '1') out.push_back(k);
    }
    return out;
}

void append_measures(Circuit& c, int n) {
    for (int k = 0; k < n; ++k) c.append(Gate::measure(k, k));
}

void append_h_layer(Circuit& c, int count) {
    for (int k = 0; k < count; ++k) c.append(Gate::h(k));
}

}  // namespace

void validate_secret(std::string_view s) {
    if (s.empty()) throw ValidationError("secret string is empty");
    if (s.find_first_not_of("01") != std::string_view::npos) {
        throw ValidationError("secret string '" + std::string(s) + "' may only contain 0 and 1");
    }
    if (s.size() >= 63) throw ValidationError("secret string is too long");
}

Circuit build_bv_classical(std::string_view s) {
    validate_secret(s);
    const int n = static_cast<int>(s.size());
    Circuit c(n + 1, n);
    c.append(Gate::barrier());
    c.append(Gate::x(n));
    c.append(Gate::barrier());
    for (int k : one_wires(s)) c.append(Gate::cx(n, k));
    c.append(Gate::barrier());
    append_measures(c, n);
    return c;
}

Circuit build_bv_cz(std::string_view s) {
    validate_secret(s);
    const int n = static_cast<int>(s.size());
    Circuit c(n + 1, n);
    c.append(Gate::barrier());
    c.append(Gate::x(n));
    c.append(Gate::barrier());
    append_h_layer(c, n);
    c.append(Gate::barrier());
    for (int k : one_wires(s)) c.append(Gate::cz(n, k));
    c.append(Gate::barrier());
    append_h_layer(c, n);
    c.append(Gate::barrier());
    append_measures(c, n);
    return c;
}

Circuit build_bv_canonical(std::string_view s) {
    validate_secret(s);
    const int n = static_cast<int>(s.size());
    Circuit c(n + 1, n);
    c.append(Gate::barrier());
    c.append(Gate::x(n));
    c.append(Gate::barrier());
    append_h_layer(c, n + 1);
    c.append(Gate::barrier());
    for (int k : one_wires(s)) c.append(Gate::cx(k, n));
    c.append(Gate::barrier());
    append_h_layer(c, n + 1);
    c.append(Gate::barrier());
    append_measures(c, n);
    return c;
}

const std::vector<std::string>& bv_stage_names() {
    static const std::vector<std::string> names{"classical", "phase-oracle", "h-slid",
                                                "h-layers",  "kickback",     "canonical"};
    return names;
}

Derivation derive_bv_chain(std::string_view s) {
    Circuit start = build_bv_classical(s);
    const int n = static_cast<int>(s.size());
    const int a = n;
    const auto ones = one_wires(s);
    const std::size_t m = ones.size();
    // Oracle block starts after [barrier, X a, barrier].
    const std::size_t b = 3;
    const auto& names = bv_stage_names();

    Derivation d(std::move(start));
    d.label_current(names[0]);

    // CX a->k becomes H k, CZ, H k.
    std::size_t before = d.size();
    for (std::size_t j = 0; j < m; ++j) {
        apply_first(d, RuleId::CX_TO_HCZH, [](const Circuit& c, const Match& x) {
            return c[x.gate_indices.front()].kind() == GateKind::CX;
        });
    }
    mark(d, names[1], before);

    // Opening Hadamards slide to the front of the oracle block, closing ones to the back.
    before = d.size();
    for (std::size_t j = 1; j < m; ++j) {
        const auto& g = d.current().gates();
        std::size_t from = b;
        while (!is_h_on(g[from], ones[j])) ++from;
        move_gate(d, from, b + j);
    }
    for (std::size_t j = m; j-- > 1;) {
        const auto& g = d.current().gates();
        std::size_t from = b + m;
        while (!is_h_on(g[from], ones[j - 1])) ++from;
        std::size_t to = from;
        while (g[to + 1].kind() != GateKind::H && !g[to + 1].is_barrier()) ++to;
        move_gate(d, from, to);
    }
    mark(d, names[2], before);

    // H H pairs fill the layers on the untouched data wires, then on the ancilla.
    before = d.size();
    std::vector<int> lead(ones.begin(), ones.end());
    std::vector<int> trail = lead;
    for (int w = 0; w < n; ++w) {
        if (std::binary_search(ones.begin(), ones.end(), w)) continue;
        const auto lead_below = std::lower_bound(lead.begin(), lead.end(), w) - lead.begin();
        const std::size_t p = b + static_cast<std::size_t>(lead_below);
        apply_first(
            d, RuleId::HH_CANCEL,
            [p, w](const Circuit&, const Match& x) { return x.position == p && x.wires.front() == w; },
            Direction::Backward);
        lead.insert(lead.begin() + lead_below, w);
        const auto trail_below = std::lower_bound(trail.begin(), trail.end(), w) - trail.begin();
        move_gate(d, p + 1, b + lead.size() + m + static_cast<std::size_t>(trail_below));
        trail.insert(trail.begin() + trail_below, w);
    }
    const std::size_t lead_end = b + static_cast<std::size_t>(n);
    apply_first(
        d, RuleId::HH_CANCEL,
        [lead_end, a](const Circuit&, const Match& x) { return x.position == lead_end && x.wires.front() == a; },
        Direction::Backward);
    mark(d, names[3], before);

    // Each CZ turns into H a, CX k->a, H a.
    before = d.size();
    for (std::size_t j = 0; j < m; ++j) {
        apply_first(d, RuleId::CZ_TO_HCXH, [a](const Circuit& c, const Match& x) {
            return c[x.gate_indices.front()].kind() == GateKind::CZ && x.wires.back() == a;
        });
    }
    mark(d, names[4], before);

    // Ancilla Hadamards between oracle gates cancel; the last one joins the closing layer.
    before = d.size();
    auto ancilla_hs = [a](const Circuit& c) {
        return std::count_if(c.gates().begin(), c.gates().end(), [a](const Gate& g) { return is_h_on(g, a); });
    };
    while (ancilla_hs(d.current()) > 2) {
        apply_first(d, RuleId::HH_CANCEL,
                    [a](const Circuit& c, const Match& x) { return is_h_on(c[x.gate_indices.front()], a); });
    }
    {
        const auto& g = d.current().gates();
        std::size_t from = g.size();
        while (!is_h_on(g[from - 1], a)) --from;
        --from;
        std::size_t to = from;
        while (g[to + 1].kind() == GateKind::H) ++to;
        move_gate(d, from, to);
    }
    for (std::size_t p : {b + n + 1, b + n + 2 + m}) {
        apply_first(d, RuleId::BARRIER_INSERT, [p](const Circuit&, const Match& x) { return x.position == p; });
    }
    mark(d, names[5], before);
    return d;
}

std::vector<Circuit> stage_snapshots(const Derivation& d, const std::vector<std::string>& names) {
    std::vector<std::optional<Circuit>> found(names.size());
    auto record = [&](const std::string& label, const Circuit& c) {
        std::size_t start = 0;
        while (start <= label.size()) {
            std::size_t end = label.find('.', start);
            if (end == std::string::npos) end = label.size();
            const std::string part = label.substr(start, end - start);
            auto it = std::find(names.begin(), names.end(), part);
            if (it != names.end()) found[static_cast<std::size_t>(it - names.begin())] = c;
            start = end + 1;
        }
    };
    record(d.initial_label(), d.initial());
    for (const auto& step : d.steps()) record(step.label, step.snapshot);
    std::vector<Circuit> out;
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (!found[k]) throw ValidationError("derivation has no snapshot labelled " + names[k]);
        out.push_back(*found[k]);
    }
    return out;
}

const MarkedSet& dj_quadratic_marked() {
    static const MarkedSet marked{"011", "100", "101", "110"};
    return marked;
}

Circuit build_dj_oracle(const MarkedSet& marked, ControlStyle style) {
    if (marked.empty()) throw ValidationError("marked set is empty");
    const int n = static_cast<int>(marked.front().size());
    std::set<std::string> seen;
    for (const auto& label : marked) {
        validate_secret(label);
        if (static_cast<int>(label.size()) != n) throw ValidationError("marked labels differ in length");
        if (!seen.insert(label).second) throw ValidationError("marked label " + label + " repeated");
    }
    Circuit c(n + 1);
    for (const auto& label : marked) {
        std::vector<Control> controls;
        std::vector<int> zeros;
        for (int k = 0; k < n; ++k) {
            const bool zero = label[static_cast<std::size_t>(n - 1 - k)] == '0';
            if (zero) zeros.push_back(k);
            controls.push_back({k, zero && style == ControlStyle::Open});
        }
        if (style == ControlStyle::Closed) {
            for (int k : zeros) c.append(Gate::x(k));
        }
        c.append(Gate::x_family(controls, n));
        if (style == ControlStyle::Closed) {
            for (int k : zeros) c.append(Gate::x(k));
        }
    }
    return c;
}

Circuit build_dj_quadratic(ControlStyle style) { return build_dj_oracle(dj_quadratic_marked(), style); }

Circuit wrap_dj(const Circuit& oracle) {
    const int total = oracle.num_qubits();
    if (total < 2) throw ValidationError("oracle needs data wires and an ancilla");
    const int n = total - 1;
    Circuit c(total, n);
    c.append(Gate::x(n));
    append_h_layer(c, total);
    c.append(Gate::barrier());
    for (const auto& g : oracle.gates()) {
        if (!g.is_unitary()) throw ValidationError("oracle may only contain unitary gates");
        c.append(g);
    }
    c.append(Gate::barrier());
    append_h_layer(c, total);
    append_measures(c, n);
    return c;
}

const std::vector<std::string>& dj_stage_names() {
    static const std::vector<std::string> names{"bit-flip", "phase-blocks", "severed",
                                                "open-controls", "pushed", "irreducible"};
    return names;
}

Derivation derive_dj_reduction() {
    const Circuit start = wrap_dj(build_dj_quadratic());
    const int a = start.num_qubits() - 1;
    const auto& names = dj_stage_names();
    auto any = [](const Circuit&, const Match&) { return true; };

    Derivation d(start);
    d.label_current(names[0]);

    // H MCX H = MCZ on every block.
    std::size_t before = d.size();
    while (find_first(d.current(), RuleId::MCX_TO_HMCZH, any)) apply_first(d, RuleId::MCX_TO_HMCZH, any);
    mark(d, names[1], before);

    // The ancilla's Hadamards cancel in pairs, leaving it in |1>, which satisfies every block.
    before = d.size();
    auto on_ancilla = [a](const Circuit& c, const Match& m) { return is_h_on(c[m.gate_indices.front()], a); };
    while (find_first(d.current(), RuleId::HH_CANCEL, on_ancilla, Direction::Forward, BarrierPolicy::Transparent)) {
        apply_first(d, RuleId::HH_CANCEL, on_ancilla, Direction::Forward, BarrierPolicy::Transparent);
    }
    apply_first(d, RuleId::ANCILLA_SEVER, [a](const Circuit&, const Match& m) { return m.wires.front() == a; });
    mark(d, names[2], before);

    // X wrappers become open controls. Only X gates directly around a block
    // count, so neighbouring blocks keep their own wrappers.
    before = d.size();
    auto tight = [](const Circuit&, const Match& m) {
        const std::size_t w = m.wires.size();
        const std::size_t j = m.gate_indices[w];
        return std::all_of(m.gate_indices.begin(), m.gate_indices.end(),
                           [&](std::size_t i) { return i + w >= j && i <= j + w; });
    };
    while (find_first(d.current(), RuleId::OPEN_CONTROL_RESUGAR, tight)) {
        apply_first(d, RuleId::OPEN_CONTROL_RESUGAR, tight);
    }
    mark(d, names[3], before);

    // The block open on q2 alone gives up its X pair: the X passes through the
    // CCZ, spawning a CZ, and meets its partner.
    before = d.size();
    const int top = a - 1;
    auto open_only_top = [top](const Circuit& c, const Match& m) {
        const auto& p = c[m.gate_indices.front()].participants();
        return std::all_of(p.begin(), p.end(), [top](const Control& k) { return k.open == (k.wire == top); });
    };
    apply_first(d, RuleId::OPEN_CONTROL_DESUGAR, open_only_top);
    apply_first(d, RuleId::X_THROUGH_MCZ, any);
    apply_first(d, RuleId::XX_CANCEL, any);
    mark(d, names[4], before);

    // The four blocks closed on q2 cover every pattern of q0 q1 and merge to Z q2.
    before = d.size();
    while (find_first(d.current(), RuleId::MCZ_EXHAUSTION_MERGE, any)) {
        apply_first(d, RuleId::MCZ_EXHAUSTION_MERGE, any);
    }
    auto misordered = [](const Circuit& c, const Match& m) {
        const std::size_t i = m.gate_indices.front();
        return c[i].is_diagonal() && c[i + 1].is_diagonal() && c[i].arity() < c[i + 1].arity();
    };
    while (find_first(d.current(), RuleId::DISJOINT_COMMUTE, misordered)) {
        apply_first(d, RuleId::DISJOINT_COMMUTE, misordered);
    }
    mark(d, names[5], before);
    return d;
}

Circuit extract_phase_oracle(const Circuit& c, int num_data) {
    const auto& g = c.gates();
    auto first = std::find_if(g.begin(), g.end(), [](const Gate& x) { return x.is_barrier(); });
    if (first == g.end()) throw ValidationError("circuit has no oracle barriers");
    auto second = std::find_if(first + 1, g.end(), [](const Gate& x) { return x.is_barrier(); });
    if (second == g.end()) throw ValidationError("circuit has only one barrier");
    Circuit out(num_data);
    for (auto it = first + 1; it != second; ++it) {
        for (int w : it->wires()) {
            if (w >= num_data) {
                throw ValidationError("oracle gate " + it->to_cqc() + " touches a wire outside the data register");
            }
        }
        out.append(*it);
    }
    return out;
}

}  // namespace cliffrw::algorithms
