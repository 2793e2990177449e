#include "cliffrw/rewrite/normalize.hpp"

#include <functional>

#include "cliffrw/error.hpp"

namespace cliffrw::rewrite {
namespace {

using Chooser = std::function<std::optional<Match>(const Circuit&)>;

class Runner {
public:
    Runner(const Circuit& c, std::size_t budget) : d_(c), budget_(budget) {}

    /// Applies chosen matches until the chooser gives up. True if anything changed.
    bool run(const Chooser& choose) {
        bool changed = false;
        while (auto m = choose(d_.current())) {
            if (used_ == budget_) {
                throw BudgetExceededError("normalization exceeded its budget of " + std::to_string(budget_) +
                                          " rule applications");
            }
            d_.apply(std::move(*m));
            ++used_;
            changed = true;
        }
        return changed;
    }

    Derivation& derivation() { return d_; }

private:
    Derivation d_;
    std::size_t budget_;
    std::size_t used_ = 0;
};

std::optional<Match> first_of(const Circuit& c, std::initializer_list<RuleId> rules, BarrierPolicy policy) {
    std::optional<Match> best;
    for (RuleId r : rules) {
        auto ms = find_matches(c, r, policy);
        if (ms.empty()) continue;
        // Rules are listed in enumeration order, so a strict comparison keeps the earlier rule on ties.
        if (!best || ms.front().gate_indices.front() < best->gate_indices.front()) {
            best = ms.front();
        }
    }
    return best;
}

std::optional<Match> choose_cancel(const Circuit& c, BarrierPolicy policy) {
    return first_of(c, {RuleId::HH_CANCEL, RuleId::XX_CANCEL, RuleId::ZZ_CANCEL}, policy);
}

std::optional<Match> choose_shrink(const Circuit& c, BarrierPolicy policy) {
    return first_of(c, {RuleId::HH_CANCEL, RuleId::XX_CANCEL, RuleId::ZZ_CANCEL, RuleId::HXH_TO_Z, RuleId::HZH_TO_X},
                    policy);
}

bool wire_used(const std::vector<Gate>& g, std::size_t from, std::size_t to, int w) {
    for (std::size_t k = from; k < to; ++k) {
        if (g[k].touches(w)) return true;
    }
    return false;
}

/// Position of each gate relative to its barrier block: an H is a source when
/// nothing earlier in the block touches its wire, a sink when nothing later
/// does (and it is not a source).
struct HRoles {
    std::vector<bool> source;
    std::vector<bool> sink;
};

HRoles h_roles(const Circuit& c) {
    const auto& g = c.gates();
    HRoles roles{std::vector<bool>(g.size(), false), std::vector<bool>(g.size(), false)};
    std::size_t block_start = 0;
    for (std::size_t i = 0; i <= g.size(); ++i) {
        if (i < g.size() && !g[i].is_barrier()) continue;
        for (std::size_t k = block_start; k < i; ++k) {
            if (g[k].kind() != GateKind::H) continue;
            const int w = g[k].targets().front();
            if (!wire_used(g, block_start, k, w)) {
                roles.source[k] = true;
            } else if (!wire_used(g, k + 1, i, w)) {
                roles.sink[k] = true;
            }
        }
        block_start = i + 1;
    }
    return roles;
}

std::optional<Match> choose_slide(const Circuit& c, BarrierPolicy policy) {
    const auto roles = h_roles(c);
    for (const auto& m : find_matches(c, RuleId::DISJOINT_COMMUTE, policy)) {
        const std::size_t i = m.gate_indices.front();
        const bool source_moves_left = roles.source[i + 1] && !roles.source[i];
        const bool sink_moves_right = roles.sink[i] && !roles.sink[i + 1];
        if (source_moves_left || sink_moves_right) return m;
    }
    return std::nullopt;
}

/// Sort key for adjacent diagonal gates in the final form.
std::pair<std::vector<int>, std::vector<Control>> diagonal_key(const Gate& g) {
    return {g.wires(), g.is_phase_family() ? g.participants() : std::vector<Control>{}};
}

bool diagonal_before(const Gate& a, const Gate& b) {
    const auto ka = diagonal_key(a);
    const auto kb = diagonal_key(b);
    if (ka.first != kb.first) return ka.first < kb.first;
    return std::lexicographical_compare(ka.second.begin(), ka.second.end(), kb.second.begin(), kb.second.end(),
                                        [](const Control& x, const Control& y) {
                                            return std::pair(x.wire, x.open) < std::pair(y.wire, y.open);
                                        });
}

std::optional<Match> choose_diagonal_order(const Circuit& c, BarrierPolicy policy) {
    std::optional<Match> best;
    for (RuleId r : {RuleId::DISJOINT_COMMUTE, RuleId::DIAGONAL_COMMUTE}) {
        for (const auto& m : find_matches(c, r, policy)) {
            const std::size_t i = m.gate_indices.front();
            if (!c[i].is_diagonal() || !c[i + 1].is_diagonal()) continue;
            if (!diagonal_before(c[i + 1], c[i])) continue;
            if (!best || i < best->gate_indices.front()) best = m;
            break;
        }
    }
    return best;
}

std::optional<Match> first_match(const Circuit& c, RuleId rule, BarrierPolicy policy) {
    auto ms = find_matches(c, rule, policy);
    if (ms.empty()) return std::nullopt;
    return ms.front();
}

}  // namespace

std::string_view to_string(Strategy s) noexcept {
    switch (s) {
        case Strategy::CancelOnly: return "cancel-only";
        case Strategy::PushLeft: return "push-left";
        case Strategy::Full: return "full";
    }
    return "cancel-only";
}

std::optional<Strategy> strategy_from_string(std::string_view name) noexcept {
    for (Strategy s : {Strategy::CancelOnly, Strategy::PushLeft, Strategy::Full}) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

NormalizeResult normalize(const Circuit& c, Strategy strategy, const NormalizeOptions& options) {
    const std::size_t n = c.size();
    Runner runner(c, options.budget.value_or(10 * n * n));
    const BarrierPolicy pol = options.policy;

    auto cancel = [pol](const Circuit& x) { return choose_cancel(x, pol); };
    switch (strategy) {
        case Strategy::CancelOnly:
            runner.run(cancel);
            break;
        case Strategy::PushLeft:
            runner.run([pol](const Circuit& x) {
                if (auto m = choose_cancel(x, pol)) return m;
                return choose_slide(x, pol);
            });
            break;
        case Strategy::Full: {
            bool changed = true;
            while (changed) {
                changed = false;
                changed |= runner.run([pol](const Circuit& x) {
                    return first_match(x, RuleId::OPEN_CONTROL_DESUGAR, pol);
                });
                changed |= runner.run([pol](const Circuit& x) { return first_match(x, RuleId::X_THROUGH_MCZ, pol); });
                changed |= runner.run([pol](const Circuit& x) {
                    return first_match(x, RuleId::MCZ_EXHAUSTION_MERGE, pol);
                });
                changed |= runner.run([pol](const Circuit& x) { return choose_shrink(x, pol); });
                changed |= runner.run([pol](const Circuit& x) { return choose_diagonal_order(x, pol); });
            }
            break;
        }
    }
    Derivation& d = runner.derivation();
    Circuit out = d.current();
    return {std::move(out), std::move(d)};
}

}  // namespace cliffrw::rewrite
