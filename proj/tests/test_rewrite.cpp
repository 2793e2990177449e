#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "cliffrw/circuit.hpp"
#include "cliffrw/error.hpp"
#include "cliffrw/rewrite/derivation.hpp"
#include "cliffrw/rewrite/normalize.hpp"
#include "cliffrw/rewrite/rules.hpp"
#include "cliffrw/sim/unitary.hpp"

using namespace cliffrw;
using namespace cliffrw::rewrite;

namespace {

Circuit cqc(const std::string& body) { return parse_circuit(body); }

Match only_match(const Circuit& c, RuleId rule, Direction dir = Direction::Forward,
                 BarrierPolicy policy = BarrierPolicy::Opaque) {
    auto ms = find_matches(c, rule, policy, dir);
    EXPECT_EQ(ms.size(), 1U) << to_string(rule);
    return ms.at(0);
}

bool same_up_to_phase(const Circuit& a, const Circuit& b) {
    return sim::equivalent_up_to_phase(a.without_measurements(), b.without_measurements()).equivalent;
}

// Random circuits rich in the shapes the rules look for.
Circuit random_circuit(std::mt19937_64& rng, int n, int len) {
    std::uniform_int_distribution<int> wire(0, n - 1);
    std::uniform_int_distribution<int> pick(0, 15);
    std::bernoulli_distribution coin(0.5);
    Circuit c(n);
    auto distinct = [&](int k) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(k);
        return all;
    };
    for (int i = 0; i < len; ++i) {
        const int q = wire(rng);
        switch (pick(rng)) {
            case 0:
            case 1:
            case 2: c.append(Gate::h(q)); break;
            case 3:
            case 4: c.append(Gate::x(q)); break;
            case 5: c.append(Gate::z(q)); break;
            case 6: c.append(coin(rng) ? Gate::s(q) : Gate::y(q)); break;
            case 7:
            case 8: {
                auto w = distinct(2);
                c.append(Gate::x_family({{w[0], coin(rng) && coin(rng)}}, w[1]));
                break;
            }
            case 9:
            case 10: {
                auto w = distinct(2);
                c.append(Gate::cz(w[0], w[1]));
                break;
            }
            case 11:
            case 12: {
                if (n < 3) break;
                const int k = std::uniform_int_distribution<int>(3, n)(rng);
                auto w = distinct(k);
                std::vector<Control> parts;
                for (int x : w) parts.push_back({x, coin(rng) && coin(rng)});
                parts.front().open = false;
                c.append(Gate::phase(parts));
                break;
            }
            case 13: {
                if (n < 3) break;
                auto w = distinct(3);
                c.append(Gate::x_family({{w[0], coin(rng) && coin(rng)}, {w[1], false}}, w[2]));
                break;
            }
            case 14: {
                auto w = distinct(2);
                c.append(Gate::swap(w[0], w[1]));
                break;
            }
            default: c.append(Gate::barrier()); break;
        }
    }
    return c;
}

}  // namespace

// --- catalogue ---------------------------------------------------------------

TEST(RuleCatalogue, NamesRoundTrip) {
    for (RuleId r : all_rules()) {
        EXPECT_EQ(rule_from_string(to_string(r)), r);
        EXPECT_FALSE(rule_semantics(r).pattern.empty());
    }
    EXPECT_FALSE(rule_from_string("NOT_A_RULE"));
}

TEST(RuleCatalogue, EveryRuleHasAnInverse) {
    for (RuleId r : all_rules()) {
        const auto sem = rule_semantics(r);
        const auto back = rule_semantics(sem.inverse);
        EXPECT_EQ(back.inverse, r) << to_string(r);
    }
}

TEST(RuleCatalogue, HzhDescription) {
    const auto sem = rule_semantics(RuleId::HZH_TO_X);
    EXPECT_EQ(sem.pattern, "[H q; Z q; H q]");
    EXPECT_EQ(sem.replacement, "[X q]");
}

TEST(RuleCatalogue, StateDependentRules) {
    EXPECT_TRUE(rule_semantics(RuleId::ANCILLA_SEVER).state_dependent);
    EXPECT_TRUE(rule_semantics(RuleId::CX_CONTROL_SAME_AS_X).state_dependent);
    EXPECT_FALSE(rule_semantics(RuleId::HH_CANCEL).state_dependent);
}

// --- matching ----------------------------------------------------------------

TEST(FindMatches, HhPair) {
    auto ms = find_matches(cqc("qubits 1\nh q0\nh q0"), RuleId::HH_CANCEL);
    ASSERT_EQ(ms.size(), 1U);
    EXPECT_EQ(ms[0].gate_indices, (std::vector<std::size_t>{0, 1}));
}

TEST(FindMatches, OpaqueBarrierBlocks) {
    const Circuit c = cqc("qubits 1\nh q0\nbarrier\nh q0");
    EXPECT_TRUE(find_matches(c, RuleId::HH_CANCEL).empty());
    EXPECT_EQ(find_matches(c, RuleId::HH_CANCEL, BarrierPolicy::Transparent).size(), 1U);
}

TEST(FindMatches, AscendingPrimaryIndex) {
    const Circuit c = cqc("qubits 2\nh q1\nh q0\nh q0\nh q1");
    auto ms = find_matches(c, RuleId::HH_CANCEL);
    ASSERT_EQ(ms.size(), 2U);
    EXPECT_EQ(ms[0].gate_indices.front(), 0U);
    EXPECT_EQ(ms[1].gate_indices.front(), 1U);
}

// --- apply_rule examples -------------------------------------------------------

TEST(ApplyRule, HzhToX) {
    const Circuit c = cqc("qubits 1\nh q0\nz q0\nh q0");
    EXPECT_EQ(apply_rule(c, only_match(c, RuleId::HZH_TO_X)), cqc("qubits 1\nx q0"));
}

TEST(ApplyRule, HxhToZ) {
    const Circuit c = cqc("qubits 1\nh q0\nx q0\nh q0");
    EXPECT_EQ(apply_rule(c, only_match(c, RuleId::HXH_TO_Z)), cqc("qubits 1\nz q0"));
}

TEST(ApplyRule, CxToHczh) {
    const Circuit c = cqc("qubits 2\ncx q0 q1");
    EXPECT_EQ(apply_rule(c, only_match(c, RuleId::CX_TO_HCZH)), cqc("qubits 2\nh q1\ncz q0 q1\nh q1"));
}

TEST(ApplyRule, CzToHcxhPicksTarget) {
    const Circuit c = cqc("qubits 2\ncz q0 q1");
    auto ms = find_matches(c, RuleId::CZ_TO_HCXH);
    ASSERT_EQ(ms.size(), 2U);
    bool found = false;
    for (const auto& m : ms) {
        if (m.wires.back() == 1) {
            EXPECT_EQ(apply_rule(c, m), cqc("qubits 2\nh q1\ncx q0 q1\nh q1"));
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(ApplyRule, FullHadamardReversesCx) {
    const Circuit c = cqc("qubits 2\nh q0\nh q1\ncx q0 q1\nh q0\nh q1");
    EXPECT_EQ(apply_rule(c, only_match(c, RuleId::CX_FULL_H_REVERSE)), cqc("qubits 2\ncx q1 q0"));
}

TEST(ApplyRule, McxToHmczh) {
    const Circuit c = cqc("qubits 3\nccx q0 q1 q2");
    EXPECT_EQ(apply_rule(c, only_match(c, RuleId::MCX_TO_HMCZH)), cqc("qubits 3\nh q2\nccz q0 q1 q2\nh q2"));
}

TEST(ApplyRule, XThroughMcz) {
    // X_a CCZ = CZ_bc CCZ X_a
    const Circuit c = cqc("qubits 3\nx q0\nccz q0 q1 q2");
    const Circuit out = apply_rule(c, only_match(c, RuleId::X_THROUGH_MCZ));
    EXPECT_EQ(out, cqc("qubits 3\ncz q1 q2\nccz q0 q1 q2\nx q0"));
    EXPECT_TRUE(same_up_to_phase(c, out));
}

TEST(ApplyRule, XThroughMczHigherArity) {
    const Circuit c = cqc("qubits 4\nx q2\nmcz q0 q1 q2 q3");
    const Circuit out = apply_rule(c, only_match(c, RuleId::X_THROUGH_MCZ));
    EXPECT_EQ(out, cqc("qubits 4\nccz q0 q1 q3\nmcz q0 q1 q2 q3\nx q2"));
    EXPECT_TRUE(same_up_to_phase(c, out));
}

TEST(ApplyRule, CzPastX) {
    // X_b CZ_bc = CZ_bc Z_c X_b
    const Circuit c = cqc("qubits 2\nx q0\ncz q0 q1");
    const Circuit out = apply_rule(c, only_match(c, RuleId::CZ_PAST_X));
    EXPECT_EQ(out, cqc("qubits 2\ncz q0 q1\nz q1\nx q0"));
    EXPECT_TRUE(same_up_to_phase(c, out));
}

TEST(ApplyRule, DesugarAndResugar) {
    const Circuit open = cqc("qubits 3\nmcx ~q0 q1 -> q2");
    const Circuit closed = apply_rule(open, only_match(open, RuleId::OPEN_CONTROL_DESUGAR));
    EXPECT_EQ(closed, cqc("qubits 3\nx q0\nccx q0 q1 q2\nx q0"));
    EXPECT_EQ(apply_rule(closed, only_match(closed, RuleId::OPEN_CONTROL_RESUGAR)), open);
}

TEST(ApplyRule, KnownControlBecomesX) {
    const Circuit c = cqc("qubits 2\nx q0\ncx q0 q1");
    const Match m = only_match(c, RuleId::CX_CONTROL_SAME_AS_X);
    const Circuit out = apply_rule(c, m);
    EXPECT_EQ(out, cqc("qubits 2\nx q0\nx q1"));
    EXPECT_TRUE(sim::equivalent_on_inputs(c, out, input_constraint_mask(m), 0).equivalent);
    EXPECT_FALSE(same_up_to_phase(c, out));
}

TEST(ApplyRule, StaleRevisionRejected) {
    const Circuit c = cqc("qubits 1\nh q0\nh q0");
    Match m = only_match(c, RuleId::HH_CANCEL);
    m.revision = c.revision() + 1;
    EXPECT_THROW((void)apply_rule(c, m), StaleMatchError);
}

TEST(ApplyRule, MatchFromOtherCircuitRejected) {
    const Circuit c = cqc("qubits 1\nh q0\nh q0");
    const Match m = only_match(c, RuleId::HH_CANCEL);
    const Circuit changed = cqc("qubits 1\nh q0\nx q0");
    EXPECT_THROW((void)apply_rule(changed, m), StaleMatchError);
}

TEST(ApplyRule, OpaqueBarrierViolation) {
    const Circuit c = cqc("qubits 1\nh q0\nbarrier\nh q0");
    Match m = find_matches(c, RuleId::HH_CANCEL, BarrierPolicy::Transparent).at(0);
    EXPECT_EQ(apply_rule(c, m), cqc("qubits 1\nbarrier"));
    m.policy = BarrierPolicy::Opaque;
    EXPECT_THROW((void)apply_rule(c, m), BarrierViolationError);
}

TEST(ApplyRule, RevisionAdvances) {
    const Circuit c = cqc("qubits 1\nh q0\nh q0");
    EXPECT_EQ(apply_rule(c, only_match(c, RuleId::HH_CANCEL)).revision(), c.revision() + 1);
}

// --- severing ------------------------------------------------------------------

TEST(Sever, PhaseOracleWithOneAncilla) {
    const Circuit c = cqc("qubits 4\nx q3\nccz q0 q1 q3\nmcz ~q0 q1 q2 q3\nmcz ~q2 q3");
    const Circuit out = sever_ancilla(c, 3);
    EXPECT_EQ(out, cqc("qubits 4\nx q3\ncz q0 q1\nmcz ~q0 q1 q2\nz q2"));
    for (const auto& g : out.gates()) {
        if (g.kind() != GateKind::X) EXPECT_FALSE(g.touches(3));
    }
    EXPECT_TRUE(sim::equivalent_on_inputs(c, out, 1U << 3, 0).equivalent);
}

TEST(Sever, MinusAncillaTarget) {
    const Circuit c = cqc("qubits 3\nx q2\nh q2\nccx q0 q1 q2\nmcx ~q0 -> q2");
    const Circuit out = sever_ancilla(c, 2);
    EXPECT_EQ(out, cqc("qubits 3\nx q2\nh q2\ncz q0 q1\nz q0"));
    EXPECT_TRUE(sim::equivalent_on_inputs(c, out, 1U << 2, 0).equivalent);
}

TEST(Sever, UnusedAncillaLeavesCircuit) {
    const Circuit c = cqc("qubits 3\ncz q0 q1");
    EXPECT_EQ(sever_ancilla(c, 2), c);
}

TEST(Sever, HadamardMidOracleRefused) {
    const Circuit c = cqc("qubits 3\nx q2\nccz q0 q1 q2\nh q2\ncz q0 q2");
    EXPECT_THROW((void)sever_ancilla(c, 2), SeverError);
}

// --- exhaustion ------------------------------------------------------------------

TEST(Exhaustion, OpenClosedPairDropsWire) {
    const Circuit c = cqc("qubits 3\nmcz ~q0 q1 q2\nccz q0 q1 q2");
    EXPECT_EQ(exhaustion_merge(c, std::vector<std::size_t>{0, 1}), cqc("qubits 3\ncz q1 q2"));
}

TEST(Exhaustion, FinalCollapseToZ) {
    const Circuit c = cqc("qubits 3\nmcz ~q0 q2\ncz q0 q2");
    EXPECT_EQ(exhaustion_merge(c, std::vector<std::size_t>{0, 1}), cqc("qubits 3\nz q2"));
}

TEST(Exhaustion, IdenticalGatesNotMergeable) {
    const Circuit c = cqc("qubits 3\nccz q0 q1 q2\nccz q0 q1 q2");
    EXPECT_THROW((void)exhaustion_merge(c, std::vector<std::size_t>{0, 1}), NotMergeableError);
}

TEST(Exhaustion, DifferentSupportNotMergeable) {
    const Circuit c = cqc("qubits 3\ncz q0 q1\ncz q0 q2");
    EXPECT_THROW((void)exhaustion_merge(c, std::vector<std::size_t>{0, 1}), NotMergeableError);
}

class ExhaustionArity : public ::testing::TestWithParam<int> {};

TEST_P(ExhaustionArity, AllPolarityVariantsCollapse) {
    const int k = GetParam();
    Circuit c(k + 1);
    std::vector<std::size_t> all;
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<Control> parts;
        for (int w = 0; w < k; ++w) parts.push_back({w, ((mask >> w) & 1) != 0});
        parts.push_back({k, false});
        c.append(Gate::phase(parts));
        all.push_back(static_cast<std::size_t>(mask));
    }
    const Circuit out = exhaustion_merge(c, all);
    Circuit expect(k + 1);
    expect.append(Gate::z(k));
    EXPECT_EQ(out, expect);
    EXPECT_TRUE(same_up_to_phase(c, out));
}

TEST_P(ExhaustionArity, MatchGroupForm) {
    const int k = GetParam();
    Circuit c(k + 1);
    for (int mask = (1 << k) - 1; mask >= 0; --mask) {
        std::vector<Control> parts;
        for (int w = 0; w < k; ++w) parts.push_back({w, ((mask >> w) & 1) != 0});
        parts.push_back({k, false});
        c.append(Gate::phase(parts));
    }
    const auto group = find_matches(c, RuleId::MCZ_EXHAUSTION_MERGE);
    ASSERT_FALSE(group.empty());
    Circuit expect(k + 1);
    expect.append(Gate::z(k));
    EXPECT_EQ(exhaustion_merge(c, group), expect);
}

INSTANTIATE_TEST_SUITE_P(Controls, ExhaustionArity, ::testing::Values(1, 2, 3));

TEST(PhaseUpToGlobal, Forms) {
    EXPECT_FALSE(phase_up_to_global({}));
    EXPECT_EQ(phase_up_to_global({{2, true}}), Gate::z(2));
    EXPECT_EQ(phase_up_to_global({{0, true}, {1, false}}), Gate::phase({{0, true}, {1, false}}));
    EXPECT_THROW((void)phase_up_to_global({{0, true}, {1, true}}), NotMergeableError);
}

// --- properties ------------------------------------------------------------------

// Every rule, both directions, on random circuits of up to five wires: the
// result is well formed and equal up to global phase (on the constrained
// input subspace for state-dependent rules).
TEST(RuleProperties, Soundness) {
    std::mt19937_64 rng(20240611);
    std::map<std::pair<RuleId, Direction>, int> applied;
    const auto& rules = all_rules();
    int checked = 0;
    int round = 0;
    while (checked < 1000 && round < 20000) {
        const RuleId rule = rules[static_cast<std::size_t>(round) % rules.size()];
        const Direction dir = (round / static_cast<int>(rules.size())) % 2 ? Direction::Backward : Direction::Forward;
        ++round;
        const int n = std::uniform_int_distribution<int>(2, 5)(rng);
        Circuit c = random_circuit(rng, n, std::uniform_int_distribution<int>(3, 12)(rng));
        auto ms = find_matches(c, rule, BarrierPolicy::Opaque, dir);
        if (ms.empty()) {
            // Plant a site by running the opposite direction first.
            const Direction other = dir == Direction::Forward ? Direction::Backward : Direction::Forward;
            auto seeds = find_matches(c, rule, BarrierPolicy::Opaque, other);
            if (seeds.empty()) continue;
            const Match seed = seeds[std::uniform_int_distribution<std::size_t>(0, seeds.size() - 1)(rng)];
            if (input_constraint_mask(seed) != 0) continue;
            c = apply_rule(c, seed);
            ms = find_matches(c, rule, BarrierPolicy::Opaque, dir);
            if (ms.empty()) continue;
        }
        const Match m = ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)];
        const Circuit out = apply_rule(c, m);
        ASSERT_EQ(out.num_qubits(), c.num_qubits());
        const Circuit reparsed = parse_circuit(emit_circuit(out));
        ASSERT_EQ(reparsed, out);
        const std::uint64_t mask = input_constraint_mask(m);
        const auto report = mask ? sim::equivalent_on_inputs(c, out, mask, 0) : sim::equivalent_up_to_phase(c, out);
        ASSERT_TRUE(report.equivalent) << describe(m) << "\nbefore:\n"
                                       << emit_circuit(c) << "\nafter:\n"
                                       << emit_circuit(out) << "\ndeviation " << report.max_deviation;
        ++applied[{rule, dir}];
        ++checked;
    }
    EXPECT_GE(checked, 1000);
    for (RuleId r : rules) {
        for (Direction d : {Direction::Forward, Direction::Backward}) {
            EXPECT_GT((applied[{r, d}]), 0) << to_string(r) << " " << to_string(d) << " never exercised";
        }
    }
}

namespace {

bool uses_wire_after_prep(const Circuit& c, int w) {
    for (const auto& g : c.gates()) {
        if (g.touches(w) && !g.is_single_qubit()) return true;
    }
    return false;
}

// Equal, or the same gates reordered without changing the unitary.
bool same_up_to_reordering(const Circuit& a, const Circuit& b) {
    if (a == b) return true;
    auto texts = [](const Circuit& c) {
        std::multiset<std::string> out;
        for (const auto& g : c.gates()) out.insert(g.to_cqc());
        return out;
    };
    return texts(a) == texts(b) && same_up_to_phase(a, b);
}

}  // namespace

// Running a rule backward and then forward at the site it created restores the circuit.
TEST(RuleProperties, BackwardThenForwardRestores) {
    std::mt19937_64 rng(77);
    int checked = 0;
    std::map<RuleId, int> per_rule;
    for (int round = 0; round < 3000; ++round) {
        const RuleId rule = all_rules()[static_cast<std::size_t>(round) % all_rules().size()];
        const int n = std::uniform_int_distribution<int>(2, 4)(rng);
        const Circuit c = random_circuit(rng, n, std::uniform_int_distribution<int>(2, 8)(rng));
        const auto back = find_matches(c, rule, BarrierPolicy::Opaque, Direction::Backward);
        if (back.empty()) continue;
        const Match m = back[std::uniform_int_distribution<std::size_t>(0, back.size() - 1)(rng)];
        const Circuit mid = apply_rule(c, m);
        const auto sem = rule_semantics(rule);
        // The inverse of a backward step is the forward rule (the paired rule for sugar).
        const RuleId inv_rule = sem.inverse == rule ? rule : sem.inverse;
        const Direction inv_dir = sem.inverse == rule ? Direction::Forward : Direction::Backward;
        if (rule == RuleId::ANCILLA_SEVER && uses_wire_after_prep(c, m.wires.front())) {
            // Severing drops every participation, not just the attached one.
            continue;
        }
        bool restored = false;
        for (const auto& f : find_matches(mid, inv_rule, BarrierPolicy::Opaque, inv_dir)) {
            if (same_up_to_reordering(apply_rule(mid, f), c)) {
                restored = true;
                break;
            }
        }
        EXPECT_TRUE(restored) << describe(m) << "\n" << emit_circuit(c) << "\n->\n" << emit_circuit(mid);
        ++per_rule[rule];
        ++checked;
    }
    EXPECT_GT(checked, 500);
}

// --- derivations ------------------------------------------------------------------

namespace {

Derivation small_derivation() {
    Derivation d(cqc("qubits 2\nbits 1\ncx q0 q1\nh q0\nh q0\nmeasure q1 -> c0"));
    d.label_current("start");
    d.apply(only_match(d.current(), RuleId::CX_TO_HCZH), "cz-form");
    d.apply(only_match(d.current(), RuleId::HH_CANCEL));
    return d;
}

}  // namespace

TEST(DerivationTest, SnapshotsAndMilestones) {
    Derivation d = small_derivation();
    ASSERT_EQ(d.size(), 2U);
    EXPECT_EQ(d.current(), cqc("qubits 2\nbits 1\nh q1\ncz q0 q1\nh q1\nmeasure q1 -> c0"));
    EXPECT_EQ(d.milestones(), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(d.snapshot(0), d.initial());
    EXPECT_THROW((void)d.snapshot(3), std::out_of_range);
}

TEST(DerivationTest, VerifyCertifiesSteps) {
    Derivation d = small_derivation();
    EXPECT_FALSE(d.all_verified());
    EXPECT_TRUE(d.verify());
    EXPECT_TRUE(d.all_verified());
}

TEST(DerivationTest, VerifyFlagsBrokenStep) {
    Derivation d(cqc("qubits 1\nh q0"));
    Match fake;
    fake.rule = RuleId::HH_CANCEL;
    d.push_step({fake, cqc("qubits 1\nx q0"), StepCheck::Unchecked, {}});
    EXPECT_FALSE(d.verify());
    EXPECT_EQ(d.steps()[0].check, StepCheck::Failed);
}

TEST(DerivationTest, ReplayReproducesSnapshots) {
    EXPECT_EQ(replay_mismatch(small_derivation()), 0U);
    Derivation d(cqc("qubits 1\nh q0\nh q0"));
    Match m = only_match(d.current(), RuleId::HH_CANCEL);
    d.push_step({m, cqc("qubits 1\nz q0"), StepCheck::Unchecked, {}});
    EXPECT_EQ(replay_mismatch(d), 1U);
}

TEST(DerivationTest, SerializeRoundTrip) {
    Derivation d = small_derivation();
    d.verify();
    const std::string text = serialize(d);
    EXPECT_NE(text.find("step 1: rule=CX_TO_HCZH at=[0]"), std::string::npos) << text;
    EXPECT_NE(text.find("-> " + circuit_hash(d.current())), std::string::npos);
    const Derivation back = parse_derivation(text);
    ASSERT_EQ(back.size(), d.size());
    EXPECT_EQ(back.initial(), d.initial());
    for (std::size_t k = 0; k < d.size(); ++k) {
        EXPECT_EQ(back.steps()[k].snapshot, d.steps()[k].snapshot);
        EXPECT_EQ(back.steps()[k].match.gate_indices, d.steps()[k].match.gate_indices);
        EXPECT_EQ(back.steps()[k].check, StepCheck::Verified);
        EXPECT_EQ(back.steps()[k].label, d.steps()[k].label);
    }
    EXPECT_EQ(back.initial_label(), "start");
    EXPECT_EQ(replay_mismatch(back), 0U);
    EXPECT_EQ(serialize(back), text);
}

TEST(DerivationTest, TamperedHashRejected) {
    std::string text = serialize(small_derivation());
    const auto pos = text.find("  h q1");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 6, "  x q1");
    EXPECT_THROW((void)parse_derivation(text), ParseError);
}

TEST(DerivationTest, MalformedTraceRejected) {
    EXPECT_THROW((void)parse_derivation(""), ParseError);
    EXPECT_THROW((void)parse_derivation("derivation v1\nstep 1: rule=HH_CANCEL -> 0\n"), ParseError);
    EXPECT_THROW((void)parse_derivation("derivation v2\n"), ParseError);
}

TEST(DerivationTest, UndoPopsStep) {
    Derivation d = small_derivation();
    d.undo();
    EXPECT_EQ(d.size(), 1U);
    d.undo();
    EXPECT_THROW(d.undo(), std::logic_error);
}

// --- normalize ----------------------------------------------------------------------

TEST(Normalize, CancelOnlyExample) {
    const auto r = normalize(cqc("qubits 2\nh q0\nh q0\nx q1"), Strategy::CancelOnly);
    EXPECT_EQ(r.circuit, cqc("qubits 2\nx q1"));
    EXPECT_EQ(r.derivation.size(), 1U);
}

TEST(Normalize, CancelOnlyNeverGrows) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Circuit c = random_circuit(rng, 3, 12);
        const auto r = normalize(c, Strategy::CancelOnly);
        EXPECT_LE(r.circuit.size(), c.size());
        EXPECT_TRUE(same_up_to_phase(c, r.circuit));
        EXPECT_EQ(replay_mismatch(r.derivation), 0U);
    }
}

TEST(Normalize, PushLeftSlidesHadamardsToBlockEdges) {
    // Three data wires plus ancilla q3, oracle bits on q0 and q2.
    const Circuit fig2 = cqc(
        "qubits 4\nbarrier\nx q3\nbarrier\nh q0\ncz q0 q3\nh q0\nh q2\ncz q2 q3\nh q2\nbarrier");
    const Circuit fig3 = cqc(
        "qubits 4\nbarrier\nx q3\nbarrier\nh q0\nh q2\ncz q0 q3\ncz q2 q3\nh q0\nh q2\nbarrier");
    const auto r = normalize(fig2, Strategy::PushLeft);
    EXPECT_EQ(r.circuit, fig3);
    Derivation d = r.derivation;
    EXPECT_TRUE(d.verify());
}

TEST(Normalize, FullPushesXThroughPhaseGates) {
    const auto r = normalize(cqc("qubits 2\nx q0\ncz q0 q1\nx q0"), Strategy::Full);
    EXPECT_EQ(r.circuit, cqc("qubits 2\ncz q0 q1\nz q1"));
    Derivation d = r.derivation;
    EXPECT_TRUE(d.verify());
}

TEST(Normalize, FullCollapsesPolaritySet) {
    const auto r = normalize(cqc("qubits 2\nmcz ~q0 q1\ncz q0 q1"), Strategy::Full);
    EXPECT_EQ(r.circuit, cqc("qubits 2\nz q1"));
}

TEST(Normalize, BudgetExceeded) {
    NormalizeOptions opts;
    opts.budget = 0;
    EXPECT_THROW((void)normalize(cqc("qubits 1\nh q0\nh q0"), Strategy::CancelOnly, opts), BudgetExceededError);
}

TEST(Normalize, StrategyNames) {
    EXPECT_EQ(strategy_from_string("push-left"), Strategy::PushLeft);
    EXPECT_EQ(to_string(Strategy::Full), "full");
    EXPECT_FALSE(strategy_from_string("sideways"));
}
