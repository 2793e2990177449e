#include <gtest/gtest.h>

#include <random>

#include "cliffrw/circuit.hpp"
#include "cliffrw/error.hpp"
#include "cliffrw/sim/sample.hpp"
#include "cliffrw/sim/unitary.hpp"
#include "cliffrw/taxonomy.hpp"

using namespace cliffrw;
using namespace cliffrw::taxonomy;

namespace {

Circuit cqc(const std::string& body) { return parse_circuit(body); }

const char* kBv11 = R"(qubits 3
h q0
h q1
x q2
h q2
barrier
cx q0 q2
cx q1 q2
barrier
h q0
h q1
h q2
)";

Circuit random_clifford(std::mt19937_64& rng, int n, int len) {
    std::uniform_int_distribution<int> wire(0, n - 1);
    std::uniform_int_distribution<int> pick(0, 6);
    Circuit c(n);
    for (int i = 0; i < len; ++i) {
        const int a = wire(rng);
        int b = wire(rng);
        if (n > 1) {
            while (b == a) b = wire(rng);
        }
        switch (pick(rng)) {
            case 0:
            case 1: c.append(Gate::h(a)); break;
            case 2: c.append(Gate::x(a)); break;
            case 3: c.append(Gate::z(a)); break;
            case 4: c.append(Gate::s(a)); break;
            case 5:
                if (n > 1) c.append(Gate::cx(a, b));
                break;
            default:
                if (n > 1) c.append(Gate::cz(a, b));
                break;
        }
    }
    return c;
}

Circuit random_classical(std::mt19937_64& rng, int n, int len) {
    std::uniform_int_distribution<int> wire(0, n - 1);
    std::bernoulli_distribution coin(0.5);
    Circuit c(n);
    for (int i = 0; i < len; ++i) {
        const int a = wire(rng);
        const int b = (a + 1) % n;
        if (coin(rng) || n == 1) {
            c.append(Gate::x(a));
        } else {
            c.append(Gate::x_family({{b, coin(rng)}}, a));
        }
    }
    return c;
}

// Largest entanglement rank over every basis input and bipartition.
int max_rank(const Circuit& c) {
    const int n = c.num_qubits();
    int best = 0;
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
        const auto input = sim::format_bits(x, n);
        for (std::uint64_t m = 1; m + 1 < (1ULL << n); ++m) {
            std::vector<int> side;
            for (int w = 0; w < n; ++w) {
                if ((m >> w) & 1U) side.push_back(w);
            }
            best = std::max(best, entanglement_rank(c, input, side));
        }
    }
    return best;
}

}  // namespace

TEST(Classical, AcceptsReversibleLogic) {
    EXPECT_TRUE(is_classical(cqc("qubits 3\nbits 1\nx q0\ncx ~q0 q1\nccx q0 q1 q2\nswap q0 q2\nbarrier\nmeasure q0 -> c0")));
    EXPECT_FALSE(is_classical(cqc("qubits 2\ncx q0 q1\nz q1")));
    EXPECT_FALSE(is_classical(cqc("qubits 1\nh q0")));
}

TEST(Frame, StringRoundTrip) {
    const Frame f = frame_from_string("ZXX");
    EXPECT_EQ(to_string(f), "ZXX");
    EXPECT_THROW((void)frame_from_string("ZY"), ValidationError);
}

TEST(Frame, AllZLeavesCircuitAlone) {
    const Circuit c = cqc("qubits 2\nh q0\ncx q0 q1");
    EXPECT_EQ(conjugate_by_frame(c, uniform_frame(2, Basis::Z)), c);
}

TEST(Frame, ClosingHadamardPrecedesMeasure) {
    const Circuit c = cqc("qubits 1\nbits 1\nz q0\nmeasure q0 -> c0");
    EXPECT_EQ(conjugate_by_frame(c, frame_from_string("X")), cqc("qubits 1\nbits 1\nh q0\nz q0\nh q0\nmeasure q0 -> c0"));
}

TEST(Frame, WrongWidthRejected) {
    EXPECT_THROW((void)conjugate_by_frame(Circuit(2), frame_from_string("X")), ValidationError);
}

TEST(Frame, ConjugationIsAnInvolution) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit c = random_clifford(rng, 3, 8);
        const Frame f = frame_from_string(trial % 2 ? "XZX" : "ZXX");
        EXPECT_TRUE(sim::equivalent_up_to_phase(conjugate_by_frame(conjugate_by_frame(c, f), f), c).equivalent);
    }
}

TEST(Frame, AlignmentRules) {
    const Circuit cx = cqc("qubits 2\ncx q0 q1");
    EXPECT_TRUE(frame_aligned(cx, frame_from_string("ZZ")));
    EXPECT_TRUE(frame_aligned(cx, frame_from_string("XX")));
    EXPECT_TRUE(frame_aligned(cx, frame_from_string("ZX")));
    EXPECT_FALSE(frame_aligned(cx, frame_from_string("XZ")));
    EXPECT_FALSE(frame_aligned(cqc("qubits 3\nccx q0 q1 q2"), frame_from_string("XXX")));
    EXPECT_TRUE(frame_aligned(cqc("qubits 2\nswap q0 q1\ncx q1 q0"), frame_from_string("ZX")));
    EXPECT_FALSE(frame_aligned(cqc("qubits 2\nswap q0 q1\ncx q0 q1"), frame_from_string("ZX")));
}

TEST(Classify, ReversibleLogicIsFamilyOne) {
    const auto v = classify(cqc("qubits 2\ncx q0 q1\nx q1"));
    EXPECT_EQ(v.family, Family::I);
    EXPECT_EQ(v.label(), "I");
    EXPECT_TRUE(recheck_witness(cqc("qubits 2\ncx q0 q1\nx q1"), v));
}

TEST(Classify, CancellingHadamardsAreFamilyOne) {
    EXPECT_EQ(classify(cqc("qubits 1\nh q0\nbarrier\nh q0\nx q0")).family, Family::I);
}

TEST(Classify, BernsteinVaziraniIsFamilyTwoInTheXFrame) {
    const Circuit c = cqc(kBv11);
    const auto v = classify(c);
    ASSERT_EQ(v.family, Family::II);
    ASSERT_TRUE(v.frame);
    EXPECT_EQ(to_string(*v.frame), "XXX");
    ASSERT_TRUE(v.reduced);
    EXPECT_EQ(v.reduced->without_barriers(), cqc("qubits 3\nz q2\ncx q0 q2\ncx q1 q2"));
    EXPECT_TRUE(recheck_witness(c, v));
}

TEST(Classify, BellAndGhzAreFamilyThree) {
    const Circuit bell = cqc("qubits 2\nh q0\ncx q0 q1");
    const auto vb = classify(bell);
    EXPECT_EQ(vb.family, Family::III);
    EXPECT_TRUE(vb.confirmed);
    EXPECT_EQ(vb.rank, 1);
    EXPECT_EQ(vb.cut, std::vector<int>{0});
    EXPECT_EQ(vb.input, "00");
    EXPECT_TRUE(recheck_witness(bell, vb));

    const Circuit ghz = cqc("qubits 3\nh q0\ncx q0 q1\ncx q1 q2");
    const auto vg = classify(ghz);
    EXPECT_EQ(vg.label(), "III");
    EXPECT_EQ(vg.rank, 1);
}

TEST(Classify, NonCliffordFamilyThreeStillConfirmedByExhaustiveSearch) {
    const auto v = classify(cqc("qubits 3\nh q0\nh q1\nccx q0 q1 q2"));
    EXPECT_EQ(v.family, Family::III);
    EXPECT_TRUE(v.confirmed);
    EXPECT_TRUE(v.cut.empty());
}

TEST(Rank, KnownStates) {
    EXPECT_EQ(entanglement_rank(cqc("qubits 2\nh q0\ncx q0 q1"), "00", {0}), 1);
    EXPECT_EQ(entanglement_rank(cqc("qubits 3\nh q0\ncx q0 q1\ncx q1 q2"), "000", {1}), 1);
    EXPECT_EQ(entanglement_rank(cqc("qubits 3\nh q0\ncx q0 q1\ncx q1 q2"), "000", {0, 2}), 1);
    EXPECT_EQ(entanglement_rank(cqc("qubits 2\nx q0\ncx q0 q1"), "10", {0}), 0);
    EXPECT_EQ(entanglement_rank(cqc("qubits 4\nh q0\ncx q0 q1\nh q2\ncx q2 q3"), "0000", {0, 2}), 2);
}

TEST(Rank, RejectsBadInput) {
    const Circuit c = cqc("qubits 2\nh q0\ncx q0 q1");
    EXPECT_THROW((void)entanglement_rank(c, "00", {0, 0}), ValidationError);
    EXPECT_THROW((void)entanglement_rank(c, "00", {2}), ValidationError);
    EXPECT_THROW((void)entanglement_rank(cqc("qubits 3\nccx q0 q1 q2"), "000", {0}), NonCliffordError);
}

TEST(Property, FamilyOneAndTwoNeverEntangle) {
    std::mt19937_64 rng(2024);
    int seen_two = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 4;
        const Circuit c = random_clifford(rng, n, 3 + trial % 7);
        const auto v = classify(c);
        if (v.family == Family::III) {
            if (!v.cut.empty()) EXPECT_GE(max_rank(c), 1);
            continue;
        }
        seen_two += v.family == Family::II;
        EXPECT_EQ(max_rank(c), 0) << emit_circuit(c);
        EXPECT_TRUE(recheck_witness(c, v)) << emit_circuit(c);
    }
    EXPECT_GT(seen_two, 0);
}

TEST(Property, FamilyOneClosedUnderComposition) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Circuit a = random_classical(rng, 3, 5);
        const Circuit b = random_classical(rng, 3, 5);
        Circuit ab = a;
        for (const auto& g : b.gates()) ab.append(g);
        EXPECT_EQ(classify(ab).family, Family::I);
    }
}

TEST(Property, SharedFrameFamilyTwoClosedUnderComposition) {
    const Circuit bv = cqc(kBv11);
    Circuit twice = bv;
    for (const auto& g : bv.gates()) twice.append(g);
    const auto v = classify(twice);
    EXPECT_NE(v.family, Family::III);
    EXPECT_EQ(max_rank(twice), 0);
}
