#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "cliffrw/circuit.hpp"
#include "cliffrw/error.hpp"
#include "cliffrw/sim/identities.hpp"
#include "cliffrw/sim/kernels.hpp"
#include "cliffrw/sim/sample.hpp"
#include "cliffrw/sim/statevector.hpp"
#include "cliffrw/sim/tableau.hpp"
#include "cliffrw/sim/unitary.hpp"

namespace cliffrw::sim {
namespace {

using cplx = std::complex<double>;

Circuit random_clifford(std::mt19937_64& rng, int n, int depth, bool measure_all) {
    std::uniform_int_distribution<int> wire(0, n - 1), pick(0, 10);
    std::bernoulli_distribution coin(0.5);
    Circuit c(n, measure_all ? n : 0);
    for (int k = 0; k < depth; ++k) {
        const int a = wire(rng);
        int b = wire(rng);
        if (n > 1) {
            while (b == a) b = wire(rng);
        }
        const int kind = n > 1 ? pick(rng) : pick(rng) % 7;
        switch (kind) {
            case 0: c.append(Gate::h(a)); break;
            case 1: c.append(Gate::s(a)); break;
            case 2: c.append(Gate::sdg(a)); break;
            case 3: c.append(Gate::x(a)); break;
            case 4: c.append(Gate::y(a)); break;
            case 5: c.append(Gate::z(a)); break;
            case 6: c.append(Gate::h(a)); break;
            case 7: c.append(Gate::x_family({{a, coin(rng)}}, b)); break;
            case 8: c.append(Gate::phase({{a, coin(rng)}, {b, false}})); break;
            case 9: c.append(Gate::swap(a, b)); break;
            default: c.append(Gate::cx(a, b)); break;
        }
    }
    if (measure_all) {
        for (int q = 0; q < n; ++q) c.append(Gate::measure(q, q));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Statevector

TEST(StateVectorTest, HadamardOnZero) {
    auto sv = statevector_run(parse_circuit("qubits 1\nh q0"));
    EXPECT_NEAR(sv[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(sv[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(StateVectorTest, HzhActsAsX) {
    auto sv = statevector_run(parse_circuit("qubits 1\nh q0\nz q0\nh q0"));
    EXPECT_NEAR(std::abs(sv[0]), 0.0, 1e-15);
    EXPECT_NEAR(sv[1].real(), 1.0, 1e-15);
}

TEST(StateVectorTest, BasisInputOrdering) {
    // "10" means q1 = 1, q0 = 0.
    auto sv = statevector_run(parse_circuit("qubits 2"), "10");
    EXPECT_EQ(sv[2], cplx(1.0, 0.0));
    EXPECT_THROW((void)statevector_run(parse_circuit("qubits 2"), "1"), ValidationError);
    EXPECT_THROW((void)statevector_run(parse_circuit("qubits 2"), "1x"), ValidationError);
}

TEST(StateVectorTest, OpenControlFiresOnZero) {
    auto sv = statevector_run(parse_circuit("qubits 2\nmcx ~q0 -> q1"));
    EXPECT_EQ(sv[2], cplx(1.0, 0.0));
    auto sv2 = statevector_run(parse_circuit("qubits 2\nmcx ~q0 -> q1"), "01");
    EXPECT_EQ(sv2[1], cplx(1.0, 0.0));
}

TEST(StateVectorTest, MeasuresSkippedWithFlag) {
    auto sv = statevector_run(parse_circuit("qubits 1\nbits 1\nx q0\nmeasure q0 -> c0"));
    EXPECT_TRUE(sv.measurements_ignored);
    EXPECT_EQ(sv[1], cplx(1.0, 0.0));
}

TEST(StateVectorTest, SizeLimit) { EXPECT_THROW(StateVector(kMaxDenseQubits + 1), SizeLimitError); }

TEST(StateVectorTest, NormPreservedByEveryGate) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c = random_clifford(rng, 5, 40, false);
        c.append(Gate::ccx(0, 1, 2));
        c.append(Gate::phase({{0, true}, {3, false}, {4, false}}));
        StateVector sv(5, rng() & 31);
        for (const auto& g : c.gates()) {
            sv.apply(g);
            ASSERT_NEAR(sv.norm(), 1.0, 1e-12);
        }
    }
}

TEST(StateVectorTest, ResultIndependentOfSimdLevel) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c = random_clifford(rng, 6, 40, false);
        c.append(Gate::x_family({{1, true}, {3, false}}, 0));
        StateVector ref = [&] {
            kernels::ScopedSimdLevel pin(kernels::SimdLevel::Scalar);
            return statevector_run(c);
        }();
        StateVector fast = statevector_run(c);
        for (std::size_t i = 0; i < ref.amplitudes().size(); ++i) {
            ASSERT_LT(std::abs(ref[i] - fast[i]), 1e-13);
        }
    }
}

// ---------------------------------------------------------------------------
// Tableau

TEST(TableauTest, PlusState) {
    auto t = tableau_run(parse_circuit("qubits 1\nh q0"));
    EXPECT_EQ(t.canonical_stabilizers(), (std::vector<std::string>{"+X"}));
}

TEST(TableauTest, BellPair) {
    auto t = tableau_run(parse_circuit("qubits 2\nh q0\ncx q0 q1"));
    EXPECT_EQ(t.canonical_stabilizers(), (std::vector<std::string>{"+XX", "+ZZ"}));
    EXPECT_TRUE(t.is_consistent());
}

TEST(TableauTest, BasisInputSigns) {
    auto t = tableau_run(parse_circuit("qubits 2"), "01");
    EXPECT_EQ(t.canonical_stabilizers(), (std::vector<std::string>{"-ZI", "+IZ"}));
}

TEST(TableauTest, RejectsNonClifford) {
    try {
        (void)tableau_run(parse_circuit("qubits 3\nccx q0 q1 q2"));
        FAIL();
    } catch (const NonCliffordError& e) {
        EXPECT_NE(std::string(e.what()).find("mcx q0 q1 -> q2"), std::string::npos);
    }
}

TEST(TableauTest, ConsistentAfterRandomCircuits) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto t = tableau_run(random_clifford(rng, 6, 40, false));
        ASSERT_TRUE(t.is_consistent());
    }
}

TEST(TableauTest, DeterministicAndRandomMeasurement) {
    auto t = tableau_run(parse_circuit("qubits 2\nx q1\nh q0"));
    EXPECT_EQ(t.deterministic_outcome(1), 1);
    EXPECT_EQ(t.deterministic_outcome(0), -1);
    EXPECT_EQ(t.measure(0, nullptr, 1), 1);
    EXPECT_EQ(t.deterministic_outcome(0), 1);
}

// Stabilizers of the tableau state must fix the statevector state.
TEST(TableauTest, StabilizersFixStatevector) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 4;
        Circuit c = random_clifford(rng, n, 30, false);
        auto t = tableau_run(c);
        auto sv = statevector_run(c);
        for (const auto& p : t.stabilizers()) {
            StateVector applied = sv;
            for (int q = 0; q < n; ++q) {
                const char ch = p[1 + q];
                if (ch == 'X') applied.apply(Gate::x(q));
                if (ch == 'Y') applied.apply(Gate::y(q));
                if (ch == 'Z') applied.apply(Gate::z(q));
            }
            const double sign = p[0] == '-' ? -1.0 : 1.0;
            for (std::size_t i = 0; i < sv.amplitudes().size(); ++i) {
                ASSERT_LT(std::abs(sign * applied[i] - sv[i]), 1e-12) << p;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Unitary and equivalence

TEST(UnitaryTest, ZIsDiagonal) {
    Matrix u = unitary_of(parse_circuit("qubits 1\nz q0"));
    Matrix expected(2, 2);
    expected << 1, 0, 0, -1;
    EXPECT_LT((u - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(UnitaryTest, HczhIsCx) {
    Matrix u = unitary_of(parse_circuit("qubits 2\nh q1\ncz q0 q1\nh q1"));
    Matrix cx = unitary_of(parse_circuit("qubits 2\ncx q0 q1"));
    // Column j is the image of |j>: CX(q0->q1) maps |01> (index 1) to |11> (index 3).
    EXPECT_NEAR(std::abs(cx(3, 1)), 1.0, 1e-15);
    EXPECT_LT((u - cx).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(UnitaryTest, RejectsMeasuredAndOversize) {
    EXPECT_THROW((void)unitary_of(parse_circuit("qubits 1\nbits 1\nmeasure q0 -> c0")), ValidationError);
    EXPECT_THROW((void)unitary_of(Circuit(kMaxUnitaryQubits + 1)), SizeLimitError);
}

TEST(UnitaryTest, CompositionProperty) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        Circuit a = random_clifford(rng, 4, 15, false);
        Circuit b = random_clifford(rng, 4, 15, false);
        Matrix ab = unitary_of(a + b);
        ASSERT_LT((ab - unitary_of(b) * unitary_of(a)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(EquivalenceTest, XIsNotZ) {
    auto rep = equivalent_up_to_phase(parse_circuit("qubits 1\nx q0"), parse_circuit("qubits 1\nz q0"));
    EXPECT_FALSE(rep.equivalent);
    EXPECT_GT(rep.max_deviation, 0.5);
}

TEST(EquivalenceTest, ReportsGlobalPhase) {
    // Y = i X Z
    auto rep = equivalent_up_to_phase(parse_circuit("qubits 1\ny q0"), parse_circuit("qubits 1\nz q0\nx q0"));
    ASSERT_TRUE(rep.equivalent);
    EXPECT_LT(std::abs(rep.global_phase - cplx(0, 1)), 1e-12);
    auto same = equivalent_up_to_phase(parse_circuit("qubits 2\ncz q0 q1"), parse_circuit("qubits 2\ncz q1 q0"));
    EXPECT_LT(std::abs(same.global_phase - cplx(1, 0)), 1e-12);
}

TEST(EquivalenceTest, WidthMismatch) {
    EXPECT_THROW((void)equivalent_up_to_phase(Circuit(1), Circuit(2)), ValidationError);
}

TEST(EquivalenceTest, RestrictedInputs) {
    // With q1 fixed to 0, a CX controlled by q1 does nothing.
    Circuit a = parse_circuit("qubits 2\ncx q1 q0");
    Circuit b(2);
    EXPECT_TRUE(equivalent_on_inputs(a, b, 0b10, 0b00).equivalent);
    EXPECT_FALSE(equivalent_up_to_phase(a, b).equivalent);
}

// ---------------------------------------------------------------------------
// Sampling

TEST(SampleTest, FairCoinWithinFiveSigma) {
    Circuit c = parse_circuit("qubits 1\nbits 1\nh q0\nmeasure q0 -> c0");
    Counts counts = sample(c, 4096, 7);
    const double sigma = std::sqrt(4096 * 0.25);
    EXPECT_EQ(counts["0"] + counts["1"], 4096u);
    EXPECT_LT(std::abs(static_cast<double>(counts["0"]) - 2048.0), 5 * sigma);
}

TEST(SampleTest, DeterministicForSeed) {
    std::mt19937_64 rng(1);
    Circuit c = random_clifford(rng, 4, 20, true);
    EXPECT_EQ(sample(c, 500, 42), sample(c, 500, 42));
    EXPECT_EQ(sample(c, 500, 42, Backend::StateVector), sample(c, 500, 42, Backend::StateVector));
}

TEST(SampleTest, BitOrderingPutsHighBitLeft) {
    Circuit c = parse_circuit("qubits 3\nbits 3\nx q0\nmeasure q0 -> c0\nmeasure q1 -> c1\nmeasure q2 -> c2");
    EXPECT_EQ(sample(c, 10, 0), (Counts{{"001", 10}}));
}

TEST(SampleTest, RequiresMeasurements) {
    EXPECT_THROW((void)sample(parse_circuit("qubits 1\nh q0"), 10, 0), ValidationError);
    EXPECT_THROW((void)sample(parse_circuit("qubits 1\nbits 1\nmeasure q0 -> c0"), 0, 0), ValidationError);
}

TEST(SampleTest, NonCliffordUsesStatevector) {
    Circuit c = parse_circuit("qubits 3\nbits 1\nx q0\nx q1\nccx q0 q1 q2\nmeasure q2 -> c0");
    EXPECT_EQ(sample(c, 8, 3), (Counts{{"1", 8}}));
}

TEST(SampleTest, BackendAgreementOnRandomCliffordCircuits) {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> nq(1, 6), depth(1, 40);
    for (int trial = 0; trial < 200; ++trial) {
        Circuit c = random_clifford(rng, nq(rng), depth(rng), true);
        Distribution tab = exact_distribution(c, Backend::Tableau);
        Distribution sv = exact_distribution(c, Backend::StateVector);
        std::set<std::string> keys;
        for (auto& [k, _] : tab) keys.insert(k);
        for (auto& [k, _] : sv) keys.insert(k);
        for (const auto& k : keys) {
            const double p = tab.count(k) ? tab.at(k) : 0.0;
            const double q = sv.count(k) ? sv.at(k) : 0.0;
            ASSERT_NEAR(p, q, 1e-9) << emit_circuit(c) << "\nkey " << k;
        }
    }
}

// ---------------------------------------------------------------------------
// Identities

TEST(IdentityTest, AllHold) {
    for (const auto& check : check_parity_identities()) {
        EXPECT_TRUE(check.holds) << check.name << " deviation " << check.deviation;
        EXPECT_LE(check.deviation, kIdentityTolerance) << check.name;
    }
}

TEST(IdentityTest, HzhExactlyX) {
    auto checks = check_parity_identities();
    EXPECT_EQ(checks.front().name, "H Z H = X");
    EXPECT_LT(checks.front().deviation, 1e-15);
}

// Fixture values from the brute-force search over multiples of pi/4:
// (H(x)H) CZ (H(x)H) = e^{i pi/4} RXX(-pi/2) (RX(pi/2) (x) RX(pi/2)).
TEST(IdentityTest, RxxFactorizationPhases) {
    const auto f = derive_rxx_factorization();
    ASSERT_TRUE(f.found);
    const double pi = std::acos(-1.0);
    EXPECT_NEAR(f.rxx_angle, -pi / 2, 1e-12);
    EXPECT_NEAR(f.rx0_angle, pi / 2, 1e-12);
    EXPECT_NEAR(f.rx1_angle, pi / 2, 1e-12);
    EXPECT_LT(std::abs(f.global_phase - std::polar(1.0, pi / 4)), 1e-12);
}

}  // namespace
}  // namespace cliffrw::sim
