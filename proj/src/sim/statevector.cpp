#include "cliffrw/sim/statevector.hpp"

#include <cmath>

#include "cliffrw/error.hpp"
#include "cliffrw/sim/kernels.hpp"

namespace cliffrw::sim {
namespace {

using kernels::Mat2;
using cplx = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

const Mat2 kH{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
const Mat2 kY{0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0};
const Mat2 kS{1.0, 0.0, 0.0, cplx{0.0, 1.0}};
const Mat2 kSdg{1.0, 0.0, 0.0, cplx{0.0, -1.0}};

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

}  // namespace

std::uint64_t parse_basis_input(std::string_view bits, int num_qubits) {
    if (bits.empty()) {
        return 0;
    }
    if (static_cast<int>(bits.size()) != num_qubits) {
        throw ValidationError("basis input has " + std::to_string(bits.size()) + " characters, expected " +
                              std::to_string(num_qubits));
    }
    std::uint64_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw ValidationError(std::string("basis input may only contain 0 and 1, got '") + ch + "'");
        }
        index = (index << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return index;
}

StateVector::StateVector(int num_qubits, std::uint64_t basis_index) : num_qubits_(num_qubits) {
    if (num_qubits < 1) {
        throw ValidationError("state needs at least one qubit");
    }
    if (num_qubits > kMaxDenseQubits) {
        throw SizeLimitError("dense simulation is limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    amps_.at(basis_index) = 1.0;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

void StateVector::apply(const Gate& g) {
    if (g.is_barrier()) {
        return;
    }
    if (g.is_measure()) {
        throw ValidationError("statevector cannot apply MEASURE as a unitary");
    }
    for (int w : g.wires()) {
        if (w >= num_qubits_) {
            throw ValidationError("gate wire out of range for state");
        }
    }
    const int t = g.targets().front();
    switch (g.kind()) {
        case GateKind::I: return;
        case GateKind::X: kernels::apply_x(amps_, t, 0, 0); return;
        case GateKind::Y: kernels::apply_1q(amps_, t, kY, 0, 0); return;
        case GateKind::Z: kernels::apply_phase_flip(amps_, bit(t), bit(t)); return;
        case GateKind::H: kernels::apply_1q(amps_, t, kH, 0, 0); return;
        case GateKind::S: kernels::apply_1q(amps_, t, kS, 0, 0); return;
        case GateKind::Sdg: kernels::apply_1q(amps_, t, kSdg, 0, 0); return;
        case GateKind::SWAP: kernels::apply_swap(amps_, g.targets()[0], g.targets()[1]); return;
        default: break;
    }
    std::uint64_t mask = 0;
    std::uint64_t value = 0;
    for (const auto& c : g.controls()) {
        mask |= bit(c.wire);
        if (!c.open) {
            value |= bit(c.wire);
        }
    }
    if (g.is_x_family()) {
        kernels::apply_x(amps_, t, mask, value);
    } else {
        // Phase family: the target is a closed participant.
        kernels::apply_phase_flip(amps_, mask | bit(t), value | bit(t));
    }
}

StateVector statevector_run(const Circuit& c, std::string_view input) {
    StateVector sv(c.num_qubits(), parse_basis_input(input, c.num_qubits()));
    for (const auto& g : c.gates()) {
        if (g.is_measure()) {
            sv.measurements_ignored = true;
            continue;
        }
        sv.apply(g);
    }
    return sv;
}

}  // namespace cliffrw::sim
