#include "cliffrw/sim/unitary.hpp"

#include <cmath>

#include "cliffrw/error.hpp"
#include "cliffrw/sim/statevector.hpp"

namespace cliffrw::sim {
namespace {

void check_size(const Circuit& c) {
    if (c.num_qubits() > kMaxUnitaryQubits) {
        throw SizeLimitError("unitary construction is limited to " + std::to_string(kMaxUnitaryQubits) + " qubits");
    }
    if (c.has_measurements()) {
        throw ValidationError("unitary_of needs a circuit without MEASURE gates");
    }
}

// Columns of the circuit matrix for the selected basis inputs.
Matrix columns_of(const Circuit& c, std::uint64_t mask, std::uint64_t value) {
    check_size(c);
    const std::uint64_t dim = std::uint64_t{1} << c.num_qubits();
    std::uint64_t count = 0;
    for (std::uint64_t j = 0; j < dim; ++j) {
        count += (j & mask) == value;
    }
    Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(count));
    Eigen::Index col = 0;
    for (std::uint64_t j = 0; j < dim; ++j) {
        if ((j & mask) != value) {
            continue;
        }
        StateVector sv(c.num_qubits(), j);
        for (const auto& g : c.gates()) {
            sv.apply(g);
        }
        auto amps = sv.amplitudes();
        for (std::uint64_t i = 0; i < dim; ++i) {
            m(static_cast<Eigen::Index>(i), col) = amps[i];
        }
        ++col;
    }
    return m;
}

}  // namespace

Matrix unitary_of(const Circuit& c) { return columns_of(c, 0, 0); }

EquivalenceReport compare_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("cannot compare matrices of different shapes");
    }
    EquivalenceReport rep;
    if (a.size() == 0) {
        rep.equivalent = true;
        return rep;
    }
    // Phase from the largest entry of b, where the ratio is best conditioned.
    Eigen::Index bi = 0, bj = 0;
    b.cwiseAbs().maxCoeff(&bi, &bj);
    const std::complex<double> ref = b(bi, bj);
    std::complex<double> phase{1.0, 0.0};
    if (std::abs(ref) > tol) {
        const std::complex<double> ratio = a(bi, bj) / ref;
        if (std::abs(ratio) > tol) {
            phase = ratio / std::abs(ratio);
        }
    }
    rep.max_deviation = (a - phase * b).cwiseAbs().maxCoeff();
    rep.equivalent = rep.max_deviation <= tol;
    rep.global_phase = rep.equivalent ? phase : std::complex<double>{1.0, 0.0};
    return rep;
}

EquivalenceReport equivalent_up_to_phase(const Circuit& a, const Circuit& b, double tol) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ValidationError("circuits have different widths");
    }
    return compare_up_to_phase(unitary_of(a), unitary_of(b), tol);
}

EquivalenceReport equivalent_on_inputs(const Circuit& a, const Circuit& b, std::uint64_t mask, std::uint64_t value,
                                       double tol) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ValidationError("circuits have different widths");
    }
    return compare_up_to_phase(columns_of(a, mask, value), columns_of(b, mask, value), tol);
}

}  // namespace cliffrw::sim
