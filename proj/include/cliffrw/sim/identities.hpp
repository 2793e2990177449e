#pragma once

#include <complex>
#include <string>
#include <vector>

namespace cliffrw::sim {

inline constexpr double kIdentityTolerance = 1e-12;

struct IdentityCheck {
    std::string name;
    double deviation = 0.0;
    bool holds = false;
};

/// Parameters of  HH.CZ.HH = phase * RXX(rxx) . (RX(rx0) (x) RX(rx1))  found by search.
/// RX(t) = exp(-i t X / 2) and RXX(t) = exp(-i t X(x)X / 2).
struct RxxFactorization {
    double rxx_angle = 0.0;
    double rx0_angle = 0.0;
    double rx1_angle = 0.0;
    std::complex<double> global_phase{1.0, 0.0};
    double deviation = 0.0;
    bool found = false;
};

/// Grid search over multiples of pi/4 for the RXX factorization of the
/// Hadamard-conjugated CZ.
[[nodiscard]] RxxFactorization derive_rxx_factorization();

/// Matrix-level checks of the basis-rotation identities (single-qubit
/// conjugations, the CX/CZ reversal chain and the two-qubit parity frames),
/// each with its max-entry deviation.
[[nodiscard]] std::vector<IdentityCheck> check_parity_identities();

}  // namespace cliffrw::sim
