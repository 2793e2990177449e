#include "cliffrw/sim/identities.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "cliffrw/sim/unitary.hpp"

namespace cliffrw::sim {
namespace {

using cplx = std::complex<double>;
using M = Eigen::MatrixXcd;

// Two-qubit matrices are kron(first, second) with the first factor on the
// higher basis bit.
M kron(const M& a, const M& b) { return Eigen::kroneckerProduct(a, b).eval(); }

M mat2(cplx a, cplx b, cplx c, cplx d) {
    M m(2, 2);
    m << a, b, c, d;
    return m;
}

const M& I2() { static const M m = M::Identity(2, 2); return m; }
const M& X() { static const M m = mat2(0, 1, 1, 0); return m; }
const M& Z() { static const M m = mat2(1, 0, 0, -1); return m; }
const M& H() {
    static const M m = mat2(1, 1, 1, -1) / std::sqrt(2.0);
    return m;
}
const M& P0() { static const M m = mat2(1, 0, 0, 0); return m; }
const M& P1() { static const M m = mat2(0, 0, 0, 1); return m; }

// CX with the control on the first factor.
M cx_first_controls() { return kron(P0(), I2()) + kron(P1(), X()); }
M cx_second_controls() { return kron(I2(), P0()) + kron(X(), P1()); }
M cz() {
    M m = M::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

M rx(double t) { return std::cos(t / 2) * I2() - cplx{0, 1} * std::sin(t / 2) * X(); }
M rxx(double t) { return std::cos(t / 2) * M::Identity(4, 4) - cplx{0, 1} * std::sin(t / 2) * kron(X(), X()); }

M conj(const M& u, const M& v) { return u * v * u; }

IdentityCheck exact(std::string name, const M& lhs, const M& rhs) {
    const double dev = (lhs - rhs).cwiseAbs().maxCoeff();
    return {std::move(name), dev, dev <= kIdentityTolerance};
}

M factorized(const RxxFactorization& f) { return f.global_phase * rxx(f.rxx_angle) * kron(rx(f.rx1_angle), rx(f.rx0_angle)); }

}  // namespace

RxxFactorization derive_rxx_factorization() {
    const M target = conj(kron(H(), H()), cz());
    constexpr double q = std::numbers::pi / 4;
    RxxFactorization best;
    best.deviation = std::numeric_limits<double>::infinity();
    for (int a = -3; a <= 4; ++a) {
        for (int b = -3; b <= 4; ++b) {
            for (int c = -3; c <= 4; ++c) {
                const M candidate = rxx(a * q) * kron(rx(c * q), rx(b * q));
                const auto rep = compare_up_to_phase(target, candidate, kIdentityTolerance);
                if (rep.equivalent && !best.found) {
                    best = {a * q, b * q, c * q, rep.global_phase, rep.max_deviation, true};
                } else if (!best.found && rep.max_deviation < best.deviation) {
                    best.deviation = rep.max_deviation;
                }
            }
        }
    }
    return best;
}

std::vector<IdentityCheck> check_parity_identities() {
    const M hi = kron(H(), I2());
    const M ih = kron(I2(), H());
    const M hh = kron(H(), H());
    const M zz = kron(Z(), Z());

    std::vector<IdentityCheck> out;
    out.push_back(exact("H Z H = X", conj(H(), Z()), X()));
    out.push_back(exact("H X H = Z", conj(H(), X()), Z()));
    out.push_back(exact("H H = I", H() * H(), I2()));
    out.push_back(exact("(I(x)H) CX[c->t] (I(x)H) = CZ", conj(ih, cx_first_controls()), cz()));
    out.push_back(exact("(H(x)I) CX[c->t] (H(x)I) = (H(x)H) CZ (H(x)H)", conj(hi, cx_first_controls()), conj(hh, cz())));
    out.push_back(
        exact("(H(x)H) CZ (H(x)H) = (I(x)H) CX[t->c] (I(x)H)", conj(hh, cz()), conj(ih, cx_second_controls())));
    out.push_back(exact("(H(x)H) CX[c->t] (H(x)H) = CX[t->c]", conj(hh, cx_first_controls()), cx_second_controls()));
    out.push_back(exact("(I(x)H) ZX (I(x)H) = ZZ", conj(ih, kron(Z(), X())), zz));
    out.push_back(exact("(H(x)I) XZ (H(x)I) = ZZ", conj(hi, kron(X(), Z())), zz));
    out.push_back(exact("(H(x)H) XX (H(x)H) = ZZ", conj(hh, kron(X(), X())), zz));
    out.push_back(exact("ZX parity gate: (I(x)H) CX[c->t] (I(x)H) = CZ", conj(ih, cx_first_controls()), cz()));
    out.push_back(exact("XZ parity gate: (H(x)I) CX[t->c] (H(x)I) = CZ", conj(hi, cx_second_controls()), cz()));

    const RxxFactorization f = derive_rxx_factorization();
    if (f.found) {
        out.push_back(exact("(H(x)H) CZ (H(x)H) = phase RXX RX(x)RX", conj(hh, cz()), factorized(f)));
        const M hhh = kron(H(), hh);
        const M oracle = kron(Z(), cz());
        out.push_back(exact("H^3 (CZ01 Z2) H^3 = phase (X2 (x) RXX01 RX0 RX1)", conj(hhh, oracle),
                            kron(X(), factorized(f))));
    } else {
        out.push_back({"(H(x)H) CZ (H(x)H) = phase RXX RX(x)RX", f.deviation, false});
    }
    return out;
}

}  // namespace cliffrw::sim
