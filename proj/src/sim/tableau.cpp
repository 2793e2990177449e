#include "cliffrw/sim/tableau.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "cliffrw/error.hpp"
#include "cliffrw/sim/kernels.hpp"

namespace cliffrw::sim {
namespace {

struct PauliRow {
    std::vector<std::uint64_t> x, z;
    bool sign = false;
};

// Left-multiplies `dst` by `src`; both must commute so the result stays Hermitian.
void multiply_into(PauliRow& dst, const PauliRow& src) {
    const std::int64_t phase = 2 * static_cast<std::int64_t>(dst.sign) + 2 * static_cast<std::int64_t>(src.sign) +
                               kernels::pauli_product_phase(src.x, src.z, dst.x, dst.z);
    dst.sign = (((phase % 4) + 4) % 4) == 2;
    kernels::xor_words(dst.x, src.x);
    kernels::xor_words(dst.z, src.z);
}

bool get(const std::vector<std::uint64_t>& v, int q) { return (v[q / 64] >> (q % 64)) & 1U; }

std::string pauli_string(const PauliRow& r, int n) {
    std::string s(1, r.sign ? '-' : '+');
    for (int q = 0; q < n; ++q) {
        const bool xq = get(r.x, q);
        const bool zq = get(r.z, q);
        s += xq ? (zq ? 'Y' : 'X') : (zq ? 'Z' : 'I');
    }
    return s;
}

}  // namespace

bool is_clifford(const Gate& g) noexcept {
    switch (g.kind()) {
        case GateKind::CCX:
        case GateKind::CCZ:
        case GateKind::MCX:
        case GateKind::MCZ: return false;
        default: return true;
    }
}

bool is_clifford(const Circuit& c) noexcept {
    return std::all_of(c.gates().begin(), c.gates().end(), [](const Gate& g) { return is_clifford(g); });
}

Tableau::Tableau(int num_qubits, std::uint64_t basis_index) : n_(num_qubits), words_((num_qubits + 63) / 64) {
    if (num_qubits < 1) {
        throw ValidationError("tableau needs at least one qubit");
    }
    if (num_qubits > kMaxTableauQubits) {
        throw SizeLimitError("tableau simulation is limited to " + std::to_string(kMaxTableauQubits) + " qubits");
    }
    const std::size_t rows = 2 * static_cast<std::size_t>(n_) + 1;
    xs_.assign(rows * words_, 0);
    zs_.assign(rows * words_, 0);
    signs_.assign(rows, 0);
    for (int q = 0; q < n_; ++q) {
        set_x(q, q, true);
        set_z(n_ + q, q, true);
    }
    for (int q = 0; q < n_ && q < 64; ++q) {
        if ((basis_index >> q) & 1U) {
            x_gate(q);
        }
    }
}

Tableau Tableau::from_basis(int num_qubits, std::string_view bits) {
    Tableau t(num_qubits);
    if (bits.empty()) {
        return t;
    }
    if (static_cast<int>(bits.size()) != num_qubits) {
        throw ValidationError("basis input length does not match the qubit count");
    }
    for (int q = 0; q < num_qubits; ++q) {
        const char ch = bits[bits.size() - 1 - q];
        if (ch == '1') {
            t.x_gate(q);
        } else if (ch != '0') {
            throw ValidationError(std::string("basis input may only contain 0 and 1, got '") + ch + "'");
        }
    }
    return t;
}

void Tableau::set_x(int row, int q, bool v) {
    auto& w = xs_[row * words_ + q / 64];
    const std::uint64_t m = std::uint64_t{1} << (q % 64);
    w = v ? (w | m) : (w & ~m);
}

void Tableau::set_z(int row, int q, bool v) {
    auto& w = zs_[row * words_ + q / 64];
    const std::uint64_t m = std::uint64_t{1} << (q % 64);
    w = v ? (w | m) : (w & ~m);
}

void Tableau::h(int q) {
    for (int r = 0; r < 2 * n_; ++r) {
        const bool xr = x(r, q), zr = z(r, q);
        signs_[r] ^= static_cast<std::uint8_t>(xr && zr);
        set_x(r, q, zr);
        set_z(r, q, xr);
    }
}

void Tableau::s(int q) {
    for (int r = 0; r < 2 * n_; ++r) {
        const bool xr = x(r, q), zr = z(r, q);
        signs_[r] ^= static_cast<std::uint8_t>(xr && zr);
        set_z(r, q, zr != xr);
    }
}

void Tableau::sdg(int q) {
    for (int r = 0; r < 2 * n_; ++r) {
        const bool xr = x(r, q), zr = z(r, q);
        signs_[r] ^= static_cast<std::uint8_t>(xr && !zr);
        set_z(r, q, zr != xr);
    }
}

void Tableau::x_gate(int q) {
    for (int r = 0; r < 2 * n_; ++r) {
        signs_[r] ^= static_cast<std::uint8_t>(z(r, q));
    }
}

void Tableau::y_gate(int q) {
    for (int r = 0; r < 2 * n_; ++r) {
        signs_[r] ^= static_cast<std::uint8_t>(x(r, q) != z(r, q));
    }
}

void Tableau::z_gate(int q) {
    for (int r = 0; r < 2 * n_; ++r) {
        signs_[r] ^= static_cast<std::uint8_t>(x(r, q));
    }
}

void Tableau::cx(int c, int t) {
    for (int r = 0; r < 2 * n_; ++r) {
        const bool xc = x(r, c), zc = z(r, c), xt = x(r, t), zt = z(r, t);
        signs_[r] ^= static_cast<std::uint8_t>(xc && zt && (xt == zc));
        set_x(r, t, xt != xc);
        set_z(r, c, zc != zt);
    }
}

void Tableau::cz(int a, int b) {
    h(b);
    cx(a, b);
    h(b);
}

void Tableau::swap(int a, int b) {
    for (int r = 0; r < 2 * n_; ++r) {
        const bool xa = x(r, a), za = z(r, a);
        set_x(r, a, x(r, b));
        set_z(r, a, z(r, b));
        set_x(r, b, xa);
        set_z(r, b, za);
    }
}

void Tableau::apply(const Gate& g) {
    if (g.is_barrier()) {
        return;
    }
    if (g.is_measure()) {
        throw ValidationError("MEASURE is not a unitary tableau update");
    }
    if (!is_clifford(g)) {
        throw NonCliffordError("gate '" + g.to_cqc() + "' is not Clifford");
    }
    for (int w : g.wires()) {
        if (w >= n_) {
            throw ValidationError("gate wire out of range for tableau");
        }
    }
    const int t = g.targets().front();
    switch (g.kind()) {
        case GateKind::I: return;
        case GateKind::X: x_gate(t); return;
        case GateKind::Y: y_gate(t); return;
        case GateKind::Z: z_gate(t); return;
        case GateKind::H: h(t); return;
        case GateKind::S: s(t); return;
        case GateKind::Sdg: sdg(t); return;
        case GateKind::SWAP: swap(g.targets()[0], g.targets()[1]); return;
        default: break;
    }
    // CX or CZ, possibly with an open control: conjugate by X on that wire.
    const Control c = g.controls().front();
    if (c.open) x_gate(c.wire);
    if (g.kind() == GateKind::CX) {
        cx(c.wire, t);
    } else {
        cz(c.wire, t);
    }
    if (c.open) x_gate(c.wire);
}

void Tableau::rowsum(int h, int i) {
    const std::int64_t phase = 2 * static_cast<std::int64_t>(signs_[h]) + 2 * static_cast<std::int64_t>(signs_[i]) +
                               kernels::pauli_product_phase(xrow(i), zrow(i), xrow(h), zrow(h));
    signs_[h] = static_cast<std::uint8_t>((((phase % 4) + 4) % 4) == 2);
    kernels::xor_words(xrow(h), xrow(i));
    kernels::xor_words(zrow(h), zrow(i));
}

void Tableau::copy_row(int dst, int src) {
    std::copy(xrow(src).begin(), xrow(src).end(), xrow(dst).begin());
    std::copy(zrow(src).begin(), zrow(src).end(), zrow(dst).begin());
    signs_[dst] = signs_[src];
}

void Tableau::clear_row(int r) {
    std::fill(xrow(r).begin(), xrow(r).end(), 0);
    std::fill(zrow(r).begin(), zrow(r).end(), 0);
    signs_[r] = 0;
}

int Tableau::deterministic_outcome(int q) const {
    for (int p = n_; p < 2 * n_; ++p) {
        if (x(p, q)) {
            return -1;
        }
    }
    PauliRow acc{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0), false};
    for (int i = 0; i < n_; ++i) {
        if (x(i, q)) {
            const int s = i + n_;
            PauliRow row{{xrow(s).begin(), xrow(s).end()}, {zrow(s).begin(), zrow(s).end()}, signs_[s] != 0};
            multiply_into(acc, row);
        }
    }
    return acc.sign ? 1 : 0;
}

int Tableau::measure(int q, std::mt19937_64* rng, int forced) {
    int p = -1;
    for (int r = n_; r < 2 * n_; ++r) {
        if (x(r, q)) {
            p = r;
            break;
        }
    }
    if (p < 0) {
        const int scratch = 2 * n_;
        clear_row(scratch);
        for (int i = 0; i < n_; ++i) {
            if (x(i, q)) {
                rowsum(scratch, i + n_);
            }
        }
        return signs_[scratch] ? 1 : 0;
    }
    int outcome = forced;
    if (outcome < 0) {
        if (rng == nullptr) {
            throw ValidationError("random measurement outcome needs a generator");
        }
        outcome = static_cast<int>((*rng)() >> 63);
    }
    for (int r = 0; r < 2 * n_; ++r) {
        if (r != p && x(r, q)) {
            rowsum(r, p);
        }
    }
    copy_row(p - n_, p);
    clear_row(p);
    set_z(p, q, true);
    signs_[p] = static_cast<std::uint8_t>(outcome);
    return outcome;
}

std::string Tableau::row_string(int r) const {
    PauliRow row{{xrow(r).begin(), xrow(r).end()}, {zrow(r).begin(), zrow(r).end()}, signs_[r] != 0};
    return pauli_string(row, n_);
}

std::vector<std::string> Tableau::stabilizers() const {
    std::vector<std::string> out;
    for (int r = n_; r < 2 * n_; ++r) {
        out.push_back(row_string(r));
    }
    return out;
}

std::vector<std::string> Tableau::canonical_stabilizers() const {
    std::vector<PauliRow> rows;
    for (int r = n_; r < 2 * n_; ++r) {
        rows.push_back({{xrow(r).begin(), xrow(r).end()}, {zrow(r).begin(), zrow(r).end()}, signs_[r] != 0});
    }
    // Reduced row echelon form over the column order x_0..x_{n-1}, z_0..z_{n-1}.
    std::size_t next = 0;
    for (int col = 0; col < 2 * n_ && next < rows.size(); ++col) {
        const bool xcol = col < n_;
        const int q = xcol ? col : col - n_;
        auto has = [&](const PauliRow& r) { return xcol ? get(r.x, q) : get(r.z, q); };
        std::size_t pivot = next;
        while (pivot < rows.size() && !has(rows[pivot])) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != next && has(rows[r])) {
                multiply_into(rows[r], rows[next]);
            }
        }
        ++next;
    }
    std::vector<std::string> out;
    for (const auto& r : rows) {
        out.push_back(pauli_string(r, n_));
    }
    return out;
}

bool Tableau::rows_commute(int a, int b) const {
    int parity = 0;
    for (int w = 0; w < words_; ++w) {
        parity ^= std::popcount((xrow(a)[w] & zrow(b)[w]) ^ (zrow(a)[w] & xrow(b)[w])) & 1;
    }
    return parity == 0;
}

bool Tableau::is_consistent() const {
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (!rows_commute(n_ + i, n_ + j) || !rows_commute(i, j)) {
                return false;
            }
            if (rows_commute(i, n_ + j) != (i != j)) {
                return false;
            }
        }
    }
    return true;
}

Tableau tableau_run(const Circuit& c, std::string_view input) {
    Tableau t = Tableau::from_basis(c.num_qubits(), input);
    for (const auto& g : c.gates()) {
        if (!g.is_measure()) {
            t.apply(g);
        }
    }
    return t;
}

}  // namespace cliffrw::sim
