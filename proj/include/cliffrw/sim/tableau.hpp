#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliffrw/circuit.hpp"

namespace cliffrw::sim {

inline constexpr int kMaxTableauQubits = 2000;

/// True when every unitary gate is in the tableau gate set (at most one
/// control on X- and phase-family gates).
[[nodiscard]] bool is_clifford(const Circuit& c) noexcept;
[[nodiscard]] bool is_clifford(const Gate& g) noexcept;

/// Stabilizer state in destabilizer/stabilizer form (Aaronson-Gottesman).
/// Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers; each row is a
/// Pauli string packed as X and Z bit planes plus a sign bit.
class Tableau {
public:
    explicit Tableau(int num_qubits, std::uint64_t basis_index = 0);
    /// Basis state from a string written q_{n-1} ... q0.
    static Tableau from_basis(int num_qubits, std::string_view bits);

    [[nodiscard]] int num_qubits() const noexcept { return n_; }

    [[nodiscard]] bool x(int row, int q) const noexcept { return (xs_[row * words_ + q / 64] >> (q % 64)) & 1U; }
    [[nodiscard]] bool z(int row, int q) const noexcept { return (zs_[row * words_ + q / 64] >> (q % 64)) & 1U; }
    [[nodiscard]] bool sign(int row) const noexcept { return signs_[row] != 0; }

    /// Applies a Clifford gate; barriers are ignored. Throws NonCliffordError
    /// for gates outside the tableau gate set and ValidationError for MEASURE.
    void apply(const Gate& gate);

    void h(int q);
    void s(int q);
    void sdg(int q);
    void x_gate(int q);
    void y_gate(int q);
    void z_gate(int q);
    void cx(int c, int t);
    void cz(int a, int b);
    void swap(int a, int b);

    /// Outcome forced by the state, or -1 when it is uniformly random.
    [[nodiscard]] int deterministic_outcome(int q) const;
    /// Measures in the Z basis. A random outcome is `forced` when given
    /// (0 or 1), otherwise drawn from `rng`.
    int measure(int q, std::mt19937_64* rng, int forced = -1);

    /// Stabilizer generators as signed Pauli strings, character k is qubit k
    /// (e.g. "+XX"). Raw generator order as maintained by the updates.
    [[nodiscard]] std::vector<std::string> stabilizers() const;
    /// Reduced row-echelon generators; equal states give equal lists.
    [[nodiscard]] std::vector<std::string> canonical_stabilizers() const;

    /// Checks that the stabilizers commute pairwise and that destabilizer i
    /// anticommutes exactly with stabilizer i.
    [[nodiscard]] bool is_consistent() const;

private:
    std::span<std::uint64_t> xrow(int r) { return {xs_.data() + r * words_, static_cast<std::size_t>(words_)}; }
    std::span<std::uint64_t> zrow(int r) { return {zs_.data() + r * words_, static_cast<std::size_t>(words_)}; }
    [[nodiscard]] std::span<const std::uint64_t> xrow(int r) const {
        return {xs_.data() + r * words_, static_cast<std::size_t>(words_)};
    }
    [[nodiscard]] std::span<const std::uint64_t> zrow(int r) const {
        return {zs_.data() + r * words_, static_cast<std::size_t>(words_)};
    }
    void set_x(int row, int q, bool v);
    void set_z(int row, int q, bool v);
    /// row h <- row i * row h, with the sign tracked exactly.
    void rowsum(int h, int i);
    void copy_row(int dst, int src);
    void clear_row(int r);
    [[nodiscard]] std::string row_string(int r) const;
    [[nodiscard]] bool rows_commute(int a, int b) const;

    int n_;
    int words_;
    // 2n rows plus one scratch row.
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
    std::vector<std::uint8_t> signs_;
};

/// Runs the unitary part of `c` on a basis input. MEASURE gates are skipped.
[[nodiscard]] Tableau tableau_run(const Circuit& c, std::string_view input = {});

}  // namespace cliffrw::sim
