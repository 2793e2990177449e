#pragma once

// Data-parallel inner loops of the simulators.
//
// Every kernel has a scalar reference implementation (namespace `scalar`) and,
// on x86-64 builds with CLIFFRW_HAVE_AVX2, an AVX2 variant (namespace `avx2`).
// The public entry points dispatch through a table chosen once at startup
// from CPUID; `set_simd_level` lets tests pin a level to check both paths
// against each other.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

namespace cliffrw::sim::kernels {

using cplx = std::complex<double>;

struct Mat2 {
    cplx m00, m01, m10, m11;
};

enum class SimdLevel { Scalar = 0, Avx2 = 1 };

[[nodiscard]] std::string_view to_string(SimdLevel level) noexcept;
/// Best level supported by both the build and the running CPU.
[[nodiscard]] SimdLevel detected_simd_level() noexcept;
[[nodiscard]] SimdLevel active_simd_level() noexcept;
/// Selects a level; requests above the detected level are clamped. Returns the level in effect.
SimdLevel set_simd_level(SimdLevel level) noexcept;

/// RAII pin of the SIMD level, restoring the previous one on exit.
class ScopedSimdLevel {
public:
    explicit ScopedSimdLevel(SimdLevel level) : previous_(active_simd_level()) { set_simd_level(level); }
    ~ScopedSimdLevel() { set_simd_level(previous_); }
    ScopedSimdLevel(const ScopedSimdLevel&) = delete;
    ScopedSimdLevel& operator=(const ScopedSimdLevel&) = delete;

private:
    SimdLevel previous_;
};

// Statevector kernels. Amplitude index bit k is qubit k. The gate acts only on
// basis indices i with (i & ctrl_mask) == ctrl_value.

void apply_1q(std::span<cplx> amps, int target, const Mat2& m, std::uint64_t ctrl_mask, std::uint64_t ctrl_value);
void apply_x(std::span<cplx> amps, int target, std::uint64_t ctrl_mask, std::uint64_t ctrl_value);
/// Negates amplitudes whose index satisfies (i & mask) == value.
void apply_phase_flip(std::span<cplx> amps, std::uint64_t mask, std::uint64_t value);
void apply_swap(std::span<cplx> amps, int a, int b);

// Tableau row kernels over bit-packed Pauli rows.

void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
/// Sum of the per-qubit phase exponents (in units of i) picked up when the
/// Pauli (x1, z1) is multiplied onto (x2, z2).
[[nodiscard]] std::int64_t pauli_product_phase(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                                               std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2);

namespace scalar {
void apply_1q(std::span<cplx> amps, int target, const Mat2& m, std::uint64_t ctrl_mask, std::uint64_t ctrl_value);
void apply_x(std::span<cplx> amps, int target, std::uint64_t ctrl_mask, std::uint64_t ctrl_value);
void apply_phase_flip(std::span<cplx> amps, std::uint64_t mask, std::uint64_t value);
void apply_swap(std::span<cplx> amps, int a, int b);
void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
std::int64_t pauli_product_phase(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                                 std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2);
}  // namespace scalar

#if defined(CLIFFRW_HAVE_AVX2)
namespace avx2 {
void apply_1q(std::span<cplx> amps, int target, const Mat2& m, std::uint64_t ctrl_mask, std::uint64_t ctrl_value);
void apply_x(std::span<cplx> amps, int target, std::uint64_t ctrl_mask, std::uint64_t ctrl_value);
void apply_phase_flip(std::span<cplx> amps, std::uint64_t mask, std::uint64_t value);
void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
std::int64_t pauli_product_phase(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                                 std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2);
}  // namespace avx2
#endif

}  // namespace cliffrw::sim::kernels
