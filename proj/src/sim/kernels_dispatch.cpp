#include <atomic>

#include "cliffrw/sim/kernels.hpp"

namespace cliffrw::sim::kernels {
namespace {

struct KernelTable {
    void (*apply_1q)(std::span<cplx>, int, const Mat2&, std::uint64_t, std::uint64_t);
    void (*apply_x)(std::span<cplx>, int, std::uint64_t, std::uint64_t);
    void (*apply_phase_flip)(std::span<cplx>, std::uint64_t, std::uint64_t);
    void (*apply_swap)(std::span<cplx>, int, int);
    void (*xor_words)(std::span<std::uint64_t>, std::span<const std::uint64_t>);
    std::int64_t (*pauli_product_phase)(std::span<const std::uint64_t>, std::span<const std::uint64_t>,
                                        std::span<const std::uint64_t>, std::span<const std::uint64_t>);
};

constexpr KernelTable kScalarTable{
    scalar::apply_1q,  scalar::apply_x,   scalar::apply_phase_flip,
    scalar::apply_swap, scalar::xor_words, scalar::pauli_product_phase,
};

#if defined(CLIFFRW_HAVE_AVX2)
constexpr KernelTable kAvx2Table{
    avx2::apply_1q,     avx2::apply_x,   avx2::apply_phase_flip,
    scalar::apply_swap, avx2::xor_words, avx2::pauli_product_phase,
};
#endif

SimdLevel detect() noexcept {
#if defined(CLIFFRW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) {
        return SimdLevel::Avx2;
    }
#endif
    return SimdLevel::Scalar;
}

const SimdLevel kDetected = detect();
std::atomic<const KernelTable*> g_table{nullptr};

const KernelTable* table_for(SimdLevel level) noexcept {
#if defined(CLIFFRW_HAVE_AVX2)
    if (level == SimdLevel::Avx2) {
        return &kAvx2Table;
    }
#endif
    (void)level;
    return &kScalarTable;
}

const KernelTable& table() noexcept {
    const KernelTable* t = g_table.load(std::memory_order_acquire);
    if (t == nullptr) {
        t = table_for(kDetected);
        g_table.store(t, std::memory_order_release);
    }
    return *t;
}

}  // namespace

std::string_view to_string(SimdLevel level) noexcept {
    return level == SimdLevel::Avx2 ? "avx2" : "scalar";
}

SimdLevel detected_simd_level() noexcept { return kDetected; }

SimdLevel active_simd_level() noexcept {
    return &table() == table_for(SimdLevel::Scalar) ? SimdLevel::Scalar : SimdLevel::Avx2;
}

SimdLevel set_simd_level(SimdLevel level) noexcept {
    if (static_cast<int>(level) > static_cast<int>(kDetected)) {
        level = kDetected;
    }
    g_table.store(table_for(level), std::memory_order_release);
    return level;
}

void apply_1q(std::span<cplx> amps, int target, const Mat2& m, std::uint64_t ctrl_mask, std::uint64_t ctrl_value) {
    table().apply_1q(amps, target, m, ctrl_mask, ctrl_value);
}

void apply_x(std::span<cplx> amps, int target, std::uint64_t ctrl_mask, std::uint64_t ctrl_value) {
    table().apply_x(amps, target, ctrl_mask, ctrl_value);
}

void apply_phase_flip(std::span<cplx> amps, std::uint64_t mask, std::uint64_t value) {
    table().apply_phase_flip(amps, mask, value);
}

void apply_swap(std::span<cplx> amps, int a, int b) { table().apply_swap(amps, a, b); }

void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) { table().xor_words(dst, src); }

std::int64_t pauli_product_phase(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                                 std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2) {
    return table().pauli_product_phase(x1, z1, x2, z2);
}

}  // namespace cliffrw::sim::kernels
