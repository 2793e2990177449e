#include <bit>
#include <utility>

#include "cliffrw/sim/kernels.hpp"

namespace cliffrw::sim::kernels::scalar {

void apply_1q(std::span<cplx> amps, int target, const Mat2& m, std::uint64_t ctrl_mask, std::uint64_t ctrl_value) {
    const std::uint64_t stride = std::uint64_t{1} << target;
    const std::uint64_t n = amps.size();
    for (std::uint64_t base = 0; base < n; base += 2 * stride) {
        for (std::uint64_t k = 0; k < stride; ++k) {
            const std::uint64_t i0 = base + k;
            if ((i0 & ctrl_mask) != ctrl_value) {
                continue;
            }
            const std::uint64_t i1 = i0 + stride;
            const cplx a0 = amps[i0];
            const cplx a1 = amps[i1];
            amps[i0] = m.m00 * a0 + m.m01 * a1;
            amps[i1] = m.m10 * a0 + m.m11 * a1;
        }
    }
}

void apply_x(std::span<cplx> amps, int target, std::uint64_t ctrl_mask, std::uint64_t ctrl_value) {
    const std::uint64_t stride = std::uint64_t{1} << target;
    const std::uint64_t n = amps.size();
    for (std::uint64_t base = 0; base < n; base += 2 * stride) {
        for (std::uint64_t k = 0; k < stride; ++k) {
            const std::uint64_t i0 = base + k;
            if ((i0 & ctrl_mask) == ctrl_value) {
                std::swap(amps[i0], amps[i0 + stride]);
            }
        }
    }
}

void apply_phase_flip(std::span<cplx> amps, std::uint64_t mask, std::uint64_t value) {
    const std::uint64_t n = amps.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & mask) == value) {
            amps[i] = -amps[i];
        }
    }
}

void apply_swap(std::span<cplx> amps, int a, int b) {
    const std::uint64_t ba = std::uint64_t{1} << a;
    const std::uint64_t bb = std::uint64_t{1} << b;
    const std::uint64_t n = amps.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        // Visit each (a=1, b=0) index once and swap with its (a=0, b=1) partner.
        if ((i & ba) && !(i & bb)) {
            std::swap(amps[i], amps[(i ^ ba) | bb]);
        }
    }
}

void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    for (std::size_t w = 0; w < dst.size(); ++w) {
        dst[w] ^= src[w];
    }
}

std::int64_t pauli_product_phase(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                                 std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2) {
    std::int64_t total = 0;
    for (std::size_t w = 0; w < x1.size(); ++w) {
        const std::uint64_t y1 = x1[w] & z1[w];
        const std::uint64_t xo = x1[w] & ~z1[w];
        const std::uint64_t zo = ~x1[w] & z1[w];
        const std::uint64_t X2 = x2[w] & ~z2[w];
        const std::uint64_t Y2 = x2[w] & z2[w];
        const std::uint64_t Z2 = ~x2[w] & z2[w];
        const std::uint64_t plus = (y1 & Z2) | (xo & Y2) | (zo & X2);
        const std::uint64_t minus = (y1 & X2) | (xo & Z2) | (zo & Y2);
        total += std::popcount(plus) - std::popcount(minus);
    }
    return total;
}

}  // namespace cliffrw::sim::kernels::scalar
