// AVX2 variants. This translation unit is the only one compiled with -mavx2;
// its functions are reached solely through the runtime dispatch table.

#include <immintrin.h>

#include <bit>

#include "cliffrw/sim/kernels.hpp"

namespace cliffrw::sim::kernels::avx2 {
namespace {

// (m * a) for a packed pair of complex numbers [re0, im0, re1, im1].
inline __m256d cmul(__m256d mr, __m256d mi, __m256d a) {
    const __m256d swapped = _mm256_permute_pd(a, 0b0101);
    return _mm256_addsub_pd(_mm256_mul_pd(mr, a), _mm256_mul_pd(mi, swapped));
}

inline double* raw(std::span<cplx> amps, std::uint64_t i) {
    return reinterpret_cast<double*>(amps.data() + i);
}

}  // namespace

void apply_1q(std::span<cplx> amps, int target, const Mat2& m, std::uint64_t ctrl_mask, std::uint64_t ctrl_value) {
    // Pairs of adjacent amplitudes share every index bit except bit 0, so the
    // two lanes agree on the control condition only when bit 0 is neither the
    // target nor a control.
    if (target == 0 || (ctrl_mask & 1U) || amps.size() < 4) {
        scalar::apply_1q(amps, target, m, ctrl_mask, ctrl_value);
        return;
    }
    const __m256d m00r = _mm256_set1_pd(m.m00.real()), m00i = _mm256_set1_pd(m.m00.imag());
    const __m256d m01r = _mm256_set1_pd(m.m01.real()), m01i = _mm256_set1_pd(m.m01.imag());
    const __m256d m10r = _mm256_set1_pd(m.m10.real()), m10i = _mm256_set1_pd(m.m10.imag());
    const __m256d m11r = _mm256_set1_pd(m.m11.real()), m11i = _mm256_set1_pd(m.m11.imag());

    const std::uint64_t stride = std::uint64_t{1} << target;
    const std::uint64_t n = amps.size();
    for (std::uint64_t base = 0; base < n; base += 2 * stride) {
        for (std::uint64_t k = 0; k < stride; k += 2) {
            const std::uint64_t i0 = base + k;
            if ((i0 & ctrl_mask) != ctrl_value) {
                continue;
            }
            double* p0 = raw(amps, i0);
            double* p1 = raw(amps, i0 + stride);
            const __m256d a0 = _mm256_loadu_pd(p0);
            const __m256d a1 = _mm256_loadu_pd(p1);
            const __m256d r0 = _mm256_add_pd(cmul(m00r, m00i, a0), cmul(m01r, m01i, a1));
            const __m256d r1 = _mm256_add_pd(cmul(m10r, m10i, a0), cmul(m11r, m11i, a1));
            _mm256_storeu_pd(p0, r0);
            _mm256_storeu_pd(p1, r1);
        }
    }
}

void apply_x(std::span<cplx> amps, int target, std::uint64_t ctrl_mask, std::uint64_t ctrl_value) {
    if (target == 0 || (ctrl_mask & 1U) || amps.size() < 4) {
        scalar::apply_x(amps, target, ctrl_mask, ctrl_value);
        return;
    }
    const std::uint64_t stride = std::uint64_t{1} << target;
    const std::uint64_t n = amps.size();
    for (std::uint64_t base = 0; base < n; base += 2 * stride) {
        for (std::uint64_t k = 0; k < stride; k += 2) {
            const std::uint64_t i0 = base + k;
            if ((i0 & ctrl_mask) != ctrl_value) {
                continue;
            }
            double* p0 = raw(amps, i0);
            double* p1 = raw(amps, i0 + stride);
            const __m256d a0 = _mm256_loadu_pd(p0);
            const __m256d a1 = _mm256_loadu_pd(p1);
            _mm256_storeu_pd(p0, a1);
            _mm256_storeu_pd(p1, a0);
        }
    }
}

void apply_phase_flip(std::span<cplx> amps, std::uint64_t mask, std::uint64_t value) {
    if (amps.size() < 2) {
        scalar::apply_phase_flip(amps, mask, value);
        return;
    }
    const __m256d sign_lo = _mm256_set_pd(0.0, 0.0, -0.0, -0.0);
    const __m256d sign_hi = _mm256_set_pd(-0.0, -0.0, 0.0, 0.0);
    const std::uint64_t n = amps.size();
    for (std::uint64_t i = 0; i < n; i += 2) {
        const bool lo = (i & mask) == value;
        const bool hi = ((i + 1) & mask) == value;
        if (!lo && !hi) {
            continue;
        }
        __m256d sign = _mm256_setzero_pd();
        if (lo) sign = _mm256_or_pd(sign, sign_lo);
        if (hi) sign = _mm256_or_pd(sign, sign_hi);
        double* p = raw(amps, i);
        _mm256_storeu_pd(p, _mm256_xor_pd(_mm256_loadu_pd(p), sign));
    }
}

void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    std::size_t w = 0;
    for (; w + 4 <= dst.size(); w += 4) {
        auto* d = reinterpret_cast<__m256i*>(dst.data() + w);
        const auto* s = reinterpret_cast<const __m256i*>(src.data() + w);
        _mm256_storeu_si256(d, _mm256_xor_si256(_mm256_loadu_si256(d), _mm256_loadu_si256(s)));
    }
    for (; w < dst.size(); ++w) {
        dst[w] ^= src[w];
    }
}

std::int64_t pauli_product_phase(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                                 std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2) {
    std::int64_t total = 0;
    std::size_t w = 0;
    alignas(32) std::uint64_t plus_words[4];
    alignas(32) std::uint64_t minus_words[4];
    for (; w + 4 <= x1.size(); w += 4) {
        auto load = [w](std::span<const std::uint64_t> v) {
            return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v.data() + w));
        };
        const __m256i ax = load(x1), az = load(z1), bx = load(x2), bz = load(z2);
        const __m256i y1 = _mm256_and_si256(ax, az);
        const __m256i xo = _mm256_andnot_si256(az, ax);
        const __m256i zo = _mm256_andnot_si256(ax, az);
        const __m256i X2 = _mm256_andnot_si256(bz, bx);
        const __m256i Y2 = _mm256_and_si256(bx, bz);
        const __m256i Z2 = _mm256_andnot_si256(bx, bz);
        const __m256i plus = _mm256_or_si256(_mm256_or_si256(_mm256_and_si256(y1, Z2), _mm256_and_si256(xo, Y2)),
                                             _mm256_and_si256(zo, X2));
        const __m256i minus = _mm256_or_si256(_mm256_or_si256(_mm256_and_si256(y1, X2), _mm256_and_si256(xo, Z2)),
                                              _mm256_and_si256(zo, Y2));
        _mm256_store_si256(reinterpret_cast<__m256i*>(plus_words), plus);
        _mm256_store_si256(reinterpret_cast<__m256i*>(minus_words), minus);
        for (int k = 0; k < 4; ++k) {
            total += std::popcount(plus_words[k]) - std::popcount(minus_words[k]);
        }
    }
    if (w < x1.size()) {
        total += scalar::pauli_product_phase(x1.subspan(w), z1.subspan(w), x2.subspan(w), z2.subspan(w));
    }
    return total;
}

}  // namespace cliffrw::sim::kernels::avx2
