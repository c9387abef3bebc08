// AVX2+FMA kernel variants. Two complex doubles per __m256d; interleaved
// re/im layout matches std::complex<double>. Compiled with -mavx2 -mfma and
// reached only through the runtime dispatcher.

#if defined(__x86_64__) || defined(_M_X64)

#include "caesar/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace caesar::kernels {

namespace {

// [a1*b - a2*bsw combine] helpers: splat real/imag parts of each complex.
inline __m256d splat_re(__m256d v) { return _mm256_movedup_pd(v); }
inline __m256d splat_im(__m256d v) { return _mm256_permute_pd(v, 0xF); }
inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0x5); }

inline cd reduce_complex(__m256d acc) {
    alignas(32) double t[4];
    _mm256_store_pd(t, acc);
    return {t[0] + t[2], t[1] + t[3]};
}

cd dotu_avx2(const cd* a, const cd* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc1 = _mm256_fmadd_pd(splat_re(va), vb, acc1);
        acc2 = _mm256_fmadd_pd(splat_im(va), swap_ri(vb), acc2);
    }
    // even lanes: re = acc1 - acc2, odd lanes: im = acc1 + acc2
    cd res = reduce_complex(_mm256_addsub_pd(acc1, acc2));
    for (; i < n; ++i) res += a[i] * b[i];
    return res;
}

cd dotc_avx2(const cd* a, const cd* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc1 = _mm256_fmadd_pd(splat_re(va), vb, acc1);
        acc2 = _mm256_fmadd_pd(splat_im(va), swap_ri(vb), acc2);
    }
    // conjugated: re = acc1 + acc2, im = acc1 - acc2
    const __m256d neg = _mm256_set1_pd(-0.0);
    cd res = reduce_complex(_mm256_addsub_pd(acc1, _mm256_xor_pd(acc2, neg)));
    for (; i < n; ++i) res += std::conj(a[i]) * b[i];
    return res;
}

double norm2sq_avx2(const cd* a, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        acc = _mm256_fmadd_pd(va, va, acc);
    }
    alignas(32) double t[4];
    _mm256_store_pd(t, acc);
    double res = t[0] + t[1] + t[2] + t[3];
    for (; i < n; ++i) res += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return res;
}

void matvec_avx2(const cd* A, const cd* x, cd* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dotu_avx2(A + r * cols, x, cols);
}

void matvec_adj_avx2(const cd* A, const cd* x, cd* y, std::size_t rows, std::size_t cols) {
    double* py = reinterpret_cast<double*>(y);
    for (std::size_t j = 0; j < cols; ++j) y[j] = cd{0.0, 0.0};
    for (std::size_t r = 0; r < rows; ++r) {
        const double* pa = reinterpret_cast<const double*>(A + r * cols);
        const __m256d vb = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(x + r));
        const __m256d vb_sw = swap_ri(vb);
        std::size_t j = 0;
        for (; j + 2 <= cols; j += 2) {
            const __m256d va = _mm256_loadu_pd(pa + 2 * j);
            const __m256d term = _mm256_fmsubadd_pd(splat_re(va), vb,
                                                    _mm256_mul_pd(splat_im(va), vb_sw));
            _mm256_storeu_pd(py + 2 * j, _mm256_add_pd(_mm256_loadu_pd(py + 2 * j), term));
        }
        for (; j < cols; ++j) y[j] += std::conj(A[r * cols + j]) * x[r];
    }
}

void axpy_avx2(cd alpha, const cd* x, cd* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const __m256d va_re = _mm256_set1_pd(alpha.real());
    const __m256d va_im = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d term = _mm256_fmaddsub_pd(va_re, vx, _mm256_mul_pd(va_im, swap_ri(vx)));
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), term));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void soft_threshold_avx2(const cd* x, cd* out, double t, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* po = reinterpret_cast<double*>(out);
    const __m256d vt = _mm256_set1_pd(t);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d sq = _mm256_mul_pd(vx, vx);
        const __m256d mag2 = _mm256_hadd_pd(sq, sq); // per-complex |x|^2, duplicated
        const __m256d mag = _mm256_sqrt_pd(mag2);
        const __m256d keep = _mm256_cmp_pd(mag, vt, _CMP_GT_OQ);
        const __m256d factor = _mm256_div_pd(_mm256_sub_pd(mag, vt), mag);
        const __m256d res = _mm256_mul_pd(vx, _mm256_and_pd(factor, keep));
        _mm256_storeu_pd(po + 2 * i, res);
    }
    for (; i < n; ++i) {
        const double mag = std::abs(x[i]);
        out[i] = (mag <= t) ? cd{0.0, 0.0} : x[i] * ((mag - t) / mag);
    }
}

const Ops kAvx2Ops = {
    matvec_avx2, matvec_adj_avx2, dotc_avx2, dotu_avx2,
    norm2sq_avx2, axpy_avx2, soft_threshold_avx2,
};

} // namespace

const Ops& avx2_ops() { return kAvx2Ops; }

} // namespace caesar::kernels

#endif // x86-64
