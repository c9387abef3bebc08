#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel complex kernels used by the solvers, beamformer, and
// coherence scans. Every kernel has a scalar reference implementation and,
// on x86-64 with AVX2+FMA, a vectorized variant selected at runtime. The
// two are equivalence-tested against each other; results differ only by
// floating-point summation order.

namespace caesar::kernels {

using cd = std::complex<double>;

struct Ops {
    // y = A x, A row-major (rows x cols)
    void (*matvec)(const cd* A, const cd* x, cd* y, std::size_t rows, std::size_t cols);
    // y = A^H x (y has cols entries; x has rows entries)
    void (*matvec_adj)(const cd* A, const cd* x, cd* y, std::size_t rows, std::size_t cols);
    // sum conj(a[i]) * b[i]
    cd (*dotc)(const cd* a, const cd* b, std::size_t n);
    // sum a[i] * b[i]
    cd (*dotu)(const cd* a, const cd* b, std::size_t n);
    // sum |a[i]|^2
    double (*norm2sq)(const cd* a, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(cd alpha, const cd* x, cd* y, std::size_t n);
    // out[i] = x[i] * max(0, 1 - t/|x[i]|)   (0 when |x[i]| <= t)
    void (*soft_threshold)(const cd* x, cd* out, double t, std::size_t n);
};

/// Kernels currently in effect (dispatched once on first use).
const Ops& active();

/// Reference implementation, always available.
const Ops& scalar();

/// Name of the active backend: "scalar" or "avx2".
std::string backend_name();

/// Force a backend ("scalar", "avx2", "auto"). Throws std::invalid_argument
/// for unknown names or when the requested backend is unsupported on this
/// CPU. Intended for tests and the CLI; the CAESAR_KERNELS environment
/// variable applies the same override at startup.
void force_backend(const std::string& name);

bool avx2_supported();

// Convenience forwarders through the active backend.
inline void matvec(const cd* A, const cd* x, cd* y, std::size_t rows, std::size_t cols) {
    active().matvec(A, x, y, rows, cols);
}
inline void matvec_adj(const cd* A, const cd* x, cd* y, std::size_t rows, std::size_t cols) {
    active().matvec_adj(A, x, y, rows, cols);
}
inline cd dotc(const cd* a, const cd* b, std::size_t n) { return active().dotc(a, b, n); }
inline cd dotu(const cd* a, const cd* b, std::size_t n) { return active().dotu(a, b, n); }
inline double norm2sq(const cd* a, std::size_t n) { return active().norm2sq(a, n); }
inline void axpy(cd alpha, const cd* x, cd* y, std::size_t n) { active().axpy(alpha, x, y, n); }
inline void soft_threshold(const cd* x, cd* out, double t, std::size_t n) {
    active().soft_threshold(x, out, t, n);
}

} // namespace caesar::kernels
