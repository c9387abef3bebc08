#include "caesar/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace caesar::kernels {

namespace {

void matvec_scalar(const cd* A, const cd* x, cd* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
        const cd* row = A + r * cols;
        cd acc{0.0, 0.0};
        for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
        y[r] = acc;
    }
}

void matvec_adj_scalar(const cd* A, const cd* x, cd* y, std::size_t rows, std::size_t cols) {
    for (std::size_t j = 0; j < cols; ++j) y[j] = cd{0.0, 0.0};
    for (std::size_t r = 0; r < rows; ++r) {
        const cd* row = A + r * cols;
        const cd xr = x[r];
        for (std::size_t j = 0; j < cols; ++j) y[j] += std::conj(row[j]) * xr;
    }
}

cd dotc_scalar(const cd* a, const cd* b, std::size_t n) {
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

cd dotu_scalar(const cd* a, const cd* b, std::size_t n) {
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double norm2sq_scalar(const cd* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return acc;
}

void axpy_scalar(cd alpha, const cd* x, cd* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void soft_threshold_scalar(const cd* x, cd* out, double t, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = std::abs(x[i]);
        out[i] = (mag <= t) ? cd{0.0, 0.0} : x[i] * ((mag - t) / mag);
    }
}

const Ops kScalarOps = {
    matvec_scalar, matvec_adj_scalar, dotc_scalar, dotu_scalar,
    norm2sq_scalar, axpy_scalar, soft_threshold_scalar,
};

enum class Backend { Scalar, Avx2 };

Backend g_backend = Backend::Scalar;
bool g_initialized = false;

void init_backend() {
    Backend pick = avx2_supported() ? Backend::Avx2 : Backend::Scalar;
    if (const char* env = std::getenv("CAESAR_KERNELS")) {
        const std::string v(env);
        if (v == "scalar") pick = Backend::Scalar;
        else if (v == "avx2" && avx2_supported()) pick = Backend::Avx2;
    }
    g_backend = pick;
    g_initialized = true;
}

} // namespace

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops(); // defined in kernels_avx2.cpp

bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#else
bool avx2_supported() { return false; }
#endif

const Ops& scalar() { return kScalarOps; }

const Ops& active() {
    if (!g_initialized) init_backend();
#if defined(__x86_64__) || defined(_M_X64)
    if (g_backend == Backend::Avx2) return avx2_ops();
#endif
    return kScalarOps;
}

std::string backend_name() {
    if (!g_initialized) init_backend();
    return g_backend == Backend::Avx2 ? "avx2" : "scalar";
}

void force_backend(const std::string& name) {
    if (name == "auto") {
        g_initialized = false;
        init_backend();
        return;
    }
    if (name == "scalar") {
        g_backend = Backend::Scalar;
        g_initialized = true;
        return;
    }
    if (name == "avx2") {
        if (!avx2_supported()) throw std::invalid_argument("avx2 kernels not supported on this CPU");
        g_backend = Backend::Avx2;
        g_initialized = true;
        return;
    }
    throw std::invalid_argument("unknown kernel backend: " + name);
}

} // namespace caesar::kernels
