#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caesar/kernels.hpp"
#include "caesar/rng.hpp"
#include "caesar/types.hpp"

#include <cmath>
#include <vector>

using namespace caesar;
namespace k = caesar::kernels;

namespace {

std::vector<cd> random_vec(Rng& rng, size_t n) {
    std::vector<cd> v(n);
    for (cd& x : v) x = cd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return v;
}

double max_abs_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("scalar and vector backends agree on random problems") {
    if (!k::avx2_supported()) {
        MESSAGE("avx2 not available; dispatcher covers scalar only");
        return;
    }
    const k::Ops& s = k::scalar();
    k::force_backend("avx2");
    const k::Ops& v = k::active();

    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const size_t rows = 1 + rng.uniform_int(40);
        const size_t cols = 1 + rng.uniform_int(70);
        const auto A = random_vec(rng, rows * cols);
        const auto x = random_vec(rng, cols);
        const auto y = random_vec(rng, rows);

        std::vector<cd> r1(rows), r2(rows);
        s.matvec(A.data(), x.data(), r1.data(), rows, cols);
        v.matvec(A.data(), x.data(), r2.data(), rows, cols);
        CHECK(max_abs_diff(r1, r2) < 1e-12 * static_cast<double>(cols));

        std::vector<cd> a1(cols), a2(cols);
        s.matvec_adj(A.data(), y.data(), a1.data(), rows, cols);
        v.matvec_adj(A.data(), y.data(), a2.data(), rows, cols);
        CHECK(max_abs_diff(a1, a2) < 1e-12 * static_cast<double>(rows));

        const auto b = random_vec(rng, cols);
        CHECK(std::abs(s.dotc(x.data(), b.data(), cols) - v.dotc(x.data(), b.data(), cols)) <
              1e-12 * static_cast<double>(cols));
        CHECK(std::abs(s.dotu(x.data(), b.data(), cols) - v.dotu(x.data(), b.data(), cols)) <
              1e-12 * static_cast<double>(cols));
        CHECK(s.norm2sq(x.data(), cols) ==
              doctest::Approx(v.norm2sq(x.data(), cols)).epsilon(1e-12));

        std::vector<cd> y1(y), y2(y);
        const cd alpha{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        s.axpy(alpha, A.data(), y1.data(), rows);
        v.axpy(alpha, A.data(), y2.data(), rows);
        CHECK(max_abs_diff(y1, y2) < 1e-13);

        std::vector<cd> t1(cols), t2(cols);
        const double thr = rng.uniform(0.0, 1.5);
        s.soft_threshold(b.data(), t1.data(), thr, cols);
        v.soft_threshold(b.data(), t2.data(), thr, cols);
        CHECK(max_abs_diff(t1, t2) < 1e-13);
    }
    k::force_backend("auto");
}

TEST_CASE("soft threshold shrinks magnitudes and zeroes small entries") {
    const std::vector<cd> x = {cd{3.0, 4.0}, cd{0.1, 0.0}, cd{0.0, 0.0}, cd{-0.3, 0.4}};
    std::vector<cd> out(x.size());
    k::scalar().soft_threshold(x.data(), out.data(), 0.5, x.size());
    CHECK(std::abs(out[0]) == doctest::Approx(4.5)); // |3+4i| = 5 -> 4.5
    CHECK(out[1] == cd{0.0, 0.0});
    CHECK(out[2] == cd{0.0, 0.0});
    CHECK(std::abs(out[3]) == doctest::Approx(0.0)); // |.-3+.4i| = 0.5 exactly
    // phase preserved on the surviving entry
    CHECK(std::arg(out[0]) == doctest::Approx(std::arg(x[0])));
}

TEST_CASE("dotc is conjugate-symmetric") {
    Rng rng(5);
    const auto a = random_vec(rng, 33);
    const auto b = random_vec(rng, 33);
    const cd ab = k::scalar().dotc(a.data(), b.data(), 33);
    const cd ba = k::scalar().dotc(b.data(), a.data(), 33);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-14);
}

TEST_CASE("backend dispatch can be forced and restored") {
    k::force_backend("scalar");
    CHECK(k::backend_name() == "scalar");
    CHECK_THROWS_AS(k::force_backend("sse9"), std::invalid_argument);
    k::force_backend("auto");
    if (k::avx2_supported()) CHECK(k::backend_name() == "avx2");
    else CHECK(k::backend_name() == "scalar");
}
