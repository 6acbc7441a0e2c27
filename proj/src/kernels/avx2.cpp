#include "kernels_impl.hpp"

#ifdef SQM_HAVE_AVX2_BUILD

#include <immintrin.h>

namespace sqm::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swap = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

// built inside the kernels, never at static-init time: this TU must not run
// AVX instructions before the dispatcher's CPUID check
inline __m256d abs_mask() {
    return _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
}

} // namespace

void lorentzian_sum(const double* grid, std::size_t n_grid,
                    const double* centers, std::size_t n_centers,
                    double alpha, double gamma, double* out) {
    const __m256d valpha = _mm256_set1_pd(alpha);
    const __m256d vg2 = _mm256_set1_pd(gamma * gamma);
    std::size_t g = 0;
    for (; g + 4 <= n_grid; g += 4) {
        const __m256d w = _mm256_loadu_pd(grid + g);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t i = 0; i < n_centers; ++i) {
            const __m256d d = _mm256_sub_pd(w, _mm256_set1_pd(centers[i]));
            const __m256d den = _mm256_fmadd_pd(d, d, vg2);
            acc = _mm256_add_pd(acc, _mm256_div_pd(valpha, den));
        }
        _mm256_storeu_pd(out + g, acc);
    }
    if (g < n_grid)
        scalar::lorentzian_sum(grid + g, n_grid - g, centers, n_centers, alpha, gamma, out + g);
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double screened_mode_sum(const double* w, const double* k2, std::size_t n, double rho) {
    const __m256d vrho = _mm256_set1_pd(rho);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vk2 = _mm256_loadu_pd(k2 + i);
        const __m256d den = _mm256_fmadd_pd(vrho, vk2, one);
        const __m256d num = _mm256_mul_pd(_mm256_loadu_pd(w + i), vk2);
        acc = _mm256_add_pd(acc, _mm256_div_pd(num, _mm256_mul_pd(den, den)));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double den = rho * k2[i] + 1.0;
        s += w[i] * k2[i] / (den * den);
    }
    return s;
}

double abs_neighbor_diff_sum(const double* x, std::size_t n, bool periodic) {
    const __m256d mask = abs_mask();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 1;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(x + i - 1));
        acc = _mm256_add_pd(acc, _mm256_and_pd(d, mask));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = x[i] - x[i - 1];
        s += d < 0.0 ? -d : d;
    }
    if (periodic && n > 1) {
        const double d = x[0] - x[n - 1];
        s += d < 0.0 ? -d : d;
    }
    return s;
}

double sq_dev_sum(const double* x, const double* c, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(c + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = x[i] - c[i];
        s += d * d;
    }
    return s;
}

} // namespace sqm::kernels::avx2

#endif // SQM_HAVE_AVX2_BUILD
