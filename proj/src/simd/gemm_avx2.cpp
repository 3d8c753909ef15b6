#include "localinv/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define LOCALINV_HAVE_AVX2_TU 1
#endif

namespace localinv::simd {

#if LOCALINV_HAVE_AVX2_TU

__attribute__((target("avx2,fma"))) void gemm_f64_avx2(std::size_t m, std::size_t n, std::size_t k,
                                                        const double* a, const double* b, double* c) {
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < m; ++i) {
        double* ci = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = a[i * k + l];
            const __m256d av = _mm256_set1_pd(ail);
            const double* bl = b + l * n;
            std::size_t j = 0;
            for (; j < n4; j += 4) {
                __m256d cv = _mm256_loadu_pd(ci + j);
                cv = _mm256_fmadd_pd(av, _mm256_loadu_pd(bl + j), cv);
                _mm256_storeu_pd(ci + j, cv);
            }
            for (; j < n; ++j) ci[j] += ail * bl[j];
        }
    }
}

#else

void gemm_f64_avx2(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) {
    gemm_f64_scalar(m, n, k, a, b, c);
}

#endif

}  // namespace localinv::simd
