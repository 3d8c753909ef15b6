#include "localinv/simd.hpp"

namespace localinv::simd {

void gemm_f64_scalar(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) {
    for (std::size_t i = 0; i < m; ++i) {
        double* ci = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = a[i * k + l];
            const double* bl = b + l * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += ail * bl[j];
        }
    }
}

}  // namespace localinv::simd
