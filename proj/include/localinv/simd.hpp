#pragma once

#include <cstddef>
#include <string_view>

namespace localinv::simd {

enum class Isa { scalar, avx2 };

/// Best kernel set the running CPU supports, unless LOCALINV_SIMD=scalar.
Isa active_isa();
std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);

/// c[m x n] += a[m x k] * b[k x n], all row-major.
void gemm_f64(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c);

// Direct entry points for equivalence tests.
void gemm_f64_scalar(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c);
void gemm_f64_avx2(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c);

}  // namespace localinv::simd
