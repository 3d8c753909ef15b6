#include <cstdlib>
#include <cstring>

#include "localinv/simd.hpp"

namespace localinv::simd {

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() {
    static const Isa chosen = [] {
        const char* forced = std::getenv("LOCALINV_SIMD");
        if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return Isa::scalar;
        return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    }();
    return chosen;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void gemm_f64(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) {
    if (active_isa() == Isa::avx2) {
        gemm_f64_avx2(m, n, k, a, b, c);
    } else {
        gemm_f64_scalar(m, n, k, a, b, c);
    }
}

}  // namespace localinv::simd
