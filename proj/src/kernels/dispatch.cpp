#include <cstdlib>
#include <string_view>

#include "ckg/kernels.hpp"

namespace ckg::kernels {

#if defined(CKG_HAVE_AVX2)
namespace detail {
const KernelTable* avx2_table_impl() noexcept;
}
#endif

const KernelTable* avx2_table() noexcept {
#if defined(CKG_HAVE_AVX2)
    return detail::avx2_table_impl();
#else
    return nullptr;
#endif
}

bool cpu_supports_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const KernelTable& select() noexcept {
    const KernelTable* simd = cpu_supports_avx2() ? avx2_table() : nullptr;
    if (const char* forced = std::getenv("CKG_KERNELS")) {
        const std::string_view choice{forced};
        if (choice == "scalar") return scalar_table();
        if (choice == "avx2" && simd != nullptr) return *simd;
    }
    return simd != nullptr ? *simd : scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
    static const KernelTable& table = select();
    return table;
}

}  // namespace ckg::kernels
