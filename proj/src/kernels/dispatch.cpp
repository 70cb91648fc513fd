#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels/kernels_impl.hpp"

namespace ivvi::kernels {

namespace {

Isa detect() noexcept {
    if (const char* env = std::getenv("IVVI_FORCE_SCALAR"); env && std::strcmp(env, "0") != 0 && *env) {
        return Isa::Scalar;
    }
    if (isa_available(Isa::Avx2)) return Isa::Avx2;
    if (isa_available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

std::atomic<int>& selected() {
    static std::atomic<int> isa{static_cast<int>(detect())};
    return isa;
}

}  // namespace

const char* to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "?";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(IVVI_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(IVVI_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept { return static_cast<Isa>(selected().load(std::memory_order_relaxed)); }

void force_isa(Isa isa) noexcept {
    selected().store(static_cast<int>(isa_available(isa) ? isa : Isa::Scalar), std::memory_order_relaxed);
}

void shifted_dot(Isa isa, const DotArgs& a) {
    switch (isa) {
#if defined(IVVI_HAVE_AVX2)
        case Isa::Avx2: if (isa_available(isa)) return detail::shifted_dot_avx2(a); break;
#endif
#if defined(IVVI_HAVE_NEON)
        case Isa::Neon: return detail::shifted_dot_neon(a);
#endif
        default: break;
    }
    detail::shifted_dot_scalar(a);
}

std::size_t first_dominated(Isa isa, const DominanceArgs& a) {
    switch (isa) {
#if defined(IVVI_HAVE_AVX2)
        case Isa::Avx2: if (isa_available(isa)) return detail::first_dominated_avx2(a); break;
#endif
#if defined(IVVI_HAVE_NEON)
        case Isa::Neon: return detail::first_dominated_neon(a);
#endif
        default: break;
    }
    return detail::first_dominated_scalar(a);
}

void shifted_dot(const DotArgs& a) { shifted_dot(active_isa(), a); }
std::size_t first_dominated(const DominanceArgs& a) { return first_dominated(active_isa(), a); }

}  // namespace ivvi::kernels
