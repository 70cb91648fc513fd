#include <arm_neon.h>

#include <vector>

#include "kernels/kernels_impl.hpp"

namespace ivvi::kernels::detail {

namespace {

inline float64x2_t load_factor(const Factor& f, std::size_t k) {
    const float64x2_t x = f.col ? vld1q_f64(f.col + k) : vdupq_n_f64(0.0);
    return vsubq_f64(x, vdupq_n_f64(f.shift));
}

}  // namespace

void shifted_dot_neon(const DotArgs& a) {
    const std::size_t terms = a.lhs.size();
    const float64x2_t c = vdupq_n_f64(a.constant);
    std::size_t k = 0;
    for (; k + 2 <= a.n; k += 2) {
        float64x2_t acc = a.base ? vld1q_f64(a.base + k) : vdupq_n_f64(0.0);
        acc = vaddq_f64(acc, c);
        for (std::size_t d = 0; d < terms; ++d) {
            acc = vaddq_f64(acc, vmulq_f64(load_factor(a.lhs[d], k), load_factor(a.rhs[d], k)));
        }
        if (a.mode != Reduce::Assign) {
            const float64x2_t old = vld1q_f64(a.out + k);
            const uint64x2_t take = a.mode == Reduce::Min ? vcltq_f64(acc, old) : vcgtq_f64(acc, old);
            acc = vbslq_f64(take, acc, old);
        }
        vst1q_f64(a.out + k, acc);
    }
    shifted_dot_range(a, k);
}

std::size_t first_dominated_neon(const DominanceArgs& a) {
    const std::size_t m = a.cols.size();
    std::size_t k = 0;
    for (; k + 2 <= a.n; k += 2) {
        uint64x2_t all = vdupq_n_u64(~0ULL);
        for (std::size_t j = 0; j < m; ++j) {
            all = vandq_u64(all, vcleq_f64(vld1q_f64(a.cols[j] + k), vdupq_n_f64(a.le[j])));
        }
        if (a.strict == StrictMode::PerGroup) {
            for (std::size_t g = 0; g < m; g += a.group_size) {
                uint64x2_t any = vdupq_n_u64(0);
                for (std::size_t j = g; j < g + a.group_size && j < m; ++j) {
                    any = vorrq_u64(any, vcltq_f64(vld1q_f64(a.cols[j] + k), vdupq_n_f64(a.lt[j])));
                }
                all = vandq_u64(all, any);
            }
        }
        for (std::size_t i = 0; i < 2; ++i) {
            const bool hit = i == 0 ? vgetq_lane_u64(all, 0) != 0 : vgetq_lane_u64(all, 1) != 0;
            if (hit && k + i != a.skip) return k + i;
        }
    }
    for (; k < a.n; ++k) {
        if (k != a.skip && dominated_at(a, k)) return k;
    }
    return npos;
}

}  // namespace ivvi::kernels::detail
