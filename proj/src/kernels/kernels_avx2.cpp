#include <immintrin.h>

#include "kernels/kernels_impl.hpp"

namespace ivvi::kernels::detail {

namespace {

inline __m256d load_factor(const Factor& f, std::size_t k) {
    const __m256d x = f.col ? _mm256_loadu_pd(f.col + k) : _mm256_setzero_pd();
    return _mm256_sub_pd(x, _mm256_set1_pd(f.shift));
}

}  // namespace

void shifted_dot_avx2(const DotArgs& a) {
    const std::size_t terms = a.lhs.size();
    const __m256d c = _mm256_set1_pd(a.constant);
    std::size_t k = 0;
    for (; k + 4 <= a.n; k += 4) {
        __m256d acc = a.base ? _mm256_loadu_pd(a.base + k) : _mm256_setzero_pd();
        acc = _mm256_add_pd(acc, c);
        for (std::size_t d = 0; d < terms; ++d) {
            acc = _mm256_add_pd(acc, _mm256_mul_pd(load_factor(a.lhs[d], k), load_factor(a.rhs[d], k)));
        }
        switch (a.mode) {
            case Reduce::Assign: break;
            // min_pd(x, y) yields y unless x < y, matching the scalar select.
            case Reduce::Min: acc = _mm256_min_pd(acc, _mm256_loadu_pd(a.out + k)); break;
            case Reduce::Max: acc = _mm256_max_pd(acc, _mm256_loadu_pd(a.out + k)); break;
        }
        _mm256_storeu_pd(a.out + k, acc);
    }
    shifted_dot_range(a, k);
}

std::size_t first_dominated_avx2(const DominanceArgs& a) {
    const std::size_t m = a.cols.size();
    std::size_t k = 0;
    for (; k + 4 <= a.n; k += 4) {
        __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
        for (std::size_t j = 0; j < m && _mm256_movemask_pd(all); ++j) {
            all = _mm256_and_pd(all, _mm256_cmp_pd(_mm256_loadu_pd(a.cols[j] + k), _mm256_set1_pd(a.le[j]), _CMP_LE_OQ));
        }
        if (a.strict == StrictMode::PerGroup) {
            for (std::size_t g = 0; g < m && _mm256_movemask_pd(all); g += a.group_size) {
                __m256d any = _mm256_setzero_pd();
                for (std::size_t j = g; j < g + a.group_size && j < m; ++j) {
                    any = _mm256_or_pd(any, _mm256_cmp_pd(_mm256_loadu_pd(a.cols[j] + k), _mm256_set1_pd(a.lt[j]), _CMP_LT_OQ));
                }
                all = _mm256_and_pd(all, any);
            }
        }
        int mask = _mm256_movemask_pd(all);
        if (a.skip >= k && a.skip < k + 4) mask &= ~(1 << (a.skip - k));
        if (mask) return k + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
    }
    for (; k < a.n; ++k) {
        if (k != a.skip && dominated_at(a, k)) return k;
    }
    return npos;
}

}  // namespace ivvi::kernels::detail
