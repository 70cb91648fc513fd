#include "kernels/kernels_impl.hpp"

namespace ivvi::kernels::detail {

void shifted_dot_range(const DotArgs& a, std::size_t from) {
    const std::size_t terms = a.lhs.size();
    for (std::size_t k = from; k < a.n; ++k) {
        double acc = a.base ? a.base[k] : 0.0;
        acc += a.constant;
        for (std::size_t d = 0; d < terms; ++d) {
            const double l = (a.lhs[d].col ? a.lhs[d].col[k] : 0.0) - a.lhs[d].shift;
            const double r = (a.rhs[d].col ? a.rhs[d].col[k] : 0.0) - a.rhs[d].shift;
            acc += l * r;
        }
        switch (a.mode) {
            case Reduce::Assign: a.out[k] = acc; break;
            case Reduce::Min: a.out[k] = acc < a.out[k] ? acc : a.out[k]; break;
            case Reduce::Max: a.out[k] = acc > a.out[k] ? acc : a.out[k]; break;
        }
    }
}

void shifted_dot_scalar(const DotArgs& a) { shifted_dot_range(a, 0); }

bool dominated_at(const DominanceArgs& a, std::size_t k) {
    const std::size_t m = a.cols.size();
    for (std::size_t j = 0; j < m; ++j) {
        if (!(a.cols[j][k] <= a.le[j])) return false;
    }
    if (a.strict == StrictMode::None) return true;
    for (std::size_t g = 0; g < m; g += a.group_size) {
        bool any = false;
        for (std::size_t j = g; j < g + a.group_size && j < m; ++j) any = any || a.cols[j][k] < a.lt[j];
        if (!any) return false;
    }
    return true;
}

std::size_t first_dominated_scalar(const DominanceArgs& a) {
    for (std::size_t k = 0; k < a.n; ++k) {
        if (k != a.skip && dominated_at(a, k)) return k;
    }
    return npos;
}

}  // namespace ivvi::kernels::detail
