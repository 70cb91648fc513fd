#pragma once

#include "ivvi/kernels.hpp"

namespace ivvi::kernels::detail {

void shifted_dot_scalar(const DotArgs& a);
std::size_t first_dominated_scalar(const DominanceArgs& a);

// Scalar handling of points [from, a.n); shared with the SIMD tails.
void shifted_dot_range(const DotArgs& a, std::size_t from);
bool dominated_at(const DominanceArgs& a, std::size_t k);

#if defined(IVVI_HAVE_AVX2)
void shifted_dot_avx2(const DotArgs& a);
std::size_t first_dominated_avx2(const DominanceArgs& a);
#endif

#if defined(IVVI_HAVE_NEON)
void shifted_dot_neon(const DotArgs& a);
std::size_t first_dominated_neon(const DominanceArgs& a);
#endif

}  // namespace ivvi::kernels::detail
