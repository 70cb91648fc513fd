#pragma once

#include <cstddef>
#include <limits>
#include <span>

// Dense column kernels behind the grid checks. Every routine has a scalar
// reference; SIMD variants are chosen at runtime and must agree bit for bit.
namespace ivvi::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char* to_string(Isa isa) noexcept;

/// True when the variant was compiled in and the CPU can run it.
bool isa_available(Isa isa) noexcept;
/// Variant used by the dispatching entry points. Honors IVVI_FORCE_SCALAR=1.
Isa active_isa() noexcept;
/// Overrides the dispatch choice. Falls back to Scalar if `isa` is unavailable.
void force_isa(Isa isa) noexcept;

enum class Reduce { Assign, Min, Max };

/// Per-point factor: (col ? col[k] : 0) - shift.
struct Factor {
    const double* col = nullptr;
    double shift = 0.0;
};

/// v[k] = (base ? base[k] : 0) + constant + sum_d lhs_d(k) * rhs_d(k), folded
/// into out[k] according to `mode`. Terms are accumulated left to right.
struct DotArgs {
    double* out = nullptr;
    std::size_t n = 0;
    Reduce mode = Reduce::Assign;
    const double* base = nullptr;
    double constant = 0.0;
    std::span<const Factor> lhs;
    std::span<const Factor> rhs;
};

enum class StrictMode { None, PerGroup };

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// First k != skip with cols[j][k] <= le[j] for all j and, under PerGroup,
/// cols[j][k] < lt[j] for some j inside every block of `group_size` columns.
struct DominanceArgs {
    std::span<const double* const> cols;
    std::span<const double> le;
    std::span<const double> lt;
    std::size_t n = 0;
    std::size_t group_size = 1;
    StrictMode strict = StrictMode::None;
    std::size_t skip = npos;
};

void shifted_dot(const DotArgs& a);
std::size_t first_dominated(const DominanceArgs& a);

// Direct access to each variant, for equivalence testing.
void shifted_dot(Isa isa, const DotArgs& a);
std::size_t first_dominated(Isa isa, const DominanceArgs& a);

}  // namespace ivvi::kernels
