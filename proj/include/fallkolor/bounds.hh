#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fallkolor {

enum class SpectrumKind { exact_set, bounds_only, empty, unknown };

/// What is known in closed form about Fall(KG(n, m)).
struct SpectrumFormula {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    SpectrumKind kind = SpectrumKind::unknown;
    std::optional<std::vector<std::uint64_t>> exact;
    std::optional<std::uint64_t> lower;
    std::optional<std::uint64_t> upper;

    /// e.g. "lower 6, upper 11, exact {7}"
    auto describe() const -> std::string;
};

/// Exact spectra for m = 1, n/2 < m <= n, n = 2m and m = 2; unknown otherwise.
/// Bounds from fall_bounds are attached when n >= 2m, m >= 2 and lower <= upper.
auto closed_form_spectrum(std::uint32_t n, std::uint32_t m) -> SpectrumFormula;

/// h(n, m) = 1 + C(n-1, m-1) - C(n-m-1, m-1). Requires n >= 2m >= 2.
auto hilton_milner(std::uint32_t n, std::uint32_t m) -> std::uint64_t;

struct FallBounds {
    std::uint64_t lower;
    std::uint64_t upper;
};

/// lower = ceil(C(n-1, m) / h(n, m)) + 1, upper = C(n, m) - C(n-m, m). Requires n >= 2m.
/// The upper bound is below n for m = 1, where Fall(KG(n,1)) = {n}, and below
/// the exact value n(n-1)/6 or (n-1)(n-2)/6 + 1 for m = 2 and n >= 13.
auto fall_bounds(std::uint32_t n, std::uint32_t m) -> FallBounds;

}
