#pragma once

#include <fallkolor/coloring.hh>
#include <fallkolor/combinatorics.hh>
#include <fallkolor/graph.hh>

#include <memory>
#include <optional>
#include <string>

namespace fallkolor {

/// A coloring produced by one of the explicit recipes. Every returned result
/// has already passed is_fall on `graph`.
struct ConstructionResult {
    std::shared_ptr<const Graph> graph;
    Coloring coloring;
    std::size_t k = 0;
    std::string provenance;
    bool verified = false;
};

/// Colors KG(n, m) from an m-(n, 2m-1, 1) design: the class of block C is the
/// set of all m-subsets of C, so k = |B|.
auto coloring_from_design(std::uint32_t n, std::uint32_t m, const BlockDesign & d) -> ConstructionResult;

/// KG(n, 2) for n = 2 or 4 mod 6: the complete star at n plus the triangles of
/// an STS(n - 1) on [n - 1].
auto star_triangle_coloring(std::uint32_t n) -> ConstructionResult;

/// Image of an (m+1)-subset of [n+2] under the descent map onto the m-subsets
/// of [n]: drop max A when A meets {n+1, n+2} at most once, otherwise replace
/// {n+1, n+2} by the largest element of [n] missing from A.
auto descent_image(std::uint32_t n, std::uint32_t m, const SubsetLabel & a) -> SubsetLabel;

/// The descent map KG(n+2, m+1) -> KG(n, m) as a plain vertex map, without
/// the type-II check. Requires n > 2m and m >= 2.
auto descent_map_unchecked(std::uint32_t n, std::uint32_t m) -> VertexMap;

/// descent_map_unchecked, checked to be a type-II homomorphism before it is
/// returned; ConstructionError carries the violated condition otherwise.
auto descent_map(std::uint32_t n, std::uint32_t m) -> VertexMap;

/// Pulls a fall coloring of KG(n, m) back to KG(n+2, m+1) along the descent
/// map and verifies the result. A failed verification raises ConstructionError
/// naming both the non-colorful vertex and the map's type-II violation.
auto lift_coloring(std::uint32_t n, std::uint32_t m, const Coloring & c) -> ConstructionResult;

/// Star extension of a design coloring: the star at n is one class, and every
/// other vertex A takes the color of the design block holding A \ {max A}.
/// Uses STS(n) when m = 3 and no design is given. Throws RecipeUnverified
/// (with the witness) when the candidate is not a fall coloring.
auto star_extension_coloring(std::uint32_t n, std::uint32_t m, const std::optional<BlockDesign> & design = std::nullopt)
    -> ConstructionResult;

}
