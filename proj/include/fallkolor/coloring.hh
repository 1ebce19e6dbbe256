#pragma once

#include <fallkolor/bitset.hh>
#include <fallkolor/graph.hh>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fallkolor {

/// Colors are 0-based internally and printed 1-based.
using Color = std::uint32_t;

/// A total map from vertices to [k], stored both as an assignment and as the
/// k preimage classes. Classes may be empty; fall colorings never have one.
class Coloring {
public:
    /// Throws ParameterError if any color is >= k.
    Coloring(std::size_t k, std::vector<Color> assignment);

    /// Throws ParameterError unless `classes` partition 0..vertex_count-1.
    static auto from_classes(std::size_t vertex_count, std::vector<Bitset> classes) -> Coloring;

    auto k() const -> std::size_t { return _classes.size(); }
    auto vertex_count() const -> std::size_t { return _assignment.size(); }
    auto color(Vertex v) const -> Color { return _assignment[v]; }
    auto assignment() const -> const std::vector<Color> & { return _assignment; }
    auto color_class(Color c) const -> const Bitset & { return _classes[c]; }
    auto classes() const -> const std::vector<Bitset> & { return _classes; }

    /// Non-empty classes ordered by least vertex, empty classes last, colors
    /// renumbered to match.
    auto canonical() const -> Coloring;

    friend auto operator==(const Coloring & a, const Coloring & b) -> bool { return a._assignment == b._assignment && a.k() == b.k(); }

private:
    Coloring() = default;

    std::vector<Color> _assignment;
    std::vector<Bitset> _classes;
};

struct ProperCheck {
    bool ok = true;
    std::optional<Edge> monochromatic_edge;
};

struct FallCheck {
    bool ok = true;
    std::optional<Edge> monochromatic_edge;
    std::optional<Vertex> non_colorful_vertex;
    std::optional<Color> missing_color;

    auto describe(const Graph & g) const -> std::string;
};

/// Least monochromatic edge, if any. Throws ParameterError on a size mismatch.
auto is_proper(const Graph & g, const Coloring & c) -> ProperCheck;

/// Vertices whose closed neighborhood sees all k colors. Properness is not required.
auto colorful_vertices(const Graph & g, const Coloring & c) -> Bitset;

/// Proper and every vertex colorful. The witness is the least offending edge,
/// or failing that the least non-colorful vertex and its least missing color.
auto is_fall(const Graph & g, const Coloring & c) -> FallCheck;

/// Human-readable vertex name: the label when present, else the 1-based index.
auto vertex_name(const Graph & g, Vertex v) -> std::string;

/// A function between the vertex sets of two graphs.
class VertexMap {
public:
    /// Throws ParameterError unless map has one valid target index per source vertex.
    VertexMap(std::shared_ptr<const Graph> source, std::shared_ptr<const Graph> target, std::vector<Vertex> map);

    static auto identity(std::shared_ptr<const Graph> g) -> VertexMap;

    auto source() const -> const Graph & { return *_source; }
    auto target() const -> const Graph & { return *_target; }
    auto source_ptr() const -> const std::shared_ptr<const Graph> & { return _source; }
    auto target_ptr() const -> const std::shared_ptr<const Graph> & { return _target; }
    auto operator()(Vertex v) const -> Vertex { return _map[v]; }
    auto images() const -> const std::vector<Vertex> & { return _map; }

private:
    std::shared_ptr<const Graph> _source, _target;
    std::vector<Vertex> _map;
};

struct HomCheck {
    bool ok = true;
    /// 1: a source edge is not mapped onto a target edge.
    /// 2: some v in f^-1(v1) has no neighbor in f^-1(u1) for a target edge {u1, v1}.
    int violated_condition = 0;
    std::optional<Edge> source_edge;
    std::optional<Edge> target_edge;
    std::optional<Vertex> source_vertex;

    auto describe(const VertexMap & h) const -> std::string;
};

/// Checks both type-II homomorphism conditions; empty preimages satisfy
/// condition 2 vacuously.
auto verify_type2_hom(const VertexMap & h) -> HomCheck;

#ifdef NDEBUG
inline constexpr bool checked_by_default = false;
#else
inline constexpr bool checked_by_default = true;
#endif

/// Colors each source vertex with the color of its image. With `checked`, a
/// type-II map and a fall target coloring must produce a fall result, else
/// ConstructionError.
auto pullback_coloring(const VertexMap & h, const Coloring & c, bool checked = checked_by_default) -> Coloring;

/// f2 after f1. Throws ParameterError unless f1's target is f2's source.
auto compose_maps(const VertexMap & f1, const VertexMap & f2) -> VertexMap;

/// Coloring document: {"graph", optional "provenance", "k", "classes"}, classes
/// in canonical order, vertices as "{a,b}" labels or 1-based integers.
void write_coloring(std::ostream & out, const Graph & g, const Coloring & c, const std::string & provenance = "");
auto coloring_to_json_text(const Graph & g, const Coloring & c, const std::string & provenance = "") -> std::string;

struct ColoringFile {
    Coloring coloring;
    std::string graph_name;
    std::string provenance;
};

/// Throws FormatError when the document is malformed or does not partition g's vertices.
auto read_coloring(std::istream & in, const Graph & g) -> ColoringFile;

}
