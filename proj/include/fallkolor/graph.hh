#pragma once

#include <fallkolor/bitset.hh>
#include <fallkolor/combinatorics.hh>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fallkolor {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

struct KneserParams {
    std::uint32_t n;
    std::uint32_t m;
    friend auto operator==(const KneserParams &, const KneserParams &) -> bool = default;
};

/// Finite simple graph with one adjacency bit row per vertex. Immutable once
/// built; every constructor checks symmetry, irreflexivity and label sanity.
class Graph {
public:
    /// Throws ParameterError on self-loops, duplicate edges or out-of-range endpoints.
    Graph(std::size_t vertex_count, const std::vector<Edge> & edges, std::string name,
        std::vector<SubsetLabel> labels = {}, std::optional<KneserParams> kneser = std::nullopt);

    /// Throws ParameterError if the rows are not a symmetric, loopless relation.
    Graph(std::vector<Bitset> rows, std::string name, std::vector<SubsetLabel> labels = {},
        std::optional<KneserParams> kneser = std::nullopt);

    auto vertex_count() const -> std::size_t { return _rows.size(); }
    auto edge_count() const -> std::size_t { return _edge_count; }
    auto name() const -> const std::string & { return _name; }

    auto adjacent(Vertex u, Vertex v) const -> bool { return _rows[u].test(v); }
    auto neighbors(Vertex v) const -> const Bitset & { return _rows[v]; }
    auto degree(Vertex v) const -> std::size_t { return _rows[v].count(); }
    auto min_degree() const -> std::size_t;

    /// {v} together with its neighbors. Throws ParameterError on a bad index.
    auto closed_neighborhood(Vertex v) const -> Bitset;

    /// All edges (u, v) with u < v, lexicographically sorted.
    auto edges() const -> std::vector<Edge>;

    auto has_labels() const -> bool { return ! _labels.empty(); }
    auto labels() const -> const std::vector<SubsetLabel> & { return _labels; }
    auto label(Vertex v) const -> const SubsetLabel & { return _labels.at(v); }
    auto find_label(const SubsetLabel & s) const -> std::optional<Vertex>;
    auto kneser_params() const -> const std::optional<KneserParams> & { return _kneser; }

    /// Throws ParameterError naming `operation` when the graph has no labels.
    void require_labels(const std::string & operation) const;

    /// Structural equality: same adjacency and labels. Names are ignored.
    friend auto operator==(const Graph & a, const Graph & b) -> bool
    {
        return a._rows == b._rows && a._labels == b._labels;
    }

private:
    void check_labels();

    std::vector<Bitset> _rows;
    std::size_t _edge_count = 0;
    std::string _name;
    std::vector<SubsetLabel> _labels;
    std::optional<KneserParams> _kneser;
};

inline constexpr std::uint64_t default_kneser_vertex_budget = 10'000;

/// KG(n, m): vertices are the m-subsets of [n] in colex order, adjacent when disjoint.
auto kneser(std::uint32_t n, std::uint32_t m, std::uint64_t vertex_budget = default_kneser_vertex_budget) -> Graph;

/// Cycle, complete and edgeless graphs, mostly for tests and negative controls.
auto cycle_graph(std::size_t n) -> Graph;
auto complete_graph(std::size_t n) -> Graph;
auto edgeless_graph(std::size_t n) -> Graph;

/// DIMACS edge format, with "c kneser n m" and "c label i {..}" sidecar lines
/// for labelled graphs.
void write_dimacs(std::ostream & out, const Graph & g);
auto read_dimacs(std::istream & in, std::string name) -> Graph;

}
