#pragma once

// Conversions between the brute-force oracle's matrices and library graphs.

#include "oracles.hh"

#include <fallkolor/graph.hh>

#include <string>

inline auto to_graph(const oracle::Matrix & m, const std::string & name = "g") -> fallkolor::Graph
{
    std::vector<fallkolor::Edge> edges;
    for (fallkolor::Vertex u = 0; u < m.size(); ++u)
        for (fallkolor::Vertex v = u + 1; v < m.size(); ++v)
            if (m[u][v])
                edges.emplace_back(u, v);
    return fallkolor::Graph(m.size(), edges, name);
}

inline auto to_matrix(const fallkolor::Graph & g) -> oracle::Matrix
{
    oracle::Matrix m(g.vertex_count(), std::vector<bool>(g.vertex_count(), false));
    for (auto [u, v] : g.edges())
        m[u][v] = m[v][u] = true;
    return m;
}
