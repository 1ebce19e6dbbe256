#pragma once

#include <fallkolor/bitset.hh>
#include <fallkolor/coloring.hh>
#include <fallkolor/graph.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fallkolor {

/// Every maximal independent set of a graph, in lexicographic order of the
/// ascending member lists, with an index from vertices to the sets holding them.
struct MisCatalog {
    const Graph * graph = nullptr;
    std::vector<Bitset> sets;
    std::vector<std::vector<std::uint32_t>> containing;
    std::size_t max_size = 0;
    std::size_t min_size = 0;
};

struct SolverOptions {
    std::size_t vertex_budget = 200;
    std::size_t catalog_cap = 1'000'000;
    std::uint64_t node_budget = 100'000'000;
    /// Worker threads for the top-level branches. Results do not depend on it.
    unsigned workers = 1;
    /// Skip k outside search_window without searching. Turning this off makes
    /// "none" rest on the exact-cover search alone.
    bool window_pruning = true;
};

/// Bron-Kerbosch with pivoting on the complement. Throws BudgetError when the
/// graph or the catalog exceeds its configured limit.
auto enumerate_mis(const Graph & g, const SolverOptions & options = {}) -> MisCatalog;
/// The catalog refers to its graph, which must outlive it.
auto enumerate_mis(Graph && g, const SolverOptions & options = {}) -> MisCatalog = delete;

/// Independent and dominating.
auto is_maximal_independent(const Graph & g, const Bitset & s) -> bool;

/// Range of k that can possibly carry a fall k-coloring:
/// [ceil(V / alpha), min(delta + 1, floor(V / i_min))]. Empty when lo > hi.
struct KWindow {
    std::size_t lo = 0;
    std::size_t hi = 0;
    auto contains(std::size_t k) const -> bool { return lo <= k && k <= hi; }
};
auto search_window(const MisCatalog & catalog) -> KWindow;

enum class SearchOutcome { found, none, inconclusive };

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::none;
    /// Canonical witness when found: the first exact cover in branching order.
    std::optional<Coloring> coloring;
    std::uint64_t nodes = 0;
};

/// Exact cover of the vertex set by k catalog sets. "none" is a proof of
/// nonexistence; running out of node budget yields "inconclusive".
auto find_fall_coloring(const MisCatalog & catalog, std::size_t k, const SolverOptions & options = {}) -> SearchResult;
auto find_fall_coloring(const Graph & g, std::size_t k, const SolverOptions & options = {}) -> SearchResult;

struct SpectrumResult {
    std::string graph_name;
    std::size_t k_min = 0;
    std::size_t k_max = 0;
    KWindow window;
    std::vector<std::size_t> spectrum;
    std::map<std::size_t, Coloring> witnesses;
    bool partial = false;
    std::vector<std::size_t> unresolved;
    std::uint64_t nodes = 0;
    double elapsed_seconds = 0.0;
};

/// Fall(G) restricted to [k_min, k_max]; either bound defaults to the search window.
auto fall_spectrum(const Graph & g, std::optional<std::size_t> k_min = std::nullopt,
    std::optional<std::size_t> k_max = std::nullopt, const SolverOptions & options = {}) -> SpectrumResult;

/// Deterministic document without search statistics.
auto spectrum_to_json_text(const Graph & g, const SpectrumResult & r) -> std::string;

}
