#include <fallkolor/error.hh>
#include <fallkolor/solver.hh>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

using std::size_t;
using std::string;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace fallkolor {

auto is_maximal_independent(const Graph & g, const Bitset & s) -> bool
{
    Bitset dominated = s;
    bool independent = true;
    s.for_each([&](size_t v) {
        if (g.neighbors(static_cast<Vertex>(v)).intersects(s))
            independent = false;
        dominated |= g.neighbors(static_cast<Vertex>(v));
    });
    return independent && dominated.count() == g.vertex_count();
}

namespace {
    struct BronKerbosch {
        const vector<Bitset> & non_adjacent;
        size_t cap;
        vector<Bitset> found;

        void expand(Bitset & r, Bitset p, Bitset x)
        {
            if (p.none() && x.none()) {
                if (found.size() == cap)
                    throw BudgetError("maximal independent set catalog exceeds cap of " + std::to_string(cap));
                found.push_back(r);
                return;
            }

            // pivot maximising |P ∩ N(u)| over P ∪ X
            size_t pivot = Bitset::npos, best = 0;
            auto consider = [&](size_t u) {
                auto c = (p & non_adjacent[u]).count();
                if (pivot == Bitset::npos || c > best) {
                    pivot = u;
                    best = c;
                }
            };
            p.for_each(consider);
            x.for_each(consider);

            Bitset branch = p;
            branch.subtract(non_adjacent[pivot]);
            branch.for_each([&](size_t v) {
                r.set(v);
                expand(r, p & non_adjacent[v], x & non_adjacent[v]);
                r.reset(v);
                p.reset(v);
                x.set(v);
            });
        }
    };
}

auto enumerate_mis(const Graph & g, const SolverOptions & options) -> MisCatalog
{
    auto n = g.vertex_count();
    if (n == 0)
        throw ParameterError("cannot search fall colorings of the empty graph");
    if (n > options.vertex_budget)
        throw BudgetError(g.name() + " has " + std::to_string(n) + " vertices, above the solver budget of " +
            std::to_string(options.vertex_budget));

    vector<Bitset> non_adjacent;
    non_adjacent.reserve(n);
    for (Vertex v = 0; v < n; ++v) {
        Bitset b = Bitset::full(n);
        b.subtract(g.neighbors(v));
        b.reset(v);
        non_adjacent.push_back(std::move(b));
    }

    BronKerbosch bk{non_adjacent, options.catalog_cap, {}};
    Bitset r(n);
    bk.expand(r, Bitset::full(n), Bitset(n));

    MisCatalog catalog;
    catalog.graph = &g;
    catalog.sets = std::move(bk.found);
    std::sort(catalog.sets.begin(), catalog.sets.end(), [](const Bitset & a, const Bitset & b) { return lex_less(a, b); });
    catalog.containing.resize(n);
    catalog.min_size = n;
    for (uint32_t i = 0; i < catalog.sets.size(); ++i) {
        const auto & s = catalog.sets[i];
        if (! is_maximal_independent(g, s) || (i > 0 && s == catalog.sets[i - 1]))
            throw ConstructionError("independent set enumeration produced an invalid or repeated set");
        s.for_each([&](size_t v) { catalog.containing[v].push_back(i); });
        catalog.max_size = std::max(catalog.max_size, s.count());
        catalog.min_size = std::min(catalog.min_size, s.count());
    }
    return catalog;
}

auto search_window(const MisCatalog & catalog) -> KWindow
{
    auto n = catalog.graph->vertex_count();
    KWindow w;
    w.lo = (n + catalog.max_size - 1) / catalog.max_size;
    w.hi = std::min(catalog.graph->min_degree() + 1, n / catalog.min_size);
    return w;
}

namespace {
    enum class Branch { found, none, out_of_budget, cancelled };

    struct SharedState {
        std::atomic<uint64_t> nodes{0};
        uint64_t node_budget;
        std::atomic<bool> budget_exhausted{false};
        // least top-level branch known to hold a solution
        std::atomic<size_t> best_branch{Bitset::npos};
    };

    class ExactCover {
    public:
        ExactCover(const MisCatalog & catalog, size_t k, SharedState & shared, size_t branch) :
            _catalog(catalog),
            _k(k),
            _n(catalog.graph->vertex_count()),
            _shared(shared),
            _branch(branch)
        {
        }

        // Searches below the already chosen `first` set.
        auto run(uint32_t first, const vector<uint32_t> & root_available) -> Branch
        {
            Bitset covered = _catalog.sets[first];
            _chosen.push_back(first);
            vector<uint32_t> available;
            for (auto t : root_available)
                if (! _catalog.sets[t].intersects(covered))
                    available.push_back(t);
            if (! count_node())
                return _stop;
            auto r = search(covered, available);
            return r;
        }

        auto chosen() const -> const vector<uint32_t> & { return _chosen; }

        // Whether an exact cover by `remaining` more sets from `available` is
        // still arithmetically possible.
        static auto feasible(const MisCatalog & catalog, const Bitset & covered, const vector<uint32_t> & available,
            size_t remaining) -> bool
        {
            size_t n = catalog.graph->vertex_count();
            size_t uncovered = n - covered.count();
            if (uncovered == 0 || remaining == 0)
                return uncovered == 0 && remaining == 0;
            if (available.empty())
                return false;
            Bitset reach = covered;
            size_t lo = n, hi = 0;
            for (auto t : available) {
                reach |= catalog.sets[t];
                auto c = catalog.sets[t].count();
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            if (reach.count() != n)
                return false;
            return remaining * lo <= uncovered && uncovered <= remaining * hi;
        }

    private:
        auto count_node() -> bool
        {
            if (_shared.best_branch.load(std::memory_order_relaxed) < _branch) {
                _stop = Branch::cancelled;
                return false;
            }
            if (_shared.budget_exhausted.load(std::memory_order_relaxed)) {
                _stop = Branch::out_of_budget;
                return false;
            }
            if (_shared.nodes.fetch_add(1, std::memory_order_relaxed) + 1 > _shared.node_budget) {
                _shared.budget_exhausted = true;
                _stop = Branch::out_of_budget;
                return false;
            }
            return true;
        }

        auto search(Bitset & covered, const vector<uint32_t> & available) -> Branch
        {
            size_t remaining = _k - _chosen.size();
            if (! feasible(_catalog, covered, available, remaining))
                return Branch::none;
            if (remaining == 0)
                return Branch::found;

            auto v = covered.find_first_zero();
            for (auto s : available) {
                const auto & set = _catalog.sets[s];
                if (! set.test(v))
                    continue;
                if (! count_node())
                    return _stop;
                vector<uint32_t> next;
                next.reserve(available.size());
                for (auto t : available)
                    if (! _catalog.sets[t].intersects(set))
                        next.push_back(t);
                covered |= set;
                _chosen.push_back(s);
                auto r = search(covered, next);
                if (r != Branch::none)
                    return r;
                _chosen.pop_back();
                covered.subtract(set);
            }
            return Branch::none;
        }

        const MisCatalog & _catalog;
        size_t _k, _n;
        SharedState & _shared;
        size_t _branch;
        vector<uint32_t> _chosen;
        Branch _stop = Branch::none;
    };
}

auto find_fall_coloring(const MisCatalog & catalog, size_t k, const SolverOptions & options) -> SearchResult
{
    SearchResult result;
    if (k == 0 || (options.window_pruning && ! search_window(catalog).contains(k)))
        return result;

    auto n = catalog.graph->vertex_count();
    vector<uint32_t> all(catalog.sets.size());
    for (uint32_t i = 0; i < all.size(); ++i)
        all[i] = i;
    if (! ExactCover::feasible(catalog, Bitset(n), all, k))
        return result;

    // top-level branches: the sets holding vertex 0, in catalog order
    const auto & roots = catalog.containing[0];
    SharedState shared;
    shared.node_budget = options.node_budget;

    vector<Branch> outcomes(roots.size(), Branch::cancelled);
    vector<vector<uint32_t>> solutions(roots.size());
    std::atomic<size_t> next_branch{0};

    auto worker = [&] {
        while (true) {
            size_t b = next_branch.fetch_add(1);
            if (b >= roots.size() || b > shared.best_branch.load())
                return;
            ExactCover search(catalog, k, shared, b);
            auto r = search.run(roots[b], all);
            outcomes[b] = r;
            if (r == Branch::found) {
                solutions[b] = search.chosen();
                size_t cur = shared.best_branch.load();
                while (b < cur && ! shared.best_branch.compare_exchange_weak(cur, b)) {
                }
            }
        }
    };

    unsigned workers = std::max(1u, options.workers);
    if (workers == 1)
        worker();
    else {
        vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back(worker);
        for (auto & t : pool)
            t.join();
    }
    result.nodes = shared.nodes.load();

    for (size_t b = 0; b < roots.size(); ++b) {
        switch (outcomes[b]) {
        case Branch::none:
            continue;
        case Branch::found: {
            vector<Bitset> classes;
            for (auto s : solutions[b])
                classes.push_back(catalog.sets[s]);
            auto c = Coloring::from_classes(n, std::move(classes));
            auto check = is_fall(*catalog.graph, c);
            if (! check.ok)
                throw ConstructionError("exact cover produced a non-fall coloring: " + check.describe(*catalog.graph));
            result.outcome = SearchOutcome::found;
            result.coloring = std::move(c);
            return result;
        }
        case Branch::out_of_budget:
        case Branch::cancelled:
            // a lower branch can only be cancelled by budget exhaustion here
            result.outcome = SearchOutcome::inconclusive;
            return result;
        }
    }
    result.outcome = SearchOutcome::none;
    return result;
}

auto find_fall_coloring(const Graph & g, size_t k, const SolverOptions & options) -> SearchResult
{
    auto catalog = enumerate_mis(g, options);
    return find_fall_coloring(catalog, k, options);
}

auto fall_spectrum(const Graph & g, std::optional<size_t> k_min, std::optional<size_t> k_max,
    const SolverOptions & options) -> SpectrumResult
{
    auto start = std::chrono::steady_clock::now();
    auto catalog = enumerate_mis(g, options);

    SpectrumResult r;
    r.graph_name = g.name();
    r.window = search_window(catalog);
    r.k_min = std::max<size_t>(1, k_min.value_or(r.window.lo));
    r.k_max = k_max.value_or(r.window.hi);

    for (size_t k = r.k_min; k <= r.k_max; ++k) {
        auto found = find_fall_coloring(catalog, k, options);
        r.nodes += found.nodes;
        switch (found.outcome) {
        case SearchOutcome::found:
            r.spectrum.push_back(k);
            r.witnesses.emplace(k, std::move(*found.coloring));
            break;
        case SearchOutcome::none:
            break;
        case SearchOutcome::inconclusive:
            r.partial = true;
            r.unresolved.push_back(k);
            break;
        }
    }
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

auto spectrum_to_json_text(const Graph & g, const SpectrumResult & r) -> string
{
    nlohmann::ordered_json doc;
    doc["graph"] = r.graph_name;
    doc["k_min"] = r.k_min;
    doc["k_max"] = r.k_max;
    doc["window"] = {r.window.lo, r.window.hi};
    doc["spectrum"] = r.spectrum;
    doc["partial"] = r.partial;
    doc["unresolved"] = r.unresolved;
    auto witnesses = nlohmann::ordered_json::array();
    for (const auto & [k, c] : r.witnesses) {
        nlohmann::ordered_json w;
        w["k"] = k;
        w["coloring"] = nlohmann::ordered_json::parse(coloring_to_json_text(g, c));
        witnesses.push_back(std::move(w));
    }
    doc["witnesses"] = std::move(witnesses);
    return doc.dump(2) + "\n";
}

}
