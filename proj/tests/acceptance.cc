// Acceptance run: one PASS/FAIL line per criterion, with time limits.
//
// Usage: acceptance [results-dir] [workers]
//
// Criteria 1-5 are run once with one solver worker and once with several;
// every result they produce is written under results-dir/w1 and
// results-dir/wN and compared byte for byte (criterion 10).
//
// Some criteria fail because the claims behind them do not hold for the
// objects involved; they are listed in `expected_failures` with the reason.
// Their lines still read FAIL. The exit status is nonzero when any other
// criterion fails or when an expected failure starts passing.

#include "oracles.hh"
#include "support.hh"

#include <fallkolor/bounds.hh>
#include <fallkolor/coloring.hh>
#include <fallkolor/constructions.hh>
#include <fallkolor/error.hh>
#include <fallkolor/solver.hh>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace fallkolor;
namespace fs = std::filesystem;

namespace {
    struct Outcome {
        bool pass = true;
        std::string detail;
        // result files, by name, produced by this criterion
        std::map<std::string, std::string> files;

        void fail(const std::string & why)
        {
            if (pass)
                detail.clear();
            else
                detail += "; ";
            pass = false;
            detail += why;
        }

        void note(const std::string & what)
        {
            if (pass)
                detail += (detail.empty() ? "" : "; ") + what;
        }
    };

    // A verified fall k-coloring of KG(n,m), collected for the bounds sandwich.
    struct Produced {
        std::uint32_t n, m;
        std::size_t k;
        std::string source;
    };

    std::vector<Produced> produced;

    void record(const Graph & g, const Coloring & c, const std::string & source)
    {
        if (! g.kneser_params() || ! is_fall(g, c).ok)
            return;
        auto [n, m] = *g.kneser_params();
        produced.push_back({n, m, c.k(), source});
    }

    auto set_text(const std::vector<std::size_t> & xs) -> std::string
    {
        std::string s = "{";
        for (std::size_t i = 0; i < xs.size(); ++i)
            s += (i ? "," : "") + std::to_string(xs[i]);
        return s + "}";
    }

    auto kg(std::uint32_t n, std::uint32_t m) -> std::string
    {
        return "KG(" + std::to_string(n) + "," + std::to_string(m) + ")";
    }

    auto check_spectrum(const Graph & g, const SpectrumResult & r, const std::vector<std::size_t> & want, Outcome & o)
    {
        if (r.partial)
            o.fail(g.name() + " unresolved k " + set_text(r.unresolved));
        else if (r.spectrum != want)
            o.fail(g.name() + " spectrum " + set_text(r.spectrum) + ", expected " + set_text(want));
        for (const auto & [k, c] : r.witnesses) {
            auto check = is_fall(g, c);
            if (! check.ok || c.k() != k)
                o.fail(g.name() + " witness for k=" + std::to_string(k) + " does not verify: " + check.describe(g));
        }
    }

    auto criterion_1(unsigned workers) -> Outcome
    {
        Outcome o;
        const std::map<std::uint32_t, std::vector<std::size_t>> table{
            {2, {1}}, {3, {1}}, {4, {2}}, {5, {}}, {6, {}}, {7, {7}}, {8, {8}}, {9, {12}}};
        SolverOptions options;
        options.workers = workers;
        std::uint64_t nodes = 0;
        for (const auto & [n, want] : table) {
            auto g = kneser(n, 2);
            auto r = fall_spectrum(g, std::nullopt, std::nullopt, options);
            nodes += r.nodes;
            check_spectrum(g, r, want, o);
            for (const auto & [k, c] : r.witnesses)
                record(g, c, "spectrum of " + g.name());
            o.files["spectrum-" + g.name() + ".json"] = spectrum_to_json_text(g, r);
            for (const auto & [k, c] : r.witnesses)
                o.files["spectrum-" + g.name() + ".k" + std::to_string(k) + ".json"] =
                    coloring_to_json_text(g, c, "exhaustive search witness");
        }
        o.note("n=2..9 match, emptiness proven for n=5,6, " + std::to_string(nodes) + " nodes");
        return o;
    }

    auto criterion_2(unsigned workers) -> Outcome
    {
        Outcome o;
        SolverOptions options;
        options.workers = workers;
        // search every k from 1 to V by exact cover alone, not just the window
        options.window_pruning = false;
        std::vector<Graph> graphs{cycle_graph(5), Graph(3, {{0, 1}}, "K2+K1")};
        for (const auto & g : graphs) {
            auto r = fall_spectrum(g, 1, g.vertex_count(), options);
            check_spectrum(g, r, {}, o);
            o.files["spectrum-" + g.name() + ".json"] = spectrum_to_json_text(g, r);
        }
        o.note("C5 and K2+K1 have empty spectra over k = 1..V");
        return o;
    }

    auto criterion_3(unsigned) -> Outcome
    {
        Outcome o;
        auto take = [&](const std::function<ConstructionResult()> & make, std::size_t want_k, const std::string & what) {
            try {
                auto r = make();
                auto check = is_fall(*r.graph, r.coloring);
                if (! r.verified || ! check.ok)
                    o.fail(what + " does not verify: " + check.describe(*r.graph));
                else if (r.k != want_k || r.coloring.k() != want_k)
                    o.fail(what + " has k=" + std::to_string(r.k) + ", expected " + std::to_string(want_k));
                record(*r.graph, r.coloring, what);
                o.files[what + ".json"] = coloring_to_json_text(*r.graph, r.coloring, r.provenance);
            }
            catch (const Error & e) {
                o.fail(what + ": " + e.what());
            }
        };
        for (std::uint32_t v : {7u, 9u, 13u, 15u, 19u, 21u})
            take([v] { return coloring_from_design(v, 2, construct_sts(v)); }, v * (v - 1) / 6,
                "design-" + kg(v, 2));
        for (std::uint32_t n : {4u, 8u, 10u, 14u, 16u, 20u})
            take([n] { return star_triangle_coloring(n); }, (n - 1) * (n - 2) / 6 + 1, "star-triangle-" + kg(n, 2));
        o.note("design k = 7,12,26,35,57,70; star+triangle k = 2,8,13,27,36,58");
        return o;
    }

    auto criterion_4(unsigned) -> Outcome
    {
        Outcome o;
        std::ostringstream report;
        for (auto [n, m] : {std::pair{5u, 2u}, {6u, 2u}, {7u, 2u}, {7u, 3u}}) {
            auto h = descent_map_unchecked(n, m);
            auto check = verify_type2_hom(h);
            report << h.source().name() << " -> " << h.target().name() << ": " << check.describe(h) << "\n";
            if (! check.ok)
                o.fail("map " + h.source().name() + " -> " + h.target().name() + " " + check.describe(h));
        }
        for (std::uint32_t n : {7u, 9u}) {
            auto base = coloring_from_design(n, 2, construct_sts(n));
            try {
                auto lifted = lift_coloring(n, 2, base.coloring);
                record(*lifted.graph, lifted.coloring, "lift to " + lifted.graph->name());
                report << "lift " << kg(n, 2) << " -> " << lifted.graph->name() << ": verified\n";
                o.files["lift-" + lifted.graph->name() + ".json"] =
                    coloring_to_json_text(*lifted.graph, lifted.coloring, lifted.provenance);
            }
            catch (const ConstructionError & e) {
                report << "lift " << kg(n, 2) << ": " << e.what() << "\n";
                o.fail("lift of the fall " + std::to_string(base.k) + "-coloring of " + kg(n, 2) + " to " +
                    kg(n + 2, 3) + " is not fall");
            }
        }
        o.files["descent-map-report.txt"] = report.str();
        o.note("descent maps are type-II and both lifts verify");
        return o;
    }

    auto criterion_5(unsigned workers) -> Outcome
    {
        Outcome o;
        auto g = kneser(7, 3);
        SolverOptions options;
        options.workers = workers;
        auto r = find_fall_coloring(g, 8, options);
        std::ostringstream report;
        switch (r.outcome) {
        case SearchOutcome::found:
            if (is_fall(g, *r.coloring).ok) {
                record(g, *r.coloring, "search on KG(7,3)");
                o.files["search-KG(7,3).k8.json"] = coloring_to_json_text(g, *r.coloring, "exhaustive search witness");
                report << "k=8: found\n";
            }
            else
                o.fail("solver witness does not verify");
            break;
        case SearchOutcome::none:
            report << "k=8: none\n";
            o.fail("no fall 8-coloring of KG(7,3) exists (search complete; minimum degree " +
                std::to_string(g.min_degree()) + " caps k at " + std::to_string(g.min_degree() + 1) + ")");
            break;
        case SearchOutcome::inconclusive:
            report << "k=8: inconclusive\n";
            o.fail("search for k=8 inconclusive after " + std::to_string(r.nodes) + " nodes");
            break;
        }
        try {
            auto ext = star_extension_coloring(7, 3);
            record(*ext.graph, ext.coloring, "star extension of KG(7,3)");
            report << "star extension: verified fall " << ext.k << "-coloring\n";
            o.files["star-extension-KG(7,3).json"] = coloring_to_json_text(*ext.graph, ext.coloring, ext.provenance);
        }
        catch (const RecipeUnverified & e) {
            report << "star extension: " << e.what() << "\n";
        }
        o.files["search-KG(7,3).txt"] = report.str();
        o.note("fall 8-coloring of KG(7,3) found and verified");
        return o;
    }

    auto criterion_6() -> Outcome
    {
        Outcome o;
        std::size_t checked = 0;
        for (const auto & p : produced) {
            if (p.n < 2 * p.m)
                continue;
            ++checked;
            auto b = fall_bounds(p.n, p.m);
            if (p.k < b.lower || p.k > b.upper)
                o.fail(p.source + ": k=" + std::to_string(p.k) + " outside [" + std::to_string(b.lower) + ", " +
                    std::to_string(b.upper) + "]");
        }
        auto b72 = fall_bounds(7, 2), b92 = fall_bounds(9, 2);
        if (! (b72.lower == 6 && b72.upper == 11 && b72.lower <= 7 && 7 <= b72.upper))
            o.fail("(7,2) bounds are [" + std::to_string(b72.lower) + ", " + std::to_string(b72.upper) + "]");
        if (! (b92.lower == 11 && b92.upper == 15 && b92.lower <= 12 && 12 <= b92.upper))
            o.fail("(9,2) bounds are [" + std::to_string(b92.lower) + ", " + std::to_string(b92.upper) + "]");
        if (checked == 0)
            o.fail("no colorings with n >= 2m were produced");
        o.note(std::to_string(checked) + " colorings within bounds; 6 <= 7 <= 11 and 11 <= 12 <= 15");
        return o;
    }

    auto criterion_7() -> Outcome
    {
        Outcome o;
        for (std::uint32_t n : {5u, 6u, 7u}) {
            auto g = kneser(n, 2);
            auto h = hilton_milner(n, 2);
            std::size_t largest = 0, sets = 0;
            std::vector<Vertex> chosen;
            std::function<void(Vertex)> grow = [&](Vertex next) {
                if (! chosen.empty()) {
                    ++sets;
                    bool common = false;
                    for (std::uint32_t x = 1; x <= n && ! common; ++x) {
                        bool all = true;
                        for (auto v : chosen)
                            all = all && g.label(v).contains(x);
                        common = all;
                    }
                    if (! common)
                        largest = std::max(largest, chosen.size());
                }
                for (Vertex v = next; v < g.vertex_count(); ++v) {
                    bool independent = true;
                    for (auto u : chosen)
                        independent = independent && ! g.adjacent(u, v);
                    if (independent) {
                        chosen.push_back(v);
                        grow(v + 1);
                        chosen.pop_back();
                    }
                }
            };
            grow(0);
            if (h != 3)
                o.fail("h(" + std::to_string(n) + ",2) = " + std::to_string(h));
            if (largest > h)
                o.fail(g.name() + " has a non-intersecting independent set of size " + std::to_string(largest));
            o.note(g.name() + ": " + std::to_string(sets) + " independent sets, largest non-intersecting " +
                std::to_string(largest));
        }
        return o;
    }

    auto criterion_8() -> Outcome
    {
        Outcome o;
        for (std::uint32_t n = 5; n <= 9; ++n) {
            auto g = kneser(n, 2);
            auto catalog = enumerate_mis(g);
            std::size_t stars = 0, triangles = 0;
            for (const auto & s : catalog.sets) {
                std::vector<unsigned> hits(n + 1, 0);
                std::set<std::uint32_t> support;
                s.for_each([&](std::size_t v) {
                    for (auto x : g.label(static_cast<Vertex>(v)).elements()) {
                        ++hits[x];
                        support.insert(x);
                    }
                });
                bool star = s.count() == n - 1 && std::find(hits.begin(), hits.end(), n - 1) != hits.end();
                bool triangle = s.count() == 3 && support.size() == 3;
                if (star)
                    ++stars;
                else if (triangle)
                    ++triangles;
                else
                    o.fail(g.name() + " has a maximal independent set of size " + std::to_string(s.count()) +
                        " that is neither a star nor a triangle");
            }
            if (stars != n || triangles != n * (n - 1) * (n - 2) / 6)
                o.fail(g.name() + ": " + std::to_string(stars) + " stars, " + std::to_string(triangles) + " triangles");
        }
        o.note("every MIS of KG(n,2), n=5..9, is a complete star or a triangle");
        return o;
    }

    auto criterion_9() -> Outcome
    {
        Outcome o;
        const std::vector<std::size_t> expected_counts{1, 1, 2, 6, 21, 112, 853};
        std::size_t total = 0;
        for (unsigned n = 1; n <= 7; ++n) {
            auto corpus = oracle::connected_graphs(n);
            if (corpus.size() != expected_counts[n - 1])
                o.fail(std::to_string(corpus.size()) + " connected graphs on " + std::to_string(n) +
                    " vertices, expected " + std::to_string(expected_counts[n - 1]));
            for (const auto & sg : corpus) {
                auto m = sg.matrix();
                auto g = to_graph(m, "G" + std::to_string(n) + "-" + std::to_string(sg.edges));
                auto r = fall_spectrum(g);
                auto want = oracle::fall_spectrum(m);
                std::set<unsigned> got(r.spectrum.begin(), r.spectrum.end());
                if (r.partial || got != want)
                    o.fail(g.name() + " spectrum " + set_text(r.spectrum) + " disagrees with brute force");
                ++total;
            }
        }
        o.note(std::to_string(total) + " connected graphs on 1..7 vertices agree with brute force");
        return o;
    }

    void write_results(const fs::path & dir, const std::map<std::string, std::string> & files)
    {
        fs::create_directories(dir);
        for (const auto & [name, text] : files) {
            std::ofstream f(dir / name, std::ios::binary);
            f << text;
        }
    }

    auto read_bytes(const fs::path & p) -> std::string
    {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    auto criterion_10(const fs::path & a, const fs::path & b) -> Outcome
    {
        Outcome o;
        std::set<std::string> names;
        for (const auto & dir : {a, b})
            for (const auto & entry : fs::directory_iterator(dir))
                names.insert(entry.path().filename().string());
        for (const auto & name : names) {
            if (! fs::exists(a / name) || ! fs::exists(b / name))
                o.fail(name + " produced by only one run");
            else if (read_bytes(a / name) != read_bytes(b / name))
                o.fail(name + " differs between worker counts");
        }
        o.note(std::to_string(names.size()) + " result files byte-identical across worker counts");
        return o;
    }

    struct Criterion {
        int number;
        std::string title;
        double limit_seconds;
    };

    // Criteria whose claims are false for the objects involved.
    const std::map<int, std::string> expected_failures{
        {4, "the descent map violates condition 2 of a type-II homomorphism and its lifts are not fall colorings"},
        {5, "KG(7,3) is 4-regular, so no fall coloring has more than 5 colors"},
        {6, "the upper bound C(n,2) - C(n-2,2) = 2n - 3 is below the verified k for n >= 13"},
    };
}

auto main(int argc, char * argv[]) -> int
{
    fs::path results = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance-results");
    unsigned many = argc > 2 ? static_cast<unsigned>(std::stoul(argv[2]))
                             : std::max(4u, std::min(8u, std::thread::hardware_concurrency()));
    fs::remove_all(results);

    int failed = 0, unexpected = 0;
    std::ostringstream summary;
    auto report = [&](const Criterion & c, const Outcome & o, double seconds) {
        bool pass = o.pass && seconds <= c.limit_seconds;
        std::string detail = o.detail;
        if (o.pass && ! pass)
            detail = "took longer than " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
        bool expected = expected_failures.count(c.number);
        std::ostringstream line;
        line << (pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.number << "  " << c.title << ": " << detail
             << " (" << std::fixed << std::setprecision(2) << seconds << " s)";
        if (! pass && expected)
            line << " [expected failure: " << expected_failures.at(c.number) << "]";
        if (pass && expected)
            line << " [expected to fail but passed]";
        std::cout << line.str() << std::endl;
        summary << line.str() << "\n";
        if (! pass)
            ++failed;
        if (pass == expected)
            ++unexpected;
    };
    auto timed = [](const std::function<Outcome()> & f) {
        auto start = std::chrono::steady_clock::now();
        auto o = f();
        return std::pair{o, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
    };

    const std::vector<std::pair<Criterion, std::function<Outcome(unsigned)>>> solver_criteria{
        {{1, "spectrum of KG(n,2) vs closed form", 300}, criterion_1},
        {{2, "negative controls", 1}, criterion_2},
        {{3, "constructions verify", 30}, criterion_3},
        {{4, "descent map and lifts", 60}, criterion_4},
        {{5, "fall 8-coloring of KG(7,3)", 600}, criterion_5},
    };

    for (const auto & [c, f] : solver_criteria) {
        auto [o, seconds] = timed([&] { return f(1); });
        write_results(results / "w1", o.files);
        report(c, o, seconds);
    }
    {
        auto [o, seconds] = timed(criterion_6);
        report({6, "bounds sandwich", 60}, o, seconds);
    }
    {
        auto [o, seconds] = timed(criterion_7);
        report({7, "Hilton-Milner bound on KG(n,2), n=5,6,7", 10}, o, seconds);
    }
    {
        auto [o, seconds] = timed(criterion_8);
        report({8, "maximal independent sets of KG(n,2) are stars or triangles", 60}, o, seconds);
    }
    {
        auto [o, seconds] = timed(criterion_9);
        report({9, "spectra of all connected graphs up to 7 vertices vs brute force", 600}, o, seconds);
    }
    {
        auto [o, seconds] = timed([&] {
            auto saved = produced;
            for (const auto & [c, f] : solver_criteria)
                write_results(results / ("w" + std::to_string(many)), f(many).files);
            produced = saved;
            return criterion_10(results / "w1", results / ("w" + std::to_string(many)));
        });
        o.note("workers 1 and " + std::to_string(many));
        report({10, "determinism across worker counts", 1200}, o, seconds);
    }

    auto total = "acceptance: " + std::to_string(10 - failed) + " passed, " + std::to_string(failed) + " failed";
    if (unexpected)
        total += ", " + std::to_string(unexpected) + " unexpected";
    std::cout << total << std::endl;
    summary << total << "\n";
    std::ofstream(results / "summary.txt", std::ios::binary) << summary.str();
    return unexpected ? 1 : 0;
}
