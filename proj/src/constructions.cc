#include <fallkolor/constructions.hh>
#include <fallkolor/error.hh>

#include <algorithm>

using std::string;
using std::uint32_t;
using std::vector;

namespace fallkolor {

namespace {
    auto param_text(uint32_t n, uint32_t m) -> string
    {
        return "(" + std::to_string(n) + "," + std::to_string(m) + ")";
    }

    auto finish(std::shared_ptr<const Graph> g, Coloring c, string provenance) -> ConstructionResult
    {
        auto check = is_fall(*g, c);
        if (! check.ok)
            throw ConstructionError(provenance + " on " + g->name() + " failed verification: " + check.describe(*g));
        auto k = c.k();
        return ConstructionResult{std::move(g), std::move(c), k, std::move(provenance), true};
    }

    template <typename F>
    void for_each_subset(const vector<uint32_t> & items, uint32_t size, F && f)
    {
        vector<uint32_t> idx(size), chosen(size);
        for (uint32_t i = 0; i < size; ++i)
            idx[i] = i;
        if (size > items.size())
            return;
        while (true) {
            for (uint32_t i = 0; i < size; ++i)
                chosen[i] = items[idx[i]];
            f(chosen);
            int i = static_cast<int>(size) - 1;
            while (i >= 0 && idx[i] == items.size() - size + i)
                --i;
            if (i < 0)
                return;
            ++idx[i];
            for (uint32_t j = i + 1; j < size; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }

    auto design_text(const BlockDesign & d) -> string
    {
        return std::to_string(d.t) + "-(" + std::to_string(d.v) + "," + std::to_string(d.k) + "," +
            std::to_string(d.lambda) + ")";
    }
}

auto coloring_from_design(uint32_t n, uint32_t m, const BlockDesign & d) -> ConstructionResult
{
    if (m < 1 || 2 * m > n)
        throw ParameterError("design coloring needs 1 <= m <= n/2, got " + param_text(n, m));
    if (d.t != m || d.v != n || d.k != 2 * m - 1 || d.lambda != 1)
        throw ParameterError("design coloring of KG" + param_text(n, m) + " needs a " + std::to_string(m) + "-(" +
            std::to_string(n) + "," + std::to_string(2 * m - 1) + ",1) design, got " + design_text(d));
    auto report = verify_design(d);
    if (! report.pass)
        throw ParameterError("design is not a " + design_text(d) + " design: " + report.witness->to_string() +
            " lies in " + std::to_string(report.witness_count) + " blocks");

    auto g = std::make_shared<const Graph>(kneser(n, m));
    vector<Color> assignment(g->vertex_count(), 0);
    for (Color b = 0; b < d.blocks.size(); ++b)
        for_each_subset(d.blocks[b].elements(), m, [&](const vector<uint32_t> & sub) {
            assignment[colex_rank(SubsetLabel(n, sub))] = b;
        });
    Coloring c(d.blocks.size(), std::move(assignment));
    return finish(std::move(g), std::move(c), "design coloring from a " + design_text(d) + " design");
}

auto star_triangle_coloring(uint32_t n) -> ConstructionResult
{
    if (n < 4 || (n % 6 != 2 && n % 6 != 4))
        throw ParameterError("star plus triangles partition of K_" + std::to_string(n) +
            " needs n >= 4 and n = 2 or 4 mod 6");
    auto sts = construct_sts(n - 1);
    auto g = std::make_shared<const Graph>(kneser(n, 2));

    // class 0 is the star at n, class i+1 the i-th triangle
    vector<Color> assignment(g->vertex_count(), 0);
    for (Color b = 0; b < sts.blocks.size(); ++b)
        for_each_subset(sts.blocks[b].elements(), 2, [&](const vector<uint32_t> & pair) {
            assignment[colex_rank(SubsetLabel(n, pair))] = b + 1;
        });
    Coloring c(sts.blocks.size() + 1, std::move(assignment));
    return finish(std::move(g), std::move(c), "complete star at " + std::to_string(n) + " plus STS(" +
            std::to_string(n - 1) + ") triangles");
}

namespace {
    void check_descent_hypotheses(uint32_t n, uint32_t m)
    {
        if (m < 2)
            throw ParameterError("descent map needs m >= 2, got " + param_text(n, m));
        if (n <= 2 * m)
            throw ParameterError("descent map needs n > 2m, got " + param_text(n, m));
    }
}

auto descent_image(uint32_t n, uint32_t m, const SubsetLabel & a) -> SubsetLabel
{
    check_descent_hypotheses(n, m);
    if (a.n() != n + 2 || a.size() != m + 1)
        throw ParameterError("descent map input must be an " + std::to_string(m + 1) + "-subset of [" +
            std::to_string(n + 2) + "], got " + a.to_string());
    vector<uint32_t> out;
    if (! (a.contains(n + 1) && a.contains(n + 2))) {
        out.assign(a.elements().begin(), a.elements().end() - 1);
    }
    else {
        for (auto x : a.elements())
            if (x <= n)
                out.push_back(x);
        uint32_t fill = n;
        while (a.contains(fill))
            --fill;
        out.push_back(fill);
        std::sort(out.begin(), out.end());
    }
    return SubsetLabel(n, std::move(out));
}

auto descent_map_unchecked(uint32_t n, uint32_t m) -> VertexMap
{
    check_descent_hypotheses(n, m);
    auto source = std::make_shared<const Graph>(kneser(n + 2, m + 1));
    auto target = std::make_shared<const Graph>(kneser(n, m));
    vector<Vertex> images(source->vertex_count());
    for (Vertex v = 0; v < images.size(); ++v)
        images[v] = static_cast<Vertex>(colex_rank(descent_image(n, m, source->label(v))));
    return VertexMap(source, target, std::move(images));
}

auto descent_map(uint32_t n, uint32_t m) -> VertexMap
{
    auto h = descent_map_unchecked(n, m);
    auto check = verify_type2_hom(h);
    if (! check.ok)
        throw ConstructionError("descent map " + h.source().name() + " -> " + h.target().name() +
            " is not a type-II homomorphism: " + check.describe(h));
    return h;
}

auto lift_coloring(uint32_t n, uint32_t m, const Coloring & c) -> ConstructionResult
{
    auto h = descent_map_unchecked(n, m);
    auto input_check = is_fall(h.target(), c);
    if (! input_check.ok)
        throw ParameterError("lift input is not a fall coloring of " + h.target().name() + ": " +
            input_check.describe(h.target()));
    auto lifted = pullback_coloring(h, c, true);
    string provenance = "lift of a fall " + std::to_string(c.k()) + "-coloring of " + h.target().name() +
        " along the descent map";
    auto check = is_fall(h.source(), lifted);
    if (! check.ok)
        throw ConstructionError(provenance + " on " + h.source().name() + " failed verification: " +
            check.describe(h.source()) + "; descent map " + verify_type2_hom(h).describe(h));
    return finish(h.source_ptr(), std::move(lifted), std::move(provenance));
}

auto star_extension_coloring(uint32_t n, uint32_t m, const std::optional<BlockDesign> & design) -> ConstructionResult
{
    if (m < 2 || 2 * m > n)
        throw ParameterError("star extension needs 2 <= m <= n/2, got " + param_text(n, m));

    BlockDesign d;
    if (design)
        d = *design;
    else if (m == 3) {
        try {
            d = construct_sts(n);
        }
        catch (const ParameterError & e) {
            throw ParameterError("no 2-(" + std::to_string(n) + ",3,1) design available: " + e.what());
        }
    }
    else
        throw ParameterError("star extension of KG" + param_text(n, m) + " needs a user-supplied " +
            std::to_string(m - 1) + "-(" + std::to_string(n) + "," + std::to_string(2 * m - 3) + ",1) design");

    if (d.t != m - 1 || d.v != n || d.k != 2 * m - 3 || d.lambda != 1)
        throw ParameterError("star extension of KG" + param_text(n, m) + " needs a " + std::to_string(m - 1) + "-(" +
            std::to_string(n) + "," + std::to_string(2 * m - 3) + ",1) design, got " + design_text(d));
    auto report = verify_design(d);
    if (! report.pass)
        throw ParameterError("design is not a " + design_text(d) + " design: " + report.witness->to_string() +
            " lies in " + std::to_string(report.witness_count) + " blocks");

    // block index of every (m-1)-subset of [n], by colex rank
    vector<Color> block_of(binomial(n, m - 1), 0);
    for (Color b = 0; b < d.blocks.size(); ++b)
        for_each_subset(d.blocks[b].elements(), m - 1, [&](const vector<uint32_t> & sub) {
            block_of[colex_rank(SubsetLabel(n, sub))] = b;
        });

    auto g = std::make_shared<const Graph>(kneser(n, m));
    vector<Color> assignment(g->vertex_count(), 0);
    for (Vertex v = 0; v < g->vertex_count(); ++v) {
        const auto & a = g->label(v);
        if (a.contains(n))
            continue;
        vector<uint32_t> rest(a.elements().begin(), a.elements().end() - 1);
        assignment[v] = block_of[colex_rank(SubsetLabel(n, std::move(rest)))] + 1;
    }
    Coloring c(d.blocks.size() + 1, std::move(assignment));
    string provenance = "star extension at " + std::to_string(n) + " of the " + design_text(d) + " design coloring";

    auto check = is_fall(*g, c);
    if (! check.ok)
        throw RecipeUnverified("recipe unverified: " + provenance + " on " + g->name() + ": " + check.describe(*g));
    return finish(std::move(g), std::move(c), std::move(provenance));
}

}
