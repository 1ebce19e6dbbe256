#include <fallkolor/coloring.hh>
#include <fallkolor/error.hh>

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

using std::size_t;
using std::string;
using std::vector;

namespace fallkolor {

Coloring::Coloring(size_t k, vector<Color> assignment) : _assignment(std::move(assignment))
{
    _classes.assign(k, Bitset(_assignment.size()));
    for (Vertex v = 0; v < _assignment.size(); ++v) {
        if (_assignment[v] >= k)
            throw ParameterError("vertex " + std::to_string(v + 1) + " has color " + std::to_string(_assignment[v] + 1) +
                " outside [" + std::to_string(k) + "]");
        _classes[_assignment[v]].set(v);
    }
}

auto Coloring::from_classes(size_t vertex_count, vector<Bitset> classes) -> Coloring
{
    vector<Color> assignment(vertex_count, 0);
    Bitset seen(vertex_count);
    for (Color c = 0; c < classes.size(); ++c) {
        if (classes[c].size() != vertex_count)
            throw ParameterError("color class has wrong width");
        if (classes[c].intersects(seen))
            throw ParameterError("color classes overlap");
        seen |= classes[c];
        classes[c].for_each([&](size_t v) { assignment[v] = c; });
    }
    if (seen.count() != vertex_count)
        throw ParameterError("color classes do not cover every vertex");
    Coloring result;
    result._assignment = std::move(assignment);
    result._classes = std::move(classes);
    return result;
}

auto Coloring::canonical() const -> Coloring
{
    vector<Color> order(k());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Color a, Color b) {
        return _classes[a].find_first() < _classes[b].find_first();
    });
    vector<Bitset> classes;
    classes.reserve(k());
    for (auto c : order)
        classes.push_back(_classes[c]);
    return from_classes(vertex_count(), std::move(classes));
}

auto vertex_name(const Graph & g, Vertex v) -> string
{
    return g.has_labels() ? g.label(v).to_string() : std::to_string(v + 1);
}

namespace {
    void require_shape(const Graph & g, const Coloring & c)
    {
        if (g.vertex_count() != c.vertex_count())
            throw ParameterError("coloring has " + std::to_string(c.vertex_count()) + " vertices but " + g.name() +
                " has " + std::to_string(g.vertex_count()));
    }

    auto least_missing_color(const Graph & g, const Coloring & c, Vertex v) -> std::optional<Color>
    {
        Bitset closed = g.closed_neighborhood(v);
        for (Color col = 0; col < c.k(); ++col)
            if (! closed.intersects(c.color_class(col)))
                return col;
        return std::nullopt;
    }
}

auto is_proper(const Graph & g, const Coloring & c) -> ProperCheck
{
    require_shape(g, c);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        Bitset clash = g.neighbors(u) & c.color_class(c.color(u));
        auto v = clash.find_next(u + 1);
        if (v != Bitset::npos)
            return {false, Edge{u, static_cast<Vertex>(v)}};
    }
    return {};
}

auto colorful_vertices(const Graph & g, const Coloring & c) -> Bitset
{
    require_shape(g, c);
    Bitset result(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (! least_missing_color(g, c, v))
            result.set(v);
    return result;
}

auto is_fall(const Graph & g, const Coloring & c) -> FallCheck
{
    auto proper = is_proper(g, c);
    if (! proper.ok)
        return {false, proper.monochromatic_edge, std::nullopt, std::nullopt};
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (auto missing = least_missing_color(g, c, v))
            return {false, std::nullopt, v, missing};
    return {};
}

auto FallCheck::describe(const Graph & g) const -> string
{
    if (ok)
        return "fall coloring";
    if (monochromatic_edge)
        return "monochromatic edge " + vertex_name(g, monochromatic_edge->first) + " -- " +
            vertex_name(g, monochromatic_edge->second);
    return "vertex " + vertex_name(g, *non_colorful_vertex) + " does not see color " + std::to_string(*missing_color + 1);
}

VertexMap::VertexMap(std::shared_ptr<const Graph> source, std::shared_ptr<const Graph> target, vector<Vertex> map) :
    _source(std::move(source)),
    _target(std::move(target)),
    _map(std::move(map))
{
    if (! _source || ! _target)
        throw ParameterError("vertex map needs both endpoint graphs");
    if (_map.size() != _source->vertex_count())
        throw ParameterError("vertex map is not total over " + _source->name());
    for (auto x : _map)
        if (x >= _target->vertex_count())
            throw ParameterError("vertex map image " + std::to_string(x) + " outside " + _target->name());
}

auto VertexMap::identity(std::shared_ptr<const Graph> g) -> VertexMap
{
    vector<Vertex> map(g->vertex_count());
    std::iota(map.begin(), map.end(), 0);
    return VertexMap(g, g, std::move(map));
}

auto verify_type2_hom(const VertexMap & h) -> HomCheck
{
    const Graph & src = h.source();
    const Graph & tgt = h.target();

    for (auto [u, v] : src.edges())
        if (! tgt.adjacent(h(u), h(v))) {
            HomCheck r;
            r.ok = false;
            r.violated_condition = 1;
            r.source_edge = Edge{u, v};
            return r;
        }

    vector<Bitset> preimage(tgt.vertex_count(), Bitset(src.vertex_count()));
    for (Vertex v = 0; v < src.vertex_count(); ++v)
        preimage[h(v)].set(v);

    for (Vertex v1 = 0; v1 < tgt.vertex_count(); ++v1) {
        std::optional<HomCheck> failure;
        tgt.neighbors(v1).for_each([&](size_t u1) {
            if (failure)
                return;
            preimage[v1].for_each([&](size_t v) {
                if (failure)
                    return;
                if (! src.neighbors(static_cast<Vertex>(v)).intersects(preimage[u1])) {
                    HomCheck r;
                    r.ok = false;
                    r.violated_condition = 2;
                    r.target_edge = Edge{static_cast<Vertex>(u1), v1};
                    r.source_vertex = static_cast<Vertex>(v);
                    failure = r;
                }
            });
        });
        if (failure)
            return *failure;
    }
    return {};
}

auto HomCheck::describe(const VertexMap & h) const -> string
{
    if (ok)
        return "type-II homomorphism";
    if (violated_condition == 1)
        return "condition 1: source edge " + vertex_name(h.source(), source_edge->first) + " -- " +
            vertex_name(h.source(), source_edge->second) + " maps to non-edge " +
            vertex_name(h.target(), h(source_edge->first)) + ", " + vertex_name(h.target(), h(source_edge->second));
    return "condition 2: target edge " + vertex_name(h.target(), target_edge->first) + " -- " +
        vertex_name(h.target(), target_edge->second) + ": preimage vertex " + vertex_name(h.source(), *source_vertex) +
        " has no neighbor mapped to " + vertex_name(h.target(), target_edge->first);
}

auto pullback_coloring(const VertexMap & h, const Coloring & c, bool checked) -> Coloring
{
    if (c.vertex_count() != h.target().vertex_count())
        throw ParameterError("coloring does not match the map's target " + h.target().name());
    vector<Color> assignment(h.source().vertex_count());
    for (Vertex v = 0; v < assignment.size(); ++v)
        assignment[v] = c.color(h(v));
    Coloring result(c.k(), std::move(assignment));

    if (checked && verify_type2_hom(h).ok && is_fall(h.target(), c).ok) {
        auto check = is_fall(h.source(), result);
        if (! check.ok)
            throw ConstructionError("pullback along a type-II map lost the fall property: " + check.describe(h.source()));
    }
    return result;
}

auto compose_maps(const VertexMap & f1, const VertexMap & f2) -> VertexMap
{
    if (f1.target_ptr() != f2.source_ptr() && ! (f1.target() == f2.source()))
        throw ParameterError("cannot compose: " + f1.target().name() + " is not " + f2.source().name());
    vector<Vertex> map(f1.source().vertex_count());
    for (Vertex v = 0; v < map.size(); ++v)
        map[v] = f2(f1(v));
    return VertexMap(f1.source_ptr(), f2.target_ptr(), std::move(map));
}

auto coloring_to_json_text(const Graph & g, const Coloring & c, const string & provenance) -> string
{
    if (g.vertex_count() != c.vertex_count())
        throw ParameterError("coloring does not match " + g.name());
    auto canon = c.canonical();
    nlohmann::ordered_json doc;
    doc["graph"] = g.name();
    if (! provenance.empty())
        doc["provenance"] = provenance;
    doc["k"] = canon.k();
    auto classes = nlohmann::ordered_json::array();
    for (const auto & cls : canon.classes()) {
        auto members = nlohmann::ordered_json::array();
        cls.for_each([&](size_t v) {
            if (g.has_labels())
                members.push_back(g.label(static_cast<Vertex>(v)).to_string());
            else
                members.push_back(v + 1);
        });
        classes.push_back(std::move(members));
    }
    doc["classes"] = std::move(classes);
    return doc.dump(2) + "\n";
}

void write_coloring(std::ostream & out, const Graph & g, const Coloring & c, const string & provenance)
{
    out << coloring_to_json_text(g, c, provenance);
}

auto read_coloring(std::istream & in, const Graph & g) -> ColoringFile
{
    nlohmann::json doc;
    try {
        in >> doc;
    }
    catch (const nlohmann::json::exception & e) {
        throw FormatError(string("coloring file is not valid JSON: ") + e.what());
    }
    if (! doc.is_object() || ! doc.contains("k") || ! doc.contains("classes") || ! doc["k"].is_number_unsigned() ||
        ! doc["classes"].is_array())
        throw FormatError("coloring file needs an unsigned 'k' and a 'classes' array");

    size_t k = doc["k"].get<size_t>();
    if (doc["classes"].size() != k)
        throw FormatError("coloring file declares k = " + std::to_string(k) + " but lists " +
            std::to_string(doc["classes"].size()) + " classes");

    vector<Bitset> classes;
    for (const auto & cls : doc["classes"]) {
        if (! cls.is_array())
            throw FormatError("each color class must be a list");
        Bitset b(g.vertex_count());
        for (const auto & item : cls) {
            Vertex v;
            if (item.is_string()) {
                g.require_labels("reading subset-labelled colorings");
                auto lbl = SubsetLabel::parse(item.get<string>(), g.label(0).n());
                auto found = g.find_label(lbl);
                if (! found)
                    throw FormatError("label " + lbl.to_string() + " is not a vertex of " + g.name());
                v = *found;
            }
            else if (item.is_number_unsigned()) {
                auto idx = item.get<size_t>();
                if (idx < 1 || idx > g.vertex_count())
                    throw FormatError("vertex index " + std::to_string(idx) + " out of range");
                v = static_cast<Vertex>(idx - 1);
            }
            else
                throw FormatError("vertex entries must be labels or 1-based integers");
            if (b.test(v))
                throw FormatError("vertex " + vertex_name(g, v) + " listed twice in one class");
            b.set(v);
        }
        classes.push_back(std::move(b));
    }

    ColoringFile result{[&] {
        try {
            return Coloring::from_classes(g.vertex_count(), std::move(classes));
        }
        catch (const ParameterError & e) {
            throw FormatError(string("coloring file: ") + e.what());
        }
    }(), doc.value("graph", string{}), doc.value("provenance", string{})};
    return result;
}

}
