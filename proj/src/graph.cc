#include <fallkolor/error.hh>
#include <fallkolor/graph.hh>

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

using std::size_t;
using std::string;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace fallkolor {

Graph::Graph(size_t vertex_count, const vector<Edge> & edges, string name, vector<SubsetLabel> labels,
    std::optional<KneserParams> kneser) :
    _name(std::move(name)),
    _labels(std::move(labels)),
    _kneser(kneser)
{
    _rows.assign(vertex_count, Bitset(vertex_count));
    for (auto [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count)
            throw ParameterError("edge endpoint out of range in " + _name);
        if (u == v)
            throw ParameterError("self-loop at vertex " + std::to_string(u + 1) + " in " + _name);
        if (_rows[u].test(v))
            throw ParameterError("duplicate edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) + " in " + _name);
        _rows[u].set(v);
        _rows[v].set(u);
    }
    _edge_count = edges.size();
    check_labels();
}

Graph::Graph(vector<Bitset> rows, string name, vector<SubsetLabel> labels, std::optional<KneserParams> kneser) :
    _rows(std::move(rows)),
    _name(std::move(name)),
    _labels(std::move(labels)),
    _kneser(kneser)
{
    size_t degree_sum = 0;
    for (size_t v = 0; v < _rows.size(); ++v) {
        if (_rows[v].size() != _rows.size())
            throw ParameterError("adjacency row has wrong width in " + _name);
        if (_rows[v].test(v))
            throw ParameterError("self-loop at vertex " + std::to_string(v + 1) + " in " + _name);
        _rows[v].for_each([&](size_t u) {
            if (! _rows[u].test(v))
                throw ParameterError("asymmetric adjacency in " + _name);
        });
        degree_sum += _rows[v].count();
    }
    _edge_count = degree_sum / 2;
    check_labels();
}

void Graph::check_labels()
{
    if (_kneser) {
        if (_labels.size() != _rows.size() || binomial(_kneser->n, _kneser->m) != _rows.size())
            throw ParameterError("Kneser graph " + _name + " must carry one label per m-subset");
        for (Vertex v = 0; v < _labels.size(); ++v)
            if (_labels[v].n() != _kneser->n || _labels[v].size() != _kneser->m || colex_rank(_labels[v]) != v)
                throw ParameterError("Kneser graph " + _name + " labels are not in colex order");
        for (Vertex u = 0; u < _labels.size(); ++u)
            for (Vertex v = u + 1; v < _labels.size(); ++v)
                if (_rows[u].test(v) != _labels[u].disjoint_from(_labels[v]))
                    throw ParameterError("Kneser graph " + _name + " adjacency disagrees with label disjointness");
    }
    if (_labels.empty())
        return;
    if (_labels.size() != _rows.size())
        throw ParameterError("label count does not match vertex count in " + _name);
    vector<const SubsetLabel *> sorted;
    for (const auto & l : _labels)
        sorted.push_back(&l);
    std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return a->elements() < b->elements(); });
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i - 1]->elements() == sorted[i]->elements())
            throw ParameterError("duplicate vertex label " + sorted[i]->to_string() + " in " + _name);
}

auto Graph::min_degree() const -> size_t
{
    size_t best = vertex_count();
    for (Vertex v = 0; v < vertex_count(); ++v)
        best = std::min(best, degree(v));
    return best;
}

auto Graph::closed_neighborhood(Vertex v) const -> Bitset
{
    if (v >= vertex_count())
        throw ParameterError("vertex index " + std::to_string(v) + " out of range");
    Bitset b = _rows[v];
    b.set(v);
    return b;
}

auto Graph::edges() const -> vector<Edge>
{
    vector<Edge> out;
    out.reserve(_edge_count);
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (auto v = _rows[u].find_next(u + 1); v != Bitset::npos; v = _rows[u].find_next(v + 1))
            out.emplace_back(u, static_cast<Vertex>(v));
    return out;
}

auto Graph::find_label(const SubsetLabel & s) const -> std::optional<Vertex>
{
    if (_kneser && s.n() == _kneser->n && s.size() == _kneser->m)
        return static_cast<Vertex>(colex_rank(s));
    for (Vertex v = 0; v < _labels.size(); ++v)
        if (_labels[v].elements() == s.elements())
            return v;
    return std::nullopt;
}

void Graph::require_labels(const string & operation) const
{
    if (! has_labels())
        throw ParameterError(operation + " needs a labelled graph, but " + _name + " has no vertex labels");
}

auto kneser(uint32_t n, uint32_t m, uint64_t vertex_budget) -> Graph
{
    if (m < 1)
        throw ParameterError("m must be at least 1");
    if (m > n)
        throw ParameterError("m > n");
    uint64_t count = binomial(n, m);
    if (count > vertex_budget)
        throw BudgetError("KG(" + std::to_string(n) + "," + std::to_string(m) + ") has " + std::to_string(count) +
            " vertices, above the budget of " + std::to_string(vertex_budget));

    vector<SubsetLabel> labels;
    labels.reserve(count);
    for (uint64_t r = 0; r < count; ++r)
        labels.push_back(colex_unrank(r, n, m));

    vector<Bitset> rows(count, Bitset(count));
    if (n <= 64) {
        vector<uint64_t> masks;
        masks.reserve(count);
        for (const auto & l : labels) {
            uint64_t mask = 0;
            for (auto e : l.elements())
                mask |= uint64_t{1} << (e - 1);
            masks.push_back(mask);
        }
        for (size_t a = 0; a < count; ++a)
            for (size_t b = a + 1; b < count; ++b)
                if (! (masks[a] & masks[b])) {
                    rows[a].set(b);
                    rows[b].set(a);
                }
    }
    else {
        for (size_t a = 0; a < count; ++a)
            for (size_t b = a + 1; b < count; ++b)
                if (labels[a].disjoint_from(labels[b])) {
                    rows[a].set(b);
                    rows[b].set(a);
                }
    }

    string name = "KG(" + std::to_string(n) + "," + std::to_string(m) + ")";
    return Graph(std::move(rows), std::move(name), std::move(labels), KneserParams{n, m});
}

auto cycle_graph(size_t n) -> Graph
{
    if (n < 3)
        throw ParameterError("a cycle needs at least 3 vertices");
    vector<Edge> edges;
    for (size_t i = 0; i < n; ++i)
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
    return Graph(n, edges, "C" + std::to_string(n));
}

auto complete_graph(size_t n) -> Graph
{
    vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return Graph(n, edges, "K" + std::to_string(n));
}

auto edgeless_graph(size_t n) -> Graph
{
    return Graph(n, {}, "E" + std::to_string(n));
}

void write_dimacs(std::ostream & out, const Graph & g)
{
    out << "c " << g.name() << '\n';
    if (const auto & kp = g.kneser_params())
        out << "c kneser " << kp->n << ' ' << kp->m << '\n';
    if (g.has_labels())
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            out << "c label " << (v + 1) << ' ' << g.label(v).to_string() << '\n';
    out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges())
        out << "e " << (u + 1) << ' ' << (v + 1) << '\n';
}

auto read_dimacs(std::istream & in, string name) -> Graph
{
    std::optional<size_t> vertex_count;
    size_t declared_edges = 0;
    vector<Edge> edges;
    std::optional<KneserParams> kp;
    std::map<size_t, string> label_text;

    string line;
    size_t line_no = 0;
    auto fail = [&](const string & why) -> FormatError {
        return FormatError("DIMACS line " + std::to_string(line_no) + ": " + why);
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        string tag;
        if (! (ss >> tag))
            continue;
        if (tag == "c") {
            string kind;
            ss >> kind;
            if (kind == "kneser") {
                long long n, m;
                if (! (ss >> n >> m) || n < 1 || m < 1 || m > n)
                    throw fail("malformed kneser comment");
                kp = KneserParams{static_cast<uint32_t>(n), static_cast<uint32_t>(m)};
            }
            else if (kind == "label") {
                long long i;
                if (! (ss >> i) || i < 1)
                    throw fail("malformed label comment");
                string rest;
                std::getline(ss, rest);
                if (! label_text.emplace(static_cast<size_t>(i - 1), rest).second)
                    throw fail("vertex " + std::to_string(i) + " labelled twice");
            }
        }
        else if (tag == "p") {
            string format;
            long long v, e;
            if (vertex_count)
                throw fail("second problem line");
            if (! (ss >> format >> v >> e) || format != "edge" || v < 0 || e < 0)
                throw fail("expected 'p edge V E'");
            vertex_count = static_cast<size_t>(v);
            declared_edges = static_cast<size_t>(e);
        }
        else if (tag == "e") {
            if (! vertex_count)
                throw fail("edge before problem line");
            long long u, v;
            if (! (ss >> u >> v))
                throw fail("expected 'e u v'");
            if (u < 1 || v < 1 || static_cast<size_t>(u) > *vertex_count || static_cast<size_t>(v) > *vertex_count)
                throw fail("edge endpoint out of range");
            if (u == v)
                throw fail("self-loop at vertex " + std::to_string(u));
            edges.emplace_back(static_cast<Vertex>(std::min(u, v) - 1), static_cast<Vertex>(std::max(u, v) - 1));
        }
        else
            throw fail("unknown line type '" + tag + "'");
    }

    if (! vertex_count)
        throw FormatError("DIMACS input has no problem line");
    if (edges.size() != declared_edges)
        throw FormatError("DIMACS problem line declares " + std::to_string(declared_edges) + " edges but " +
            std::to_string(edges.size()) + " were given");
    {
        auto sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end())
            throw FormatError("duplicate edge " + std::to_string(dup->first + 1) + " " + std::to_string(dup->second + 1));
    }

    vector<SubsetLabel> labels;
    if (! label_text.empty()) {
        if (label_text.size() != *vertex_count || label_text.rbegin()->first >= *vertex_count)
            throw FormatError("label sidecar must label every vertex exactly once");
        uint32_t ground = 0;
        if (kp)
            ground = kp->n;
        else
            for (auto & [_, text] : label_text) {
                // infer the ground set from the largest element mentioned
                auto probe = SubsetLabel::parse(text, 1u << 30);
                if (probe.size())
                    ground = std::max(ground, probe.max());
            }
        for (auto & [_, text] : label_text)
            labels.push_back(SubsetLabel::parse(text, ground));
    }
    else if (kp)
        throw FormatError("kneser comment without label sidecar");

    try {
        return Graph(*vertex_count, edges, std::move(name), std::move(labels), kp);
    }
    catch (const ParameterError & e) {
        throw FormatError(e.what());
    }
}

}
