#include <fallkolor/bounds.hh>
#include <fallkolor/cli.hh>
#include <fallkolor/coloring.hh>
#include <fallkolor/constructions.hh>
#include <fallkolor/error.hh>
#include <fallkolor/solver.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

using std::string;
using std::uint32_t;
using std::vector;

namespace fallkolor::cli {

namespace {
    using Json = nlohmann::ordered_json;

    /// Everything a run reads and writes, emitted next to its outputs.
    struct RunManifest {
        string command;
        Json parameters = Json::object();
        vector<string> inputs;
        vector<string> outputs;

        auto to_text() const -> string
        {
            Json doc;
            doc["tool"] = "fallkolor";
            doc["version"] = tool_version;
            doc["command"] = command;
            doc["parameters"] = parameters;
            doc["inputs"] = inputs;
            doc["outputs"] = outputs;
            doc["determinism"] = "seedless: outputs depend only on the parameters and input files";
            return doc.dump(2) + "\n";
        }
    };

    void write_file(const string & path, const string & text)
    {
        std::ofstream f(path, std::ios::binary);
        if (! f)
            throw ParameterError("cannot open " + path + " for writing");
        f << text;
        if (! f)
            throw ParameterError("failed writing " + path);
    }

    auto read_file(const string & path) -> string
    {
        std::ifstream f(path, std::ios::binary);
        if (! f)
            throw ParameterError("cannot open " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    // Writes the primary output to `path` (plus its manifest) or to `out`.
    void emit(const string & path, const string & text, RunManifest & manifest, std::ostream & out,
        const vector<std::pair<string, string>> & extra = {})
    {
        if (path.empty()) {
            out << text;
            return;
        }
        write_file(path, text);
        manifest.outputs.push_back(path);
        for (const auto & [p, t] : extra) {
            write_file(p, t);
            manifest.outputs.push_back(p);
        }
        write_file(path + ".manifest.json", manifest.to_text());
    }

    auto load_graph(const string & path) -> Graph
    {
        std::istringstream in(read_file(path));
        auto stem = path.substr(path.find_last_of('/') + 1);
        return read_dimacs(in, stem);
    }

    auto load_design(const string & path) -> BlockDesign
    {
        std::istringstream in(read_file(path));
        return read_design(in);
    }

    auto parse_kneser_name(const string & name) -> std::optional<KneserParams>
    {
        static const std::regex pattern(R"(KG\((\d+),(\d+)\))");
        std::smatch m;
        if (! std::regex_match(name, m, pattern))
            return std::nullopt;
        return KneserParams{static_cast<uint32_t>(std::stoul(m[1])), static_cast<uint32_t>(std::stoul(m[2]))};
    }

    auto join(const vector<std::size_t> & xs) -> string
    {
        string s = "{";
        for (std::size_t i = 0; i < xs.size(); ++i)
            s += (i ? "," : "") + std::to_string(xs[i]);
        return s + "}";
    }

    auto node_budget_from_env(std::optional<std::uint64_t> flag) -> std::uint64_t
    {
        if (flag)
            return *flag;
        if (const char * env = std::getenv("FALLKOLOR_NODE_BUDGET")) {
            char * end = nullptr;
            errno = 0;
            auto v = std::strtoull(env, &end, 10);
            if (errno || end == env || *end != '\0' || v == 0)
                throw ParameterError(string("FALLKOLOR_NODE_BUDGET must be a positive integer, got '") + env + "'");
            return v;
        }
        return SolverOptions{}.node_budget;
    }

    auto witness_path(const string & out, std::size_t k) -> string
    {
        string base = out;
        if (base.size() > 5 && base.ends_with(".json"))
            base.resize(base.size() - 5);
        return base + ".k" + std::to_string(k) + ".json";
    }
}

auto run(const vector<string> & args, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{"Fall colorings of Kneser graphs: generation, constructions, verification and exhaustive search",
        "fallkolor"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    // kneser
    uint32_t kn_n = 0, kn_m = 0;
    string kn_out;
    auto * kneser_cmd = app.add_subcommand("kneser", "Write KG(n,m) as DIMACS with a label sidecar");
    kneser_cmd->add_option("n", kn_n)->required();
    kneser_cmd->add_option("m", kn_m)->required();
    kneser_cmd->add_option("-o,--out", kn_out, "Output file (default stdout)");

    // spectrum
    string sp_graph, sp_out;
    vector<uint32_t> sp_kneser;
    std::optional<std::size_t> sp_k, sp_kmin, sp_kmax;
    std::optional<std::uint64_t> sp_budget;
    unsigned sp_jobs = 1;
    auto * spectrum_cmd = app.add_subcommand("spectrum", "Exhaustively compute Fall(G)");
    spectrum_cmd->add_option("graph", sp_graph, "DIMACS graph file");
    spectrum_cmd->add_option("--kneser", sp_kneser, "Use KG(n,m) instead of a file")->expected(2);
    spectrum_cmd->add_option("--k", sp_k, "Search this single k");
    spectrum_cmd->add_option("--k-min", sp_kmin);
    spectrum_cmd->add_option("--k-max", sp_kmax);
    spectrum_cmd->add_option("--node-budget", sp_budget, "Node limit per k (env FALLKOLOR_NODE_BUDGET)");
    spectrum_cmd->add_option("-j,--jobs", sp_jobs, "Solver worker threads")->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("-o,--out", sp_out, "Result file; witnesses go to <out>.k<k>.json");

    // verify
    vector<string> vf_files;
    vector<uint32_t> vf_kneser;
    auto * verify_cmd = app.add_subcommand("verify", "Check that a coloring file is a fall coloring");
    verify_cmd->add_option("files", vf_files, "[graph.dimacs] coloring.json")->required()->expected(1, 2);
    verify_cmd->add_option("--kneser", vf_kneser, "Verify against KG(n,m)")->expected(2);

    // construct
    auto * construct_cmd = app.add_subcommand("construct", "Build a verified fall coloring from a recipe");
    construct_cmd->require_subcommand(1);
    uint32_t c_n = 0, c_m = 0;
    string c_out, c_design, c_from;
    bool c_sts = false;
    auto * c_design_cmd = construct_cmd->add_subcommand("design", "Coloring of KG(n,m) from an m-(n,2m-1,1) design");
    c_design_cmd->add_option("--n", c_n)->required();
    c_design_cmd->add_option("--m", c_m)->required();
    auto * c_sts_flag = c_design_cmd->add_flag("--sts", c_sts, "Use the built-in STS(n) (m = 2)");
    auto * c_design_opt = c_design_cmd->add_option("--design", c_design, "Design file");
    c_sts_flag->excludes(c_design_opt);
    c_design_cmd->add_option("-o,--out", c_out);

    auto * c_star_cmd = construct_cmd->add_subcommand("star-triangle", "Star plus triangles coloring of KG(n,2)");
    c_star_cmd->add_option("--n", c_n)->required();
    c_star_cmd->add_option("-o,--out", c_out);

    auto * c_ext_cmd = construct_cmd->add_subcommand("star-extension", "Star extension of a design coloring");
    c_ext_cmd->alias("prop4");
    c_ext_cmd->add_option("--n", c_n)->required();
    c_ext_cmd->add_option("--m", c_m)->required();
    c_ext_cmd->add_option("--design", c_design, "(m-1)-(n,2m-3,1) design file; STS(n) is used for m = 3");
    c_ext_cmd->add_option("-o,--out", c_out);

    auto * c_lift_cmd = construct_cmd->add_subcommand("lift", "Lift a fall coloring of KG(n,m) to KG(n+2,m+1)");
    c_lift_cmd->add_option("--n", c_n)->required();
    c_lift_cmd->add_option("--m", c_m)->required();
    c_lift_cmd->add_option("--from", c_from, "Fall coloring of KG(n,m)")->required();
    c_lift_cmd->add_option("-o,--out", c_out);

    // bounds
    uint32_t b_n = 0, b_m = 0;
    auto * bounds_cmd = app.add_subcommand("bounds", "Closed-form spectrum and bounds for KG(n,m)");
    bounds_cmd->add_option("n", b_n)->required();
    bounds_cmd->add_option("m", b_m)->required();

    // sts
    uint32_t s_v = 0;
    string s_out;
    auto * sts_cmd = app.add_subcommand("sts", "Write a Steiner triple system of order v");
    sts_cmd->add_option("v", s_v)->required();
    sts_cmd->add_option("-o,--out", s_out);

    // design-verify
    string dv_file;
    std::uint64_t dv_budget = default_design_budget;
    auto * dv_cmd = app.add_subcommand("design-verify", "Check a block design file");
    dv_cmd->add_option("design", dv_file)->required();
    dv_cmd->add_option("--budget", dv_budget, "Maximum number of t-subsets to enumerate");

    try {
        vector<string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    RunManifest manifest;
    try {
        if (*kneser_cmd) {
            manifest.command = "kneser";
            manifest.parameters = {{"n", kn_n}, {"m", kn_m}};
            auto g = kneser(kn_n, kn_m);
            std::ostringstream text;
            write_dimacs(text, g);
            emit(kn_out, text.str(), manifest, out);
            if (! kn_out.empty())
                out << g.name() << ": " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
            return ok;
        }

        if (*spectrum_cmd) {
            manifest.command = "spectrum";
            if (sp_graph.empty() == sp_kneser.empty())
                throw ParameterError("give exactly one of a graph file or --kneser n m");
            if (sp_k && (sp_kmin || sp_kmax))
                throw ParameterError("--k cannot be combined with --k-min/--k-max");
            if (sp_k) {
                sp_kmin = sp_k;
                sp_kmax = sp_k;
            }
            SolverOptions options;
            options.node_budget = node_budget_from_env(sp_budget);
            options.workers = sp_jobs;

            auto g = sp_graph.empty() ? kneser(sp_kneser[0], sp_kneser[1]) : load_graph(sp_graph);
            if (sp_graph.empty())
                manifest.parameters["kneser"] = sp_kneser;
            else
                manifest.inputs.push_back(sp_graph);
            if (sp_kmin)
                manifest.parameters["k_min"] = *sp_kmin;
            if (sp_kmax)
                manifest.parameters["k_max"] = *sp_kmax;
            manifest.parameters["node_budget"] = options.node_budget;

            SpectrumResult r;
            try {
                r = fall_spectrum(g, sp_kmin, sp_kmax, options);
            }
            catch (const BudgetError & e) {
                err << "inconclusive: " << e.what() << "\n";
                return inconclusive;
            }

            vector<std::pair<string, string>> witness_files;
            if (! sp_out.empty())
                for (const auto & [k, c] : r.witnesses)
                    witness_files.emplace_back(witness_path(sp_out, k),
                        coloring_to_json_text(g, c, "exhaustive search witness"));
            emit(sp_out, spectrum_to_json_text(g, r), manifest, out, witness_files);
            if (! sp_out.empty())
                out << g.name() << ": spectrum " << join(r.spectrum) << " over k in [" << r.k_min << ", " << r.k_max
                    << "]\n";
            err << "searched " << r.nodes << " nodes in " << r.elapsed_seconds << " s\n";
            if (r.partial) {
                err << "inconclusive: node budget exhausted for k in " << join(r.unresolved) << "\n";
                return inconclusive;
            }
            return ok;
        }

        if (*verify_cmd) {
            string coloring_path = vf_files.back();
            std::istringstream coloring_text(read_file(coloring_path));
            std::optional<Graph> g;
            if (! vf_kneser.empty()) {
                if (vf_files.size() != 1)
                    throw ParameterError("give either a graph file or --kneser, not both");
                g = kneser(vf_kneser[0], vf_kneser[1]);
            }
            else if (vf_files.size() == 2)
                g = load_graph(vf_files[0]);
            else {
                auto doc = nlohmann::json::parse(coloring_text.str(), nullptr, false);
                auto name = doc.is_object() ? doc.value("graph", string{}) : string{};
                auto kp = parse_kneser_name(name);
                if (! kp)
                    throw ParameterError("coloring does not name a Kneser graph; pass the graph file or --kneser");
                g = kneser(kp->n, kp->m);
            }
            auto file = read_coloring(coloring_text, *g);
            auto check = is_fall(*g, file.coloring);
            if (check.ok) {
                out << "pass: fall " << file.coloring.k() << "-coloring of " << g->name() << "\n";
                return ok;
            }
            out << "fail: " << check.describe(*g) << "\n";
            return verify_failed;
        }

        if (*construct_cmd) {
            std::optional<ConstructionResult> result;
            manifest.parameters["n"] = c_n;
            if (*c_design_cmd) {
                manifest.command = "construct design";
                manifest.parameters["m"] = c_m;
                BlockDesign d;
                if (c_sts) {
                    if (c_m != 2)
                        throw ParameterError("--sts supplies a 2-(n,3,1) design, which needs m = 2");
                    d = construct_sts(c_n);
                    manifest.parameters["sts"] = true;
                }
                else if (! c_design.empty()) {
                    d = load_design(c_design);
                    manifest.inputs.push_back(c_design);
                }
                else
                    throw ParameterError("construct design needs --sts or --design FILE");
                result = coloring_from_design(c_n, c_m, d);
            }
            else if (*c_star_cmd) {
                manifest.command = "construct star-triangle";
                result = star_triangle_coloring(c_n);
            }
            else if (*c_ext_cmd) {
                manifest.command = "construct star-extension";
                manifest.parameters["m"] = c_m;
                std::optional<BlockDesign> d;
                if (! c_design.empty()) {
                    d = load_design(c_design);
                    manifest.inputs.push_back(c_design);
                }
                result = star_extension_coloring(c_n, c_m, d);
            }
            else {
                manifest.command = "construct lift";
                manifest.parameters["m"] = c_m;
                manifest.inputs.push_back(c_from);
                if (c_m < 1 || c_m > c_n)
                    throw ParameterError("lift needs 1 <= m <= n");
                auto base = kneser(c_n, c_m);
                std::istringstream in(read_file(c_from));
                auto file = read_coloring(in, base);
                result = lift_coloring(c_n, c_m, file.coloring);
            }
            emit(c_out, coloring_to_json_text(*result->graph, result->coloring, result->provenance), manifest, out);
            err << "verified fall " << result->k << "-coloring of " << result->graph->name() << " ("
                << result->provenance << ")\n";
            return ok;
        }

        if (*bounds_cmd) {
            out << closed_form_spectrum(b_n, b_m).describe() << "\n";
            return ok;
        }

        if (*sts_cmd) {
            manifest.command = "sts";
            manifest.parameters = {{"v", s_v}};
            std::ostringstream text;
            write_design(text, construct_sts(s_v));
            emit(s_out, text.str(), manifest, out);
            return ok;
        }

        if (*dv_cmd) {
            auto d = load_design(dv_file);
            auto report = verify_design(d, dv_budget);
            if (report.pass) {
                out << "pass: " << d.t << "-(" << d.v << "," << d.k << "," << d.lambda << ") design with "
                    << d.blocks.size() << " blocks\n";
                return ok;
            }
            out << "fail: " << report.witness->to_string() << " lies in " << report.witness_count
                << " blocks, expected " << d.lambda << "\n";
            return verify_failed;
        }
    }
    catch (const ConstructionError & e) {
        err << "construction unverified: " << e.what() << "\n";
        return construction_unverified;
    }
    catch (const Error & e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

}
