#include <doctest.h>

#include <fallkolor/cli.hh>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;
using namespace fallkolor;

namespace {
    struct Result {
        int code;
        std::string out;
        std::string err;
    };

    auto run(std::vector<std::string> args) -> Result
    {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    auto slurp(const fs::path & p) -> std::string
    {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    void spit(const fs::path & p, const std::string & text)
    {
        std::ofstream f(p, std::ios::binary);
        f << text;
    }

    // Fresh scratch directory per test case, removed afterwards.
    struct Scratch {
        fs::path dir;
        Scratch()
        {
            static int counter = 0;
            dir = fs::temp_directory_path() /
                ("fallkolor-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
            fs::create_directories(dir);
        }
        ~Scratch() { fs::remove_all(dir); }
        auto operator/(const std::string & name) const -> std::string { return (dir / name).string(); }
    };
}

TEST_CASE("kneser command")
{
    auto petersen = run({"kneser", "5", "2"});
    CHECK(petersen.code == cli::ok);
    CHECK(petersen.out.find("p edge 10 15") != std::string::npos);

    auto matching = run({"kneser", "4", "2"});
    CHECK(matching.code == cli::ok);
    CHECK(matching.out.find("p edge 6 3") != std::string::npos);

    auto bad = run({"kneser", "2", "3"});
    CHECK(bad.code == cli::usage);
    CHECK(bad.err.find("m > n") != std::string::npos);

    CHECK(run({"kneser", "5"}).code == cli::usage);
    CHECK(run({"frobnicate"}).code == cli::usage);
    CHECK(run({}).code == cli::usage);
}

TEST_CASE("kneser output file with manifest")
{
    Scratch s;
    auto r = run({"kneser", "5", "2", "-o", s / "kg52.dimacs"});
    CHECK(r.code == cli::ok);
    CHECK(r.out == "KG(5,2): 10 vertices, 15 edges\n");
    CHECK(slurp(s / "kg52.dimacs").find("c label 1 {1,2}") != std::string::npos);
    auto manifest = slurp(s / "kg52.dimacs.manifest.json");
    CHECK(manifest.find("\"command\": \"kneser\"") != std::string::npos);
    CHECK(manifest.find("\"version\": \"1.0.0\"") != std::string::npos);
}

TEST_CASE("spectrum command")
{
    Scratch s;
    auto kg72 = run({"spectrum", "--kneser", "7", "2"});
    CHECK(kg72.code == cli::ok);
    CHECK(kg72.out.find("\"spectrum\": [\n    7\n  ]") != std::string::npos);

    spit(s / "c5.dimacs", "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    auto c5 = run({"spectrum", s / "c5.dimacs"});
    CHECK(c5.code == cli::ok);
    CHECK(c5.out.find("\"spectrum\": []") != std::string::npos);

    auto k8 = run({"spectrum", "--kneser", "7", "3", "--k", "8"});
    CHECK(k8.code == cli::ok);
    CHECK(k8.out.find("\"spectrum\": []") != std::string::npos);

    auto written = run({"spectrum", "--kneser", "8", "2", "-o", s / "kg82.json"});
    CHECK(written.code == cli::ok);
    CHECK(written.out == "KG(8,2): spectrum {8} over k in [4, 9]\n");
    CHECK(fs::exists(s / "kg82.k8.json"));
    CHECK(fs::exists(s / "kg82.json.manifest.json"));
    auto verify = run({"verify", s / "kg82.k8.json"});
    CHECK(verify.code == cli::ok);
    CHECK(verify.out == "pass: fall 8-coloring of KG(8,2)\n");

    CHECK(run({"spectrum"}).code == cli::usage);
    CHECK(run({"spectrum", s / "c5.dimacs", "--kneser", "5", "2"}).code == cli::usage);
    CHECK(run({"spectrum", "--kneser", "5", "2", "--k", "3", "--k-min", "2"}).code == cli::usage);
    CHECK(run({"spectrum", s / "missing.dimacs"}).code == cli::usage);
}

TEST_CASE("spectrum reports budget exhaustion")
{
    auto r = run({"spectrum", "--kneser", "9", "2", "--k", "12", "--node-budget", "1"});
    CHECK(r.code == cli::inconclusive);
    CHECK(r.err.find("inconclusive") != std::string::npos);
    CHECK(r.out.find("\"partial\": true") != std::string::npos);

    ::setenv("FALLKOLOR_NODE_BUDGET", "1", 1);
    CHECK(run({"spectrum", "--kneser", "9", "2", "--k", "12"}).code == cli::inconclusive);
    ::setenv("FALLKOLOR_NODE_BUDGET", "zero", 1);
    CHECK(run({"spectrum", "--kneser", "9", "2", "--k", "12"}).code == cli::usage);
    ::unsetenv("FALLKOLOR_NODE_BUDGET");
}

TEST_CASE("construct and verify round trip")
{
    Scratch s;
    auto design = run({"construct", "design", "--n", "9", "--m", "2", "--sts", "-o", s / "kg92.json"});
    CHECK(design.code == cli::ok);
    CHECK(design.err.find("verified fall 12-coloring of KG(9,2)") != std::string::npos);
    auto check = run({"verify", s / "kg92.json"});
    CHECK(check.code == cli::ok);
    CHECK(check.out == "pass: fall 12-coloring of KG(9,2)\n");
    CHECK(run({"verify", "--kneser", "9", "2", s / "kg92.json"}).code == cli::ok);

    REQUIRE(run({"kneser", "9", "2", "-o", s / "kg92.dimacs"}).code == cli::ok);
    CHECK(run({"verify", s / "kg92.dimacs", s / "kg92.json"}).code == cli::ok);

    for (const std::string n : {"4", "8", "10"}) {
        auto path = s / ("st" + n + ".json");
        CHECK(run({"construct", "star-triangle", "--n", n, "-o", path}).code == cli::ok);
        CHECK(run({"verify", path}).code == cli::ok);
    }
    CHECK(run({"construct", "star-triangle", "--n", "5"}).code == cli::usage);

    REQUIRE(run({"sts", "7", "-o", s / "sts7.txt"}).code == cli::ok);
    CHECK(run({"construct", "design", "--n", "7", "--m", "2", "--design", s / "sts7.txt", "-o", s / "d7.json"}).code ==
        cli::ok);
    CHECK(run({"verify", s / "d7.json"}).code == cli::ok);
    CHECK(run({"construct", "design", "--n", "7", "--m", "2"}).code == cli::usage);
    CHECK(run({"construct", "design", "--n", "7", "--m", "3", "--sts"}).code == cli::usage);
}

TEST_CASE("verify reports failures")
{
    Scratch s;
    spit(s / "bad.json", R"x({"graph": "KG(4,2)", "k": 3, "classes": [["{1,2}","{3,4}"],["{1,3}","{2,4}"],["{1,4}","{2,3}"]]})x");
    auto r = run({"verify", s / "bad.json"});
    CHECK(r.code == cli::verify_failed);
    CHECK(r.out.find("fail:") == 0);

    spit(s / "nameless.json", R"({"k": 1, "classes": [[1]]})");
    CHECK(run({"verify", s / "nameless.json"}).code == cli::usage);
    spit(s / "garbage.json", "not json");
    CHECK(run({"verify", "--kneser", "4", "2", s / "garbage.json"}).code == cli::usage);
}

TEST_CASE("recipes that fail post-verification exit with 4")
{
    Scratch s;
    REQUIRE(run({"construct", "design", "--n", "7", "--m", "2", "--sts", "-o", s / "kg72.json"}).code == cli::ok);
    auto lift = run({"construct", "lift", "--n", "7", "--m", "2", "--from", s / "kg72.json", "-o", s / "kg93.json"});
    CHECK(lift.code == cli::construction_unverified);
    CHECK(lift.err.find("does not see color") != std::string::npos);
    CHECK(! fs::exists(s / "kg93.json"));

    auto ext = run({"construct", "star-extension", "--n", "7", "--m", "3"});
    CHECK(ext.code == cli::construction_unverified);
    CHECK(run({"construct", "prop4", "--n", "7", "--m", "3"}).code == cli::construction_unverified);
    CHECK(run({"construct", "star-extension", "--n", "6", "--m", "3"}).code == cli::usage);

    spit(s / "notfall.json", R"x({"graph": "KG(7,2)", "k": 1, "classes": [[1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21]]})x");
    CHECK(run({"construct", "lift", "--n", "7", "--m", "2", "--from", s / "notfall.json"}).code == cli::usage);
}

TEST_CASE("bounds command")
{
    auto r = run({"bounds", "7", "2"});
    CHECK(r.code == cli::ok);
    CHECK(r.out == "lower 6, upper 11, exact {7}\n");
    CHECK(run({"bounds", "9", "2"}).out == "lower 11, upper 15, exact {12}\n");
    CHECK(run({"bounds", "7", "1"}).out == "exact {7}\n");
    CHECK(run({"bounds", "9", "3"}).out.find("unknown") != std::string::npos);
    CHECK(run({"bounds", "3", "4"}).code == cli::usage);
}

TEST_CASE("design commands")
{
    Scratch s;
    auto sts = run({"sts", "9"});
    CHECK(sts.code == cli::ok);
    CHECK(sts.out.rfind("2 9 3 1 12\n", 0) == 0);
    CHECK(run({"sts", "8"}).code == cli::usage);

    spit(s / "sts9.txt", sts.out);
    auto ok = run({"design-verify", s / "sts9.txt"});
    CHECK(ok.code == cli::ok);
    CHECK(ok.out == "pass: 2-(9,3,1) design with 12 blocks\n");

    auto text = sts.out;
    auto last = text.rfind('\n', text.size() - 2);
    spit(s / "short.txt", text.substr(0, last + 1) + "1 2 3\n");
    auto bad = run({"design-verify", s / "short.txt"});
    CHECK(bad.code == cli::verify_failed);
    CHECK(bad.out.find("fail: {") == 0);

    CHECK(run({"design-verify", s / "sts9.txt", "--budget", "3"}).code == cli::usage);
}

TEST_CASE("equal manifests mean identical outputs")
{
    Scratch a, b;
    auto produce = [](const Scratch & s) {
        REQUIRE(run({"spectrum", "--kneser", "7", "2", "-o", s / "out.json"}).code == cli::ok);
        REQUIRE(run({"construct", "star-triangle", "--n", "10", "-o", s / "st.json"}).code == cli::ok);
    };
    produce(a);
    produce(b);
    for (const std::string name : {"out.json", "out.k7.json", "st.json"})
        CHECK(slurp(a / name) == slurp(b / name));

    auto strip_dir = [](std::string text, const Scratch & s) {
        auto dir = s.dir.string();
        for (auto pos = text.find(dir); pos != std::string::npos; pos = text.find(dir))
            text.erase(pos, dir.size());
        return text;
    };
    CHECK(strip_dir(slurp(a / "out.json.manifest.json"), a) == strip_dir(slurp(b / "out.json.manifest.json"), b));

    // worker count is an execution detail and does not change the result file
    REQUIRE(run({"spectrum", "--kneser", "8", "2", "-j", "4", "-o", a / "par.json"}).code == cli::ok);
    REQUIRE(run({"spectrum", "--kneser", "8", "2", "-o", b / "par.json"}).code == cli::ok);
    CHECK(slurp(a / "par.json") == slurp(b / "par.json"));
    CHECK(slurp(a / "par.k8.json") == slurp(b / "par.k8.json"));
}
