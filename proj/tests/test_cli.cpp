#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "discrimlab/cli.hpp"

namespace fs = std::filesystem;
using discrimlab::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("discrimlab_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_csv(const fs::path& dir, const std::string& body) {
    const auto path = dir / "data.csv";
    std::ofstream(path) << body;
    return path;
}

std::size_t svg_count(const fs::path& dir) {
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".svg") ++n;
    return n;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("normality on iris reports each species") {
    const auto r = invoke({"normality", "--iris"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "setosa"));
    CHECK(contains(r.out, "versicolor"));
    CHECK(contains(r.out, "virginica"));
    CHECK(contains(r.out, "3.1 (25.7)"));
}

TEST_CASE("normality in JSON emits one record per group") {
    const auto r = invoke({"normality", "--iris", "--format", "json"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::vector<nlohmann::json> records;
    while (std::getline(lines, line))
        if (!line.empty()) records.push_back(nlohmann::json::parse(line));
    REQUIRE(records.size() == 3);
    CHECK(records[0]["report"] == "mardia");
    CHECK(records[0]["b1p"].get<double>() == doctest::Approx(3.08).epsilon(0.01));
    CHECK(records[2]["group"] == "virginica");
}

TEST_CASE("normality on a one-variable CSV") {
    const auto dir = scratch("onevar");
    const auto csv = write_csv(dir, "x,species\n1.0,a\n2.0,a\n2.5,a\n4.0,a\n3.0,b\n5.0,b\n6.5,b\n7.0,b\n");
    const auto r = invoke({"normality", "--input", csv.string()});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "a"));
}

TEST_CASE("a group with too few rows is a user error") {
    const auto dir = scratch("toofew");
    const auto csv = write_csv(dir,
                               "a,b,c,d,species\n"
                               "1,2,3,4,x\n2,1,3,5,x\n3,3,1,2,x\n"
                               "1,2,3,4,y\n2,3,4,1,y\n4,1,2,3,y\n3,4,1,2,y\n5,2,2,1,y\n1,5,3,3,y\n");
    const auto r = invoke({"normality", "--input", csv.string()});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "TooFewRows"));
}

TEST_CASE("canonical variates on iris") {
    const auto r = invoke({"canonical", "--iris"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "l1 = (-0.83, -1.53, 2.20, 2.81)"));
    CHECK(contains(r.out, "correct: 148 of 150"));
    CHECK(contains(r.out, "misclassified: 73, 84"));
}

TEST_CASE("canonical plot writes one SVG to the output directory") {
    const auto dir = scratch("canonical_plot");
    const auto r = invoke({"canonical", "--iris", "--plot", "--outdir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(svg_count(dir) == 1);
    CHECK(fs::exists(dir / "canonical-iris-all.svg"));
}

TEST_CASE("two groups give a single canonical variate") {
    const auto dir = scratch("twogroups");
    const auto csv = write_csv(dir,
                               "u,v,species\n"
                               "1.0,2.0,a\n1.5,2.2,a\n0.8,1.7,a\n1.2,2.5,a\n"
                               "3.0,1.0,b\n3.4,1.5,b\n2.8,0.7,b\n3.3,1.1,b\n");
    const auto r = invoke({"canonical", "--input", csv.string()});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "l1 = "));
    CHECK_FALSE(contains(r.out, "l2 = "));
    CHECK(contains(r.out, "correct: 8 of 8"));
}

TEST_CASE("genetic discriminant on iris") {
    const auto r = invoke({"genetic", "--iris"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "u = (-3.31, -2.76, 8.87, 9.39)"));
    CHECK(contains(r.out, "misclassified: 71, 84"));
    CHECK(contains(r.out, "SE 2.199"));
    CHECK(contains(r.out, "accept H0"));
}

TEST_CASE("genetic with a degenerate constraint is a user error") {
    const auto r = invoke({"genetic", "--iris", "--constraint", "1,1,1"});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "DegenerateConstraint"));
}

TEST_CASE("genetic JSON output parses") {
    const auto r = invoke({"genetic", "--iris", "--format", "json"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line))
        if (!line.empty()) {
            const auto j = nlohmann::json::parse(line);
            CHECK(j.contains("report"));
            ++n;
        }
    CHECK(n >= 2);
}

TEST_CASE("classify counts on iris") {
    const std::vector<std::pair<std::string, std::string>> expected{
        {"fisher", "correct: 148 of 150"}, {"ml-equal", "correct: 147 of 150"}, {"kernel", "correct: 149 of 150"},
        {"tree", "correct: 146 of 150"},   {"index", "correct: 139 of 150"}};
    for (const auto& [method, line] : expected) {
        CAPTURE(method);
        const auto r = invoke({"classify", "--iris", "--method", method});
        REQUIRE(r.code == 0);
        CHECK(contains(r.out, line));
    }
}

TEST_CASE("classify on sepal measurements") {
    const auto f = invoke({"classify", "--iris", "--select", "1,2", "--method", "fisher"});
    CHECK(contains(f.out, "correct: 117 of 150"));
    const auto m = invoke({"classify", "--iris", "--select", "1,2", "--method", "ml-equal"});
    CHECK(contains(m.out, "correct: 120 of 150"));
}

TEST_CASE("classify JSON confusion matrix") {
    const auto r = invoke({"classify", "--iris", "--method", "fisher", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"] == "classify");
    CHECK(j["confusion"]["correct"] == 148);
    CHECK(j["confusion"]["counts_predicted_by_actual"][2][1] == 2);
    CHECK(j["confusion"]["misclassified"].size() == 2);
}

TEST_CASE("unknown method is a user error") {
    CHECK(invoke({"classify", "--iris", "--method", "svm"}).code == 2);
}

TEST_CASE("compare methods") {
    const auto r = invoke({"compare", "--iris", "--select", "1,2", "--method-a", "fisher", "--method-b", "ml-equal"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "139 of 150"));

    const auto self = invoke({"compare", "--iris", "--method-a", "tree", "--method-b", "tree"});
    CHECK(contains(self.out, "150 of 150"));

    const auto kt = invoke({"compare", "--iris", "--select", "1,2", "--method-a", "kernel", "--method-b", "tree"});
    CHECK(contains(kt.out, "Correct: kernel 124, tree 123"));
    CHECK(contains(kt.out, "pinned defaults"));
}

TEST_CASE("plot kinds write SVG files") {
    const std::vector<std::vector<std::string>> cases{
        {"plot", "--iris", "--kind", "dhillon"},
        {"plot", "--iris", "--kind", "rectangles"},
        {"plot", "--iris", "--kind", "histograms"},
        {"plot", "--iris", "--kind", "matrix"},
        {"plot", "--iris", "--kind", "canonical"},
        {"plot", "--iris", "--kind", "regions", "--select", "1,2", "--resolution", "40"},
    };
    for (auto args : cases) {
        CAPTURE(args[3]);
        const auto dir = scratch("plot_" + args[3]);
        args.push_back("--outdir");
        args.push_back(dir.string());
        const auto r = invoke(args);
        CHECK(r.code == 0);
        CHECK(svg_count(dir) == 1);
    }
}

TEST_CASE("plot output is deterministic") {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    REQUIRE(invoke({"plot", "--iris", "--kind", "canonical", "--outdir", a.string()}).code == 0);
    REQUIRE(invoke({"plot", "--iris", "--kind", "canonical", "--outdir", b.string()}).code == 0);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const auto name = "canonical-iris-all.svg";
    CHECK(slurp(a / name) == slurp(b / name));
    CHECK_FALSE(slurp(a / name).empty());
}

TEST_CASE("plot restrictions are user errors") {
    const auto dir = scratch("restrict");
    CHECK(invoke({"plot", "--iris", "--kind", "regions", "--outdir", dir.string()}).code == 2);
    CHECK(invoke({"plot", "--iris", "--kind", "rectangles", "--select", "1,2", "--outdir", dir.string()}).code == 2);
    CHECK(svg_count(dir) == 0);
}

TEST_CASE("box M on iris") {
    const auto r = invoke({"boxm", "--iris"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "df = 20"));
}

TEST_CASE("argument errors") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--bogus"}).code == 2);
    CHECK(invoke({"normality"}).code == 2);
    CHECK(invoke({"normality", "--iris", "--input", "x.csv"}).code == 2);
    CHECK(invoke({"classify", "--iris", "--ratios", "1/3", "--products", "1*2"}).code == 2);
    CHECK(invoke({"normality", "--iris", "--select", "9"}).code == 2);
    CHECK(invoke({"normality", "--input", "/nonexistent/file.csv"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("text output is deterministic") {
    CHECK(invoke({"genetic", "--iris"}).out == invoke({"genetic", "--iris"}).out);
}
