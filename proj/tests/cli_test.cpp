#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "severi/corpus.hpp"

using namespace severi;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("severi_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Result run(const std::string& args, const std::string& env = "") {
    const fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
    const std::string cmd = "env -u SEVERI_MODE " + env + " " + std::string(SEVERI_CLI) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string corpus_file(const std::string& name) { return std::string(SEVERI_CORPUS_DIR) + "/" + name + ".json"; }

std::string write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

json run_json(const std::string& args, int expected_code, const std::string& env = "") {
    Result r = run(args, env);
    EXPECT_EQ(r.code, expected_code) << args << "\n" << r.err;
    return json::parse(r.out);
}

}  // namespace

TEST(Cli, VerifyDimensionNodalCubic) {
    json r = run_json("verify-dimension " + corpus_file("nodal-cubic"), 0);
    EXPECT_EQ(r["tangent_dim"], 8);
    EXPECT_EQ(r["expected"], 8);
    EXPECT_EQ(r["L_d"], 9);
    EXPECT_EQ(r["rank"], 3);
    EXPECT_EQ(r["mode"], "exact");
    EXPECT_TRUE(r["pass"].get<bool>());
}

TEST(Cli, VerifyDimensionFloatModeHasGap) {
    json r = run_json("verify-dimension --mode float " + corpus_file("three-nodal-quartic"), 0);
    EXPECT_EQ(r["tangent_dim"], 11);
    EXPECT_EQ(r["mode"], "float");
    EXPECT_GT(r["sv_gap"].get<double>(), 1e3);
}

TEST(Cli, GenusPrintsValue) {
    const std::string out = (scratch() / "genus.json").string();
    Result r = run("genus --d 4 --n 2 --out " + out);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("g = 1"), std::string::npos);
    json j = json::parse(slurp(out));
    EXPECT_EQ(j["geometric_genus"], 1);
    EXPECT_EQ(j["arithmetic_genus"], 3);
}

TEST(Cli, GenusBoundIsInputError) {
    EXPECT_EQ(run("genus --d 3 --n 2").code, 1);
    EXPECT_EQ(run("genus").code, 1);
}

TEST(Cli, NodesOnCuspidalCubic) {
    json r = run_json("nodes " + corpus_file("cuspidal-cubic"), 0);
    ASSERT_EQ(r["singular_points"].size(), 1u);
    EXPECT_EQ(r["singular_points"][0]["kind"], "other");
    EXPECT_EQ(r["singular_points"][0]["chart"], "Z");
    EXPECT_FALSE(r["in_nodal_locus"].get<bool>());
}

TEST(Cli, NodesOnNodalCubicReportsHessian) {
    json r = run_json("nodes " + corpus_file("nodal-cubic"), 0);
    ASSERT_EQ(r["singular_points"].size(), 1u);
    EXPECT_EQ(r["singular_points"][0]["kind"], "node");
    EXPECT_EQ(r["singular_points"][0]["hessian_det"]["re"].get<double>(), -4.0);
    EXPECT_EQ(r["singular_points"][0]["point"][2]["re"], "1");
}

TEST(Cli, EveryCorpusEntryPassesItsReport) {
    for (const auto& e : corpus()) {
        json r = run_json("report " + corpus_file(e.name), 0);
        EXPECT_TRUE(r["pass"].get<bool>()) << e.name;
        EXPECT_TRUE(r["mismatches"].empty()) << e.name;
        EXPECT_EQ(r["name"], e.name);
    }
}

TEST(Cli, CorpusFilesAreCurrent) {
    for (const auto& e : corpus())
        EXPECT_EQ(json::parse(slurp(corpus_file(e.name))), corpus_entry_to_json(e)) << e.name;
}

TEST(Cli, ReportFlagsWrongExpectation) {
    json doc = corpus_entry_to_json(*find_corpus_entry("nodal-cubic"));
    doc["expected"]["node_count"] = 2;
    json r = run_json("report " + write_file("wrong.json", doc.dump()), 2);
    EXPECT_FALSE(r["pass"].get<bool>());
    EXPECT_EQ(r["mismatches"], json::array({"node_count"}));
}

TEST(Cli, MalformedJsonHasLineAndColumn) {
    Result r = run("nodes " + write_file("bad.json", "{\"degree\": 2,\n \"coefficients\": [{\"i\":1 \"j\":0}]}"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("line 2, column"), std::string::npos) << r.err;
}

TEST(Cli, FieldDiagnostics) {
    Result missing = run("nodes " + write_file("missing.json", R"({"degree": 2, "coefficients": [{"i": 2, "j": 0}]})"));
    EXPECT_EQ(missing.code, 1);
    EXPECT_NE(missing.err.find("coefficients/0/k: missing field"), std::string::npos) << missing.err;
    Result sum = run("nodes " + write_file("sum.json", R"({"degree": 2, "coefficients": [{"i": 1, "j": 0, "k": 0}]})"));
    EXPECT_EQ(sum.code, 1);
    EXPECT_NE(sum.err.find("exponents sum to 1, expected degree 2"), std::string::npos) << sum.err;
    Result coeff =
        run("nodes " + write_file("coeff.json", R"({"degree": 1, "coefficients": [{"i": 1, "j": 0, "k": 0, "re": "1/0"}]})"));
    EXPECT_EQ(coeff.code, 1);
    EXPECT_NE(coeff.err.find("coefficients/0/re"), std::string::npos) << coeff.err;
    EXPECT_EQ(run("nodes /nonexistent/curve.json").code, 1);
}

TEST(Cli, UnknownFlagIsInputError) { EXPECT_EQ(run("nodes " + corpus_file("conic") + " --bogus").code, 1); }

TEST(Cli, ModePrecedence) {
    const std::string f = corpus_file("nodal-cubic");
    EXPECT_EQ(run_json("nodes " + f, 0)["mode"], "exact");
    EXPECT_EQ(run_json("nodes " + f, 0, "SEVERI_MODE=float")["mode"], "float");
    EXPECT_EQ(run_json("nodes --mode exact " + f, 0, "SEVERI_MODE=float")["mode"], "exact");
    EXPECT_EQ(run("nodes " + f, "SEVERI_MODE=fuzzy").code, 1);
    EXPECT_EQ(run("nodes --mode fuzzy " + f).code, 1);
}

TEST(Cli, VerificationFailureExitsTwo) {
    json r = run_json("verify-dimension " + corpus_file("cuspidal-cubic"), 2);
    EXPECT_FALSE(r["pass"].get<bool>());
    EXPECT_NE(r["error"].get<std::string>().find("not nodal"), std::string::npos);
}

TEST(Cli, BezoutConicAndCubic) {
    json r = run_json("bezout " + corpus_file("conic") + " " + corpus_file("nodal-cubic"), 0);
    EXPECT_EQ(r["total"], 6);
    EXPECT_EQ(r["expected"], 6);
    json f = run_json("bezout --mode float " + corpus_file("conic") + " " + corpus_file("nodal-cubic"), 0);
    EXPECT_EQ(f["total"], 6);
}

TEST(Cli, BezoutCommonComponentFails) {
    const std::string tri = corpus_file("triangle"), lines = corpus_file("three-concurrent-lines");
    json r = run_json("bezout " + tri + " " + lines, 2);
    EXPECT_NE(r["error"].get<std::string>().find("common component"), std::string::npos);
}

TEST(Cli, Distance) {
    json r = run_json("distance " + corpus_file("nodal-cubic") + " " + corpus_file("nodal-cubic"), 0);
    EXPECT_EQ(r["distance"].get<double>(), 0.0);
    EXPECT_EQ(run("distance " + corpus_file("conic") + " " + corpus_file("nodal-cubic")).code, 1);
}

TEST(Cli, ConstructRoundTrip) {
    json c = run_json("construct --d 4 --n 3 --seed 11", 0);
    EXPECT_EQ(c["verification"]["adjoint_rank"], 3);
    EXPECT_EQ(c["verification"]["residual_max"], 0);
    EXPECT_EQ(c["verification"]["nodes"].size(), 3u);
    json v = run_json("verify-dimension " + write_file("built.json", c["curve"].dump()), 0);
    EXPECT_EQ(v["tangent_dim"], 11);

    const std::string pts = write_file("pts.json", R"([{"coords": [0, 0, 1]}, {"coords": [1, 0, 1]}, {"coords": ["1/2", 3, 1]}])");
    json p = run_json("construct --d 4 --seed 3 --points " + pts, 0);
    EXPECT_EQ(p["verification"]["nodes"].size(), 3u);
    EXPECT_EQ(run_json("construct --d 4 --n 3 --seed 11", 0), c);
}

TEST(Cli, ConstructErrors) {
    EXPECT_EQ(run("construct --n 2").code, 1);
    EXPECT_EQ(run("construct --d 3 --n 2").code, 1);
    EXPECT_EQ(run("construct --d 4 --points " + write_file("col.json", R"([{"coords": [0, 0, 1]}, {"coords": [1, 0, 1]}, {"coords": [2, 0, 1]}])") + " --irreducible").code, 2);
    EXPECT_EQ(run("construct --d 3 --points " + write_file("p0.json", R"([{"coords": [0, 0, 0]}])")).code, 1);
}

TEST(Cli, SweepIsDeterministic) {
    const std::string a = (scratch() / "s1.json").string(), b = (scratch() / "s2.json").string();
    EXPECT_EQ(run("sweep --d 3 --seed 7 --out " + a).code, 0);
    EXPECT_EQ(run("sweep --d 3 --seed 7 --out " + b).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a).find("time"), std::string::npos);
}

TEST(Cli, SweepDegreeOne) {
    json r = run_json("sweep --d 1 --seed 5", 0);
    ASSERT_EQ(r["rows"].size(), 1u);
    EXPECT_EQ(r["rows"][0]["n"], 0);
    EXPECT_EQ(r["rows"][0]["constructed"], 3);
}

TEST(Cli, PerturbTransversalLines) {
    const std::string l1 = write_file("l1.json", R"({"degree": 1, "coefficients": [{"i": 1, "j": 0, "k": 0, "re": 1}]})");
    const std::string l2 = write_file("l2.json", R"({"degree": 1, "coefficients": [{"i": 0, "j": 1, "k": 0, "re": 1}]})");
    json r = run_json("perturb --delta 1e-4 --trials 100 --seed 2 " + l1 + " " + l2, 0);
    EXPECT_EQ(r["label"], "EXPERIMENT");
    EXPECT_EQ(r["trials"].size(), 100u);
    EXPECT_LT(r["summary"]["max"].get<double>(), 1e-3);
    EXPECT_EQ(r["summary"]["failures"], 0);
    json z = run_json("perturb --delta 0 --trials 5 " + l1 + " " + l2, 0);
    EXPECT_EQ(z["summary"]["max"].get<double>(), 0.0);
}

TEST(Cli, PerturbRejectsTangency) {
    const std::string line = write_file("tan.json", R"({"degree": 1, "coefficients": [{"i": 1, "j": 0, "k": 0, "re": 1}, {"i": 0, "j": 0, "k": 1, "re": -1}]})");
    json r = run_json("perturb " + corpus_file("conic") + " " + line, 2);
    EXPECT_NE(r["error"].get<std::string>().find("precondition failure"), std::string::npos);
}
