#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "sendov/sendov.hpp"

using namespace sendov;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / ("sendov_io_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p;
}

struct CliRun {
    int code = -1;
    std::string output;
};

CliRun cli(const std::string& args) {
    std::string cmd = std::string(SENDOV_CLI_PATH) + " " + args + " 2>&1";
    CliRun run;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return run;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) run.output += buf;
    int status = pclose(pipe);
    run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(PolynomialJson, RootsForm) {
    auto doc = parse_polynomial_document(json::parse(R"({"roots": [[-1, 0], ["0", "0"], 1]})"));
    EXPECT_EQ(doc.form, PolynomialForm::roots);
    EXPECT_EQ(doc.degree(), 3);
    auto p = build_polynomial<double>(doc);
    EXPECT_EQ(p.coefficient(1), Complex<double>(-1.0));
    EXPECT_TRUE(p.has_known_roots());
}

TEST(PolynomialJson, CoefficientsWithImplicitLeadingOne) {
    auto full = parse_polynomial_document(json::parse(R"({"coefficients": [[1,0],[0,0],[1,0]]})"));
    EXPECT_EQ(full.degree(), 2);
    auto implicit = parse_polynomial_document(json::parse(R"({"coefficients": [1, 0], "degree": 2})"));
    EXPECT_EQ(implicit.degree(), 2);
    auto a = build_polynomial<double>(full);
    auto b = build_polynomial<double>(implicit);
    EXPECT_EQ(coefficient_distance(a, b), 0.0);
    EXPECT_THROW(parse_polynomial_document(json::parse(R"({"coefficients": [1, 0, 0, 0], "degree": 2})")),
                 std::invalid_argument);
}

TEST(PolynomialJson, StringsKeepFullPrecision) {
    auto doc = parse_polynomial_document(json::parse(R"({"roots": [["0.1", "0"], ["-0.7", "0.2"]]})"));
    using R = mp_real<48>;
    auto p = build_polynomial<R>(doc);
    EXPECT_LT(static_cast<double>(abs(p.known_roots()->at(0) - Complex<R>(real_from_string<R>("0.1")))), 1e-45);
}

TEST(PolynomialJson, QuadraticFactorsForm) {
    auto doc = read_polynomial_document(deg52_data_file());
    EXPECT_EQ(doc.form, PolynomialForm::quadratic_factors);
    EXPECT_EQ(doc.degree(), 52);
    EXPECT_EQ(doc.quadratic_coefficients.size(), 25u);
    ASSERT_TRUE(doc.beta.has_value());
    EXPECT_EQ(*doc.beta, "0.09");
}

TEST(PolynomialJson, Errors) {
    EXPECT_THROW(parse_polynomial_document(json::parse(R"({})")), std::invalid_argument);
    EXPECT_THROW(parse_polynomial_document(json::parse(R"({"roots": [1], "coefficients": [1, 2]})")),
                 std::invalid_argument);
    EXPECT_THROW(parse_polynomial_document(json::parse(R"({"roots": [["x", 0]]})")), std::invalid_argument);
    EXPECT_THROW(read_polynomial_document(write_text("broken.json", "{ not json")), std::invalid_argument);
    EXPECT_THROW(read_polynomial_document(scratch_dir() / "missing.json"), std::runtime_error);
}

TEST(PolynomialJson, WriteThenReadRoundTrips) {
    using R = mp_real<48>;
    std::vector<Complex<R>> roots{Complex<R>(real_from_string<R>("0.3"), real_from_string<R>("-0.4")),
                                  Complex<R>(real_from_string<R>("-0.9"))};
    auto p = from_roots(roots);
    auto doc = parse_polynomial_document(polynomial_to_json(p, 40));
    auto q = build_polynomial<R>(doc);
    EXPECT_LT(static_cast<double>(coefficient_distance(p, q)), 1e-38);
    EXPECT_EQ(doc.precision_digits.value_or(0), 40);
}

TEST(SweepCsv, ColumnsAndVerdicts) {
    SearchConfig cfg;
    cfg.threads = 1;
    cfg.starts = 2;
    auto rows = sweep({2}, {0.5}, cfg);
    std::ostringstream out;
    write_sweep_csv(out, rows);
    std::istringstream in(out.str());
    std::string header, line;
    std::getline(in, header);
    EXPECT_EQ(header, "beta,degree,d_value,bound_name,bound_value,margin,verdict,starts,evaluations,seed,constraint,verified");
    std::getline(in, line);
    EXPECT_NE(line.find(",holds,"), std::string::npos);
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11);
}

TEST(Manifest, RecordsRunParameters) {
    RunManifest m;
    m.command = "sweep";
    m.arguments = {"--degrees", "2"};
    m.precision = 30;
    m.seed = 7;
    m.output = (scratch_dir() / "run.csv").string();
    m.emitted_records["rows"] = 3;
    write_manifest(m);
    auto j = json::parse(slurp(manifest_path(m.output)));
    EXPECT_EQ(j["command"], "sweep");
    EXPECT_EQ(j["seed"], 7);
    EXPECT_EQ(j["precision"], 30);
    EXPECT_EQ(j["emitted_records"]["rows"], 3);
    EXPECT_TRUE(j.contains("created_utc"));
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("verify --precision 5").code, 2);
    EXPECT_EQ(cli("verify --only nonsense").code, 2);
    EXPECT_EQ(cli("sweep --degrees 2 --betas 0:2:0.5").code, 2);
    EXPECT_EQ(cli("sweep --degrees 1 --betas 0.5").code, 2);
    EXPECT_EQ(cli("sweep --degrees 2 --betas 0.5 --constraint sideways").code, 2);
    EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, VerifyDeg52) {
    auto run = cli("verify --only deg52");
    EXPECT_EQ(run.code, 0) << run.output;
    EXPECT_NE(run.output.find("PASS deg52"), std::string::npos);
    auto low = cli("verify --only deg52 --precision 20");
    EXPECT_EQ(low.code, 0) << low.output;
}

TEST(Cli, VerifyWritesReportAndManifest) {
    auto out = scratch_dir() / "verify.json";
    auto run = cli("verify --only scalar_inequality --out " + out.string());
    EXPECT_EQ(run.code, 0) << run.output;
    ASSERT_TRUE(fs::exists(out));
    ASSERT_TRUE(fs::exists(manifest_path(out)));
    auto m = json::parse(slurp(manifest_path(out)));
    EXPECT_EQ(m["command"], "verify");
    EXPECT_EQ(m["exit_code"], 0);
}

TEST(Cli, DistanceOfOddCubic) {
    auto f = write_text("cubic.json", R"({"roots": [[-1, 0], [0, 0], [1, 0]]})");
    auto run = cli("distance " + f.string() + " --beta 0");
    EXPECT_EQ(run.code, 0) << run.output;
    EXPECT_NE(run.output.find("5.7735026918962576"), std::string::npos) << run.output;
    EXPECT_NE(run.output.find("member"), std::string::npos);
}

TEST(Cli, DistanceRejectsNonRoot) {
    auto f = write_text("cubic2.json", R"({"coefficients": [0, -1, 0], "degree": 3})");
    auto run = cli("distance " + f.string() + " --beta 0.5");
    EXPECT_EQ(run.code, 1) << run.output;
    EXPECT_NE(run.output.find("not a root"), std::string::npos) << run.output;
}

TEST(Cli, DistanceOfDegree52File) {
    auto run = cli("distance " + deg52_data_file().string());
    EXPECT_EQ(run.code, 0) << run.output;
    EXPECT_NE(run.output.find("9.3185288974640"), std::string::npos) << run.output;
}

TEST(Cli, SweepMatchesClosedForms) {
    auto out = scratch_dir() / "sweep.csv";
    auto run = cli("sweep --degrees 2,3 --betas 0:1:0.25 --starts 3 --out " + out.string());
    EXPECT_EQ(run.code, 0) << run.output;
    ASSERT_TRUE(fs::exists(manifest_path(out)));
    std::istringstream in(slurp(out));
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        ASSERT_EQ(cells.size(), 12u);
        double beta = std::stod(cells[0]);
        int n = std::stoi(cells[1]);
        double d = std::stod(cells[2]);
        EXPECT_NEAR(d, n == 2 ? r2_formula(beta) : r3_formula(beta), 1e-3) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 10);
    auto m = json::parse(slurp(manifest_path(out)));
    EXPECT_EQ(m["emitted_records"]["rows"], 10);
}

TEST(Cli, CounterexampleJson) {
    auto run = cli("counterexample --format json");
    EXPECT_EQ(run.code, 0) << run.output;
    auto j = json::parse(run.output);
    EXPECT_EQ(j["passed"], true);
    EXPECT_NEAR(std::stod(j["record"]["d"].get<std::string>()), 0.84197, 1e-4);
}
