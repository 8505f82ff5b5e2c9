#include "yamacone/cli.hpp"
#include "yamacone/geometry.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace yamacone;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<nlohmann::json> records(const std::string& text) {
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
    return out;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, BoundExamples) {
    const double y5 = 20.0 * std::pow(std::numbers::pi, 1.2);
    const auto prod = run({"bound", "--manifold", "product:sphere:2,sphere:2", "--format", "json"});
    ASSERT_EQ(prod.code, 0) << prod.err;
    auto recs = records(prod.out);
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs.back()["formula"], "corollary1.4");
    EXPECT_NEAR(recs.back()["ratio"].get<double>(), 2.0 / 3, 1e-12);
    EXPECT_NEAR(recs.back()["value"].get<double>(), std::pow(2.0 / 3, 0.4) * y5, 1e-10);

    const auto cp2 = run({"bound", "cp2"});
    ASSERT_EQ(cp2.code, 0) << cp2.err;
    recs = records(cp2.out);
    ASSERT_EQ(recs.size(), 3u);
    EXPECT_NEAR(recs.back()["ratio"].get<double>(), 0.75, 1e-12);
    EXPECT_NEAR(recs.back()["value"].get<double>(), std::pow(0.75, 0.4) * y5, 1e-10);

    const auto s4 = run({"bound", "--manifold", "sphere:4"});
    EXPECT_NEAR(records(s4.out).back()["value"].get<double>(), sphere_yamabe(5), 1e-10);
}

TEST(Cli, BoundCsvAndOutputFile) {
    const auto path = temp_path("bound.csv");
    const auto r = run({"bound", "--manifold", "rp3", "--format", "csv", "--output", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    const auto rows = lines(text.str());
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], "formula,target,manifold,n,lambda,volume,normalized_volume,ratio,value,numerical,provenance");
    EXPECT_EQ(rows[3].substr(0, 13), "corollary1.4,");
}

TEST(Cli, Confirm) {
    const auto r = run({"bound", "--manifold", "cp2", "--confirm"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto last = records(r.out).back();
    EXPECT_LT(std::abs(last["numerical_rel_err"].get<double>()), 5e-3);
}

TEST(Cli, Minimize) {
    const auto r = run({"minimize", "--manifold", "sphere:4", "--grid", "4001", "--domain", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rec = records(r.out).at(0);
    EXPECT_LT(std::abs(rec["rel_err"].get<double>()), 5e-3);
    EXPECT_EQ(rec["n"], 4);

    const auto prod = run({"minimize", "--manifold", "product:sphere:2,sphere:2"});
    EXPECT_NEAR(records(prod.out).at(0)["value"].get<double>(), 67.2, 0.35);
    const auto s2 = run({"minimize", "sphere:2"});
    EXPECT_NEAR(records(s2.out).at(0)["value"].get<double>() / sphere_yamabe(3), 1.0, 5e-3);
    EXPECT_NEAR(sphere_yamabe(3), 43.82, 0.01);

    const auto path = temp_path("minimizer.csv");
    ASSERT_EQ(run({"minimize", "sphere:3", "--grid", "801", "--minimizer", path}).code, 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "x,value");
}

TEST(Cli, ConvergenceFailurePrintsPartialRecord) {
    const auto r = run({"minimize", "--manifold", "sphere:3", "--max-iterations", "2"});
    EXPECT_EQ(r.code, 4);
    const auto rec = records(r.out).at(0);
    EXPECT_EQ(rec["iterations"], 2);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, Profile) {
    const auto r = run({"profile", "--manifold", "sphere:2", "--samples", "99"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 100u);
    EXPECT_EQ(rows[0], "beta,cone_perimeter,sphere_perimeter,abs_diff");
    double worst = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double beta, c, s, d;
        char comma;
        std::istringstream row(rows[i]);
        row >> beta >> comma >> c >> comma >> s >> comma >> d;
        worst = std::max(worst, d);
        if (i == 50) {
            EXPECT_DOUBLE_EQ(beta, 0.5);
            EXPECT_NEAR(c, 2 / std::numbers::pi, 1e-12);
            EXPECT_NEAR(s, 2 / std::numbers::pi, 1e-12);
        }
    }
    EXPECT_LE(worst, 1e-10);
    EXPECT_EQ(run({"profile", "cp2", "--samples", "1"}).code, 2);
}

TEST(Cli, Verify) {
    const auto r = run({"verify", "--suite", "stability"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("PASS stability.round_base_degeneracy"), std::string::npos);
    EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
}

TEST(Cli, Determinism) {
    const std::vector<std::string> args{"verify", "--suite", "curvature", "--seed", "7"};
    EXPECT_EQ(run(args).out, run(args).out);
    const std::vector<std::string> bound{"bound", "product:cp2,sphere:2", "--format", "csv", "--confirm",
                                         "--grid", "1001"};
    EXPECT_EQ(run(bound).out, run(bound).out);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"bound", "--manifold", "torus"}).code, 2);
    EXPECT_EQ(run({"bound"}).code, 2);
    EXPECT_EQ(run({"bound", "--bogus"}).code, 2);
    EXPECT_EQ(run({"bound", "cp2", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bound", "cp2", "--catalog", temp_path("missing.json")}).code, 2);

    const auto path = temp_path("catalog.json");
    {
        std::ofstream out(path);
        out << R"([{"name": "flat", "n": 3, "lambda": 0, "volume": 1, "einstein": true},
                   {"name": "berger", "n": 3, "lambda": 1, "volume": 10, "einstein": false}])";
    }
    const auto flat = run({"bound", "--manifold", "flat", "--catalog", path});
    EXPECT_EQ(flat.code, 3) << flat.err;
    EXPECT_EQ(run({"minimize", "flat", "--catalog", path}).code, 3);
    const auto berger = run({"bound", "berger", "--catalog", path});
    ASSERT_EQ(berger.code, 0) << berger.err;
    EXPECT_EQ(records(berger.out).back()["formula"], "theorem1.2");
}

TEST(Cli, ConfigFile) {
    const auto path = temp_path("run.toml");
    {
        std::ofstream out(path);
        out << "manifold = \"cp2\"\nformat = \"csv\"\n";
    }
    const auto r = run({"bound", "--config", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out).size(), 4u);
}
