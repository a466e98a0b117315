#include "liouville/cli.hpp"
#include "liouville/expression.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace liouville {
namespace {

using nlohmann::json;

cli::RunConfig resolve(const std::string& sub, const json& overrides, const json& file = json::object(),
                       const char* env = nullptr) {
    return cli::resolve_config(sub, file, overrides, env);
}

std::vector<std::string> problems_of(const std::string& sub, const json& overrides, const json& file = json::object()) {
    try {
        resolve(sub, overrides, file);
    } catch (const cli::ConfigError& e) {
        return e.problems();
    }
    return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& prefix) {
    for (const auto& p : problems)
        if (p.rfind(prefix, 0) == 0) return true;
    return false;
}

TEST(Config, EveryProblemIsReportedWithItsKey) {
    const auto p = problems_of("verify-supersolution",
                               {{"sigma", 0.5}, {"dim", 0}, {"radii", "4,x,2"}, {"bogus", 1}, {"workers", "many"}});
    EXPECT_TRUE(mentions(p, "sigma:"));
    EXPECT_TRUE(mentions(p, "dim:"));
    EXPECT_TRUE(mentions(p, "radii[1]:"));
    EXPECT_TRUE(mentions(p, "bogus: unknown key"));
    EXPECT_TRUE(mentions(p, "workers:"));
    EXPECT_GE(p.size(), 5u);
}

TEST(Config, CrossFieldRules) {
    EXPECT_TRUE(mentions(problems_of("tune", {{"family", "factorial-tree"}}), "family:"));
    EXPECT_TRUE(mentions(problems_of("verify-supersolution", {{"delta", 0.1}}), "K:"));
    EXPECT_TRUE(mentions(problems_of("shoot", {{"family", "lattice"}}), "family:"));
    EXPECT_TRUE(mentions(problems_of("certificate", json::object()), "u:"));
    EXPECT_TRUE(mentions(problems_of("verify-supersolution", {{"family", "factorial-tree"}, {"u", "x1"}}), "u:"));
    EXPECT_TRUE(mentions(problems_of("build-info", {{"family", "lattice"}, {"x0", "1,2"}}), "x0:"));
    EXPECT_TRUE(mentions(problems_of("build-info", {{"degree", 2}, {"family", "homogeneous-tree"}}), "degree:"));
    EXPECT_TRUE(mentions(problems_of("volume-growth", {{"radii", "1,2,3"}}), "radii:"));
    EXPECT_TRUE(mentions(problems_of("volume-growth", {{"radii", "1,3,2,4"}}), "radii[2]:"));
    EXPECT_TRUE(mentions(problems_of("nonsense", json::object()), "subcommand:"));
}

TEST(Config, FlagsOverrideTheFileAndDefaultsFollowTheSubcommand) {
    const auto c = resolve("verify-supersolution", {{"sigma", "4"}}, {{"sigma", 3.5}, {"dim", 3}, {"tol", 1e-10}});
    EXPECT_EQ(c.sigma, 4.0);
    EXPECT_EQ(c.tol, 1e-10);
    ASSERT_TRUE(c.radius.has_value());
    EXPECT_EQ(*c.radius, 50.0);
    EXPECT_EQ(c.out, "verify-supersolution.json");
    EXPECT_EQ(resolve("max-principle", {{"u", "1"}}).radius, 10.0);
    EXPECT_FALSE(resolve("shoot", {{"family", "flat-tree"}}).radius.has_value());
}

TEST(Config, BudgetFromTheEnvironmentUnlessSetExplicitly) {
    EXPECT_EQ(resolve("build-info", json::object(), json::object(), "1234").budget, 1234u);
    EXPECT_EQ(resolve("build-info", {{"budget", 99}}, json::object(), "1234").budget, 99u);
    EXPECT_EQ(resolve("build-info", json::object(), json::object(), nullptr).budget, kDefaultVertexBudget);
    try {
        resolve("build-info", json::object(), json::object(), "-3");
        FAIL() << "negative environment budget accepted";
    } catch (const cli::ConfigError& e) {
        EXPECT_TRUE(mentions(e.problems(), cli::kBudgetVariable));
    }
}

TEST(Config, ExpressionVariablesDependOnTheFamily) {
    EXPECT_TRUE(mentions(problems_of("certificate", {{"family", "factorial-tree"}, {"u", "x1"}}), "u:"));
    EXPECT_TRUE(mentions(problems_of("certificate", {{"u", "n + 1"}}), "u:"));
    EXPECT_TRUE(mentions(problems_of("certificate", {{"u", "1 +"}}), "u:"));
    EXPECT_NO_THROW(resolve("certificate", {{"family", "factorial-tree"}, {"u", "1/(n+1)"}}));
    EXPECT_NO_THROW(resolve("certificate", {{"u", "exp(-r2)"}}));
}

TEST(Execute, ExitCodesFollowTheVerdict) {
    const auto subcritical = cli::execute(resolve(
        "verify-supersolution", {{"sigma", 2.5}, {"delta", 0.01}, {"K", 10}, {"radius", 10}}));
    EXPECT_EQ(subcritical.exit_code, cli::kExitNegative);

    const auto tuned = cli::execute(resolve("tune", {{"family", "homogeneous-tree"}, {"sigma", 2}, {"epsilon", 0.5}}));
    EXPECT_EQ(tuned.exit_code, cli::kExitPass);
    EXPECT_EQ(tuned.report["result"].is_null(), false);

    const auto flat = cli::execute(resolve("shoot", {{"family", "flat-tree"}, {"u0", 1}, {"depth", 50}}));
    EXPECT_EQ(flat.exit_code, cli::kExitPass);
    EXPECT_EQ(flat.verdict, "crossed zero at level 1");
    ASSERT_TRUE(flat.csv.has_value());
    EXPECT_EQ(flat.csv->rfind("n,u_n,residual\n", 0), 0u);

    EXPECT_EQ(cli::execute(resolve("volume-growth", {{"radii", "4,8,12,16"}, {"sigma", 3}})).exit_code, cli::kExitPass);
}

TEST(Execute, FailuresToComputeExitWithOne) {
    const auto dir = std::filesystem::temp_directory_path() / "liouville_cli_bracket";
    std::filesystem::create_directories(dir);
    const auto c = resolve("shoot", {{"family", "homogeneous-tree"},
                                     {"bracket", "0.01,0.9"},
                                     {"depth", 200},
                                     {"out", (dir / "shoot.json").string()}});
    std::ostringstream out, err;
    EXPECT_EQ(cli::run(c, out, err), cli::kExitError);
    EXPECT_NE(err.str().find("does not straddle"), std::string::npos);
    std::ifstream in(dir / "shoot.json");
    const auto report = json::parse(in);
    EXPECT_EQ(report["exit_code"], cli::kExitError);
    EXPECT_EQ(report["error"]["kind"], "bracket");
    EXPECT_TRUE(std::filesystem::exists(dir / "shoot.meta.json"));
    std::filesystem::remove_all(dir);
}

TEST(Execute, BudgetOverrunIsAnError) {
    const auto c = resolve("build-info", {{"radius", 30}, {"budget", 100}});
    std::ostringstream out, err;
    const auto dir = std::filesystem::temp_directory_path() / "liouville_cli_budget";
    auto cc = c;
    cc.out = (dir / "r.json").string();
    EXPECT_EQ(cli::run(cc, out, err), cli::kExitError);
    std::filesystem::remove_all(dir);
}

TEST(Execute, ReportsAreReproducible) {
    const auto c = resolve("verify-supersolution", {{"sigma", 4}, {"delta", 0.01}, {"K", 30}, {"radius", 12},
                                                    {"workers", 2}});
    const auto a = cli::execute(c);
    const auto b = cli::execute(c);
    EXPECT_EQ(a.report.dump(2), b.report.dump(2));
    auto one = c;
    one.workers = 1;
    auto single = cli::execute(one).report;
    auto multi = a.report;
    // the configuration block records the worker count; everything else agrees
    single["config"].erase("workers");
    multi["config"].erase("workers");
    EXPECT_EQ(single.dump(2), multi.dump(2));
}

TEST(CommandLine, WritesReportTableAndSidecar) {
    const auto dir = std::filesystem::temp_directory_path() / "liouville_cli_main";
    std::filesystem::remove_all(dir);
    const std::string report = (dir / "vg.json").string();
    const char* argv[] = {"graph-liouville", "volume-growth", "--radii", "4,8,12,16", "--sigma", "3", "--out",
                          report.c_str()};
    std::ostringstream out, err;
    EXPECT_EQ(cli::main(8, argv, out, err), cli::kExitPass) << err.str();
    EXPECT_TRUE(std::filesystem::exists(dir / "vg.json"));
    EXPECT_TRUE(std::filesystem::exists(dir / "vg.csv"));
    std::ifstream meta(dir / "vg.meta.json");
    const auto m = json::parse(meta);
    EXPECT_EQ(m["report"], "vg.json");
    EXPECT_TRUE(m.contains("generated_at"));

    const std::string bad = (dir / "bad.json").string();
    const char* argv2[] = {"graph-liouville", "tune", "--sigma", "0.5", "--dim", "0", "--out", bad.c_str()};
    std::ostringstream out2, err2;
    EXPECT_EQ(cli::main(8, argv2, out2, err2), cli::kExitError);
    EXPECT_NE(err2.str().find("sigma:"), std::string::npos);
    EXPECT_NE(err2.str().find("dim:"), std::string::npos);
    std::ifstream in(bad);
    const auto r = json::parse(in);
    EXPECT_EQ(r["error"]["kind"], "config");
    EXPECT_EQ(r["error"]["problems"].size(), 2u);
    std::filesystem::remove_all(dir);
}

double eval(const std::string& text, std::vector<double> x = {}, double r = 0.0, double n = 0.0) {
    ExpressionInputs in{.coordinates = x, .r = r, .r2 = r * r, .n = n, .has_r = true, .has_n = true};
    return Expression::parse(text).evaluate(in);
}

TEST(Expression, PrecedenceAndAssociativity) {
    EXPECT_EQ(eval("1 + 2 * 3"), 7.0);
    EXPECT_EQ(eval("(1 + 2) * 3"), 9.0);
    EXPECT_EQ(eval("2 ^ 3 ^ 2"), 512.0);
    EXPECT_EQ(eval("-2 ^ 2"), -4.0);
    EXPECT_EQ(eval("8 / 4 / 2"), 1.0);
    EXPECT_EQ(eval("1 - 2 - 3"), -4.0);
    EXPECT_EQ(eval("1e-3 * 2"), 2e-3);
}

TEST(Expression, FunctionsAndVariables) {
    EXPECT_NEAR(eval("exp(1)"), std::exp(1.0), 1e-15);
    EXPECT_NEAR(eval("sqrt(x1^2 + x2^2)", {3, 4}), 5.0, 1e-15);
    EXPECT_EQ(eval("pow(2, 10) + min(1, 2) + max(1, 2) + abs(-1)"), 1028.0);
    EXPECT_NEAR(eval("cos(pi)"), -1.0, 1e-15);
    EXPECT_NEAR(eval("log(r2) - 2 * log(r)", {}, 7.0), 0.0, 1e-15);
    EXPECT_EQ(eval("n + 1", {}, 0.0, 4.0), 5.0);
    const auto e = Expression::parse("x3 + r");
    EXPECT_EQ(e.coordinate_arity(), 3);
    EXPECT_TRUE(e.uses_distance());
    EXPECT_FALSE(e.uses_level());
}

TEST(Expression, ParseErrorsNameTheColumn) {
    for (const auto& [text, column] : std::vector<std::pair<std::string, std::string>>{
             {"1 +", "column 4"}, {"2 * (3", "column 7"}, {"foo(1)", "column 1"}, {"1 $ 2", "column 3"}}) {
        try {
            Expression::parse(text);
            ADD_FAILURE() << text << " parsed";
        } catch (const SpecError& e) {
            EXPECT_NE(std::string(e.what()).find(column), std::string::npos) << text << ": " << e.what();
        }
    }
}

TEST(Expression, MissingVariablesFailAtEvaluation) {
    const std::vector<double> two{1, 2};
    EXPECT_THROW(Expression::parse("x3").evaluate({.coordinates = two}), EvaluationError);
    EXPECT_THROW(Expression::parse("n").evaluate({.coordinates = two}), EvaluationError);
    EXPECT_THROW(Expression::parse("r").evaluate({}), EvaluationError);
}

}  // namespace
}  // namespace liouville
