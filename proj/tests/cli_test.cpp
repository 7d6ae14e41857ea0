#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cumsub/cli.hpp"

namespace cumsub {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& stdin_text = "")
{
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = cli::run_cli(args, {in, out, err});
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

TEST(Cli, TableCsv)
{
    const auto r = run({"table", "-S", "5,7", "-x", "55", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 57u);
    EXPECT_NE(r.out.find("\n17,5,3\n"), std::string::npos);
    EXPECT_NE(r.out.find("\n4,,0\n"), std::string::npos);
}

TEST(Cli, TableJsonAndText)
{
    const auto j = json::parse(run({"table", "-S", "5,7", "-x", "55", "--json"}).out);
    ASSERT_EQ(j["rows"].size(), 56u);
    EXPECT_EQ(j["rows"][35]["o"], 7);
    EXPECT_TRUE(j["rows"][3]["opt"].is_null());

    const auto text = run({"table", "-S", "5,7", "-x", "0"});
    EXPECT_EQ(text.code, 0);
    EXPECT_EQ(count_lines(text.out), 2u);

    const auto bands = run({"table", "-S", "5,7", "-x", "55", "--blocks", "14"});
    EXPECT_EQ(bands.code, 0);
    EXPECT_EQ(count_lines(bands.out), 16u);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({"table", "-S", "7,5", "-x", "10"}).code, 2);
    EXPECT_EQ(run({"table", "-S", "5,7"}).code, 2);
    EXPECT_EQ(run({"table", "-S", "5,7", "-x", "-3"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"twoaction", "7", "5"}).code, 2);
    EXPECT_EQ(run({"scan", "nonsense"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Converge)
{
    auto j = json::parse(run({"converge", "-S", "5,7", "--json"}).out);
    EXPECT_EQ(j["convergence"]["xi"], 31);
    EXPECT_EQ(j["period"]["period"], 14);
    j = json::parse(run({"converge", "-S", "1,2,3", "--json"}).out);
    EXPECT_EQ(j["convergence"]["xi"], 3);
    EXPECT_EQ(j["period"]["period"], 6);
    j = json::parse(run({"converge", "-S", "4,5", "--json"}).out);
    EXPECT_EQ(j["convergence"]["xi"], 32);
    EXPECT_NE(run({"converge", "-S", "5,7"}).out.find("xi               31"), std::string::npos);
}

TEST(Cli, TwoAction)
{
    const auto r = run({"twoaction", "5", "7"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("X* = {5,6,17,18,29,30}"), std::string::npos);
    EXPECT_NE(r.out.find("i_max = 3"), std::string::npos);
    EXPECT_NE(r.out.find("xi = 31"), std::string::npos);
    const auto j = json::parse(run({"twoaction", "2", "3", "--json"}).out);
    EXPECT_EQ(j["x_star"], (std::vector<heap_t>{2, 7}));
}

TEST(Cli, TruncWithCsv)
{
    const auto dir = std::filesystem::temp_directory_path() / "cumsub_cli_trunc";
    std::filesystem::create_directories(dir);
    const auto r = run({"trunc", "2", "10", "--csv", (dir / "tr_{m}.csv").string(), "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    ASSERT_EQ(j.size(), 9u);
    EXPECT_EQ(j[8]["tr"], (std::vector<heap_t>{1, 2, 2, 2, 2, 3, 3, 5, 9}));
    EXPECT_TRUE(j[8]["conjecture"]["pass"]);
    for (int m = 2; m <= 10; ++m)
        EXPECT_TRUE(std::filesystem::exists(dir / ("tr_" + std::to_string(m) + ".csv")));
    std::filesystem::remove_all(dir);
}

TEST(Cli, GridExports)
{
    const auto dir = std::filesystem::temp_directory_path() / "cumsub_cli_grid";
    std::filesystem::create_directories(dir);
    const auto ppm = dir / "g.ppm";
    const auto r = run({"grid", "-S", "5,7", "-w", "50", "-h", "60", "--ppm", ppm.string(),
                        "--csv", (dir / "g.csv").string(), "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(std::filesystem::file_size(ppm), std::string("P6\n50 60\n255\n").size() + 50 * 60 * 3);
    std::ifstream csv(dir / "g.csv");
    EXPECT_EQ(count_lines(std::string(std::istreambuf_iterator<char>(csv), {})), 50u);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["width"], 50);
    std::filesystem::remove_all(dir);
}

TEST(Cli, IoFailureExitCode)
{
    EXPECT_EQ(run({"grid", "-S", "5,7", "-w", "5", "-h", "5", "--pgm", "/nonexistent_dir/x.pgm"}).code, 4);
    EXPECT_EQ(run({"scan", "duality", "--m-min", "2", "--m-max", "4", "-o", "/nonexistent_dir/x.json"}).code, 4);
}

TEST(Cli, ScanEnvelope)
{
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"scan", "duality", "--m-min", "2", "--m-max", "20", "--json"},
          {"scan", "last-move", "--s1-max", "6", "--x-cap", "80", "--json"},
          {"scan", "one-greedy", "--s1-max", "6", "--x-cap", "80", "--json"},
          {"scan", "convergence", "--max-s", "6", "--sizes", "2,3", "--json"},
          {"scan", "sacrifice", "--max-s", "8", "--x-cap", "40", "--json"},
          {"scan", "diagonals", "-S", "5,7", "-w", "120", "-h", "120", "--k-max", "5", "--json"}}) {
        const auto r = run(args);
        ASSERT_EQ(r.code, 0) << args[1] << ": " << r.err;
        const auto j = json::parse(r.out);
        for (const char* key :
             {"schema_version", "conjecture", "parameters", "counterexamples", "swept_space", "verdict"})
            EXPECT_TRUE(j.contains(key)) << args[1] << " missing " << key;
        EXPECT_EQ(j["schema_version"], 1);
        if (args[1] != "sacrifice") {
            EXPECT_EQ(j["verdict"], "survives") << args[1];
        }
    }
}

TEST(Cli, PlayEngineAsPositive)
{
    // {2,3} from 7: engine opens with 2; human answers 3, engine takes 2
    const auto r = run({"play", "-S", "2,3", "-x", "7", "--json"}, "3\n");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("engine takes 2"), std::string::npos);
    const auto j = json::parse(r.out.substr(r.out.find("\n{")));
    EXPECT_EQ(j["moves"][0]["action"], 2);
    EXPECT_GE(j["final_score"].get<score_t>(), 1);
}

TEST(Cli, PlayTerminalStart)
{
    const auto r = run({"play", "-S", "5,7", "-x", "4"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("Result 0"), std::string::npos);
}

TEST(Cli, PlayHumanPositiveRepromptsOnIllegalMove)
{
    const auto r = run({"play", "-S", "5,7", "-x", "17", "--engine", "negative", "--json"},
                       "6\n7\n");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("illegal move"), std::string::npos);
    const auto j = json::parse(r.out.substr(r.out.find("\n{")));
    EXPECT_EQ(j["moves"][0]["action"], 7);
    // 17 -7-> 10 engine 7 -> 3 terminal: score 0, below o(17) = 3
    EXPECT_EQ(j["final_score"], 0);
}

TEST(Cli, PlayInputClosed)
{
    const auto r = run({"play", "-S", "5,7", "-x", "17", "--engine", "negative"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("abandoned"), std::string::npos);
}

TEST(Cli, Deterministic)
{
    const std::vector<std::string> args{"scan", "convergence", "--max-s", "7", "--json"};
    EXPECT_EQ(run(args).out, run(args).out);
    const std::vector<std::string> g{"grid", "-S", "2,10,13,14", "-w", "100", "-h", "100",
                                     "--diagonals", "3", "--json"};
    EXPECT_EQ(run(g).out, run(g).out);
}

} // namespace
} // namespace cumsub
