#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "primeshift/cli.hpp"

using namespace primeshift;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("primeshift_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

std::string range_file(const std::string& name, std::int64_t lo, std::int64_t hi) {
    std::string text;
    for (std::int64_t v = lo; v <= hi; ++v) text += std::to_string(v) + "\n";
    return write_temp(name, text);
}

}  // namespace

TEST(Cli, CheckInadmissibleIsNotAFailure) {
    const auto path = write_temp("01.txt", "0\n1\n");
    const auto r = run_cli({"check", path});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["version"], 1);
    EXPECT_EQ(j["subcommand"], "check");
    EXPECT_EQ(j["result"]["verdict"], "inadmissible");
    EXPECT_EQ(j["result"]["covering_prime"], 2);
}

TEST(Cli, GuaranteeOnLargeRange) {
    const auto path = range_file("range.txt", 1, 200'000);
    const auto r = run_cli({"guarantee", "--input", path});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_TRUE(j["result"]["satisfied"].get<bool>());
    EXPECT_GT(j["result"]["s"].get<int>(), 100);
    EXPECT_EQ(j["input_summary"]["size"], 200000);
}

TEST(Cli, VerifyLemmas) {
    const auto r = run_cli({"verify-lemmas", "--mertens-limit", "1000000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_TRUE(j["result"]["all_passed"].get<bool>());
    EXPECT_EQ(j["result"]["proof_constants"].size(), 3U);
    EXPECT_EQ(run_cli({"verify-lemmas", "--mertens-limit", "10"}).code, 2);
}

TEST(Cli, PruneTraceRoundTrips) {
    const auto path = range_file("prune.txt", -300, 2700);
    const auto r = run_cli({"prune", path});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    const auto& res = j["result"];
    std::vector<std::int64_t> final_set;
    for (const auto& v : res["final_set"]) final_set.push_back(report::to_int64(v));
    const auto set = IntegerSet::from_sorted(final_set);
    EXPECT_TRUE(check_admissible(set).admissible());
    EXPECT_EQ(res["final_size"].get<std::size_t>(), set.size());
    EXPECT_EQ(res["steps"].size(), res["s"].get<std::size_t>());
    std::uint64_t prev = 3001;
    for (const auto& st : res["steps"]) {
        EXPECT_GE(st["survivors_actual"].get<std::uint64_t>(), st["survivors_proxy"].get<std::uint64_t>());
        EXPECT_LE(st["survivors_actual"].get<std::uint64_t>(), prev);
        prev = st["survivors_actual"].get<std::uint64_t>();
    }
    EXPECT_LT(set.size(), res["stop_prime"].get<std::uint64_t>());
    EXPECT_TRUE(res["product_bound_holds"].get<bool>());
}

TEST(Cli, LargeIntegersBecomeStrings) {
    const auto r = run_cli({"gen", "two_pow_prime", "--count", "18"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    const auto& seq = j["result"]["sequence"];
    EXPECT_TRUE(seq[0].is_number());
    EXPECT_TRUE(seq[17].is_string());
    EXPECT_EQ(seq[17], "2305843009213693952");
    EXPECT_EQ(report::to_int64(seq[17]), std::int64_t{1} << 61);
    EXPECT_EQ(report::integer(std::int64_t{-(std::int64_t{1} << 53)}), json("-9007199254740992"));
    EXPECT_EQ(report::integer(std::int64_t{(std::int64_t{1} << 53) - 1}), json(9007199254740991LL));
}

TEST(Cli, GenTextFeedsBackAsInput) {
    const auto r = run_cli({"gen", "divisor_chain", "--count", "5", "--ratio", "3", "--format", "text"});
    ASSERT_EQ(r.code, 0);
    const auto path = write_temp("chain.txt", r.out);
    const auto c = run_cli({"check", path});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(json::parse(c.out)["input_summary"]["max"], 243);
}

TEST(Cli, RepsearchJsonAndCsv) {
    const auto path = write_temp("pow.txt", "2\n4\n8\n16\n32\n64\n128\n256\n512\n1024\n");
    const auto r = run_cli({"repsearch", path, "--from", "3", "--to", "100000", "--top", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["result"]["max_count"], 8);
    EXPECT_EQ(j["result"]["records"][0]["n"], 1095);
    EXPECT_FALSE(j["result"].contains("counts"));

    const auto csv = run_cli({"repsearch", path, "--from", "3", "--to", "12", "--format", "csv"});
    ASSERT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out.substr(0, 8), "n,count\n");
    EXPECT_NE(csv.out.find("\n5,1\n"), std::string::npos);  // 5 = 3 + 2
    EXPECT_NE(csv.out.find("\n7,2\n"), std::string::npos);  // 7 = 5 + 2 = 3 + 4

    const auto with = run_cli({"repsearch", path, "--from", "3", "--to", "12", "--counts"});
    EXPECT_EQ(json::parse(with.out)["result"]["counts"].size(), 10U);
}

TEST(Cli, RomanoffAndBoundAndPrimes) {
    auto r = run_cli({"romanoff", "--limit", "9"});
    ASSERT_EQ(r.code, 0);
    EXPECT_DOUBLE_EQ(json::parse(r.out)["result"]["density"].get<double>(), 0.75);

    r = run_cli({"bound", "--ell", "1"});
    EXPECT_DOUBLE_EQ(json::parse(r.out)["result"]["theorem1_bound"].get<double>(), -1.6);
    EXPECT_EQ(run_cli({"bound"}).code, 2);
    EXPECT_EQ(run_cli({"bound", "--x", "2"}).code, 2);

    r = run_cli({"primes", "--limit", "547", "--nth", "100"});
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["result"]["count"], 101);
    EXPECT_EQ(j["result"]["last"], 547);
    EXPECT_EQ(j["result"]["nth_prime"], 541);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"check"}).code, 2);  // no input
    EXPECT_EQ(run_cli({"check", write_temp("dup.txt", "7\n7\n")}).code, 2);
    EXPECT_EQ(run_cli({"check", write_temp("bad.txt", "1\nx\n")}).code, 2);
    EXPECT_EQ(run_cli({"romanoff", "--k-min", "2"}).code, 2);
    EXPECT_EQ(run_cli({"check", write_temp("ok.txt", "1\n"), "--format", "csv"}).code, 2);
    EXPECT_EQ(run_cli({"repsearch", write_temp("ok2.txt", "1\n"), "--from", "5"}).code, 2);
    EXPECT_EQ(run_cli({"gen", "nonsense"}).code, 2);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, ThreadsEnvOverridesFlag) {
    ::setenv("PRIMESHIFT_THREADS", "3", 1);
    EXPECT_EQ(cli::resolve_threads(5U), 3U);
    ::setenv("PRIMESHIFT_THREADS", "junk", 1);
    EXPECT_EQ(cli::resolve_threads(5U), 5U);
    ::unsetenv("PRIMESHIFT_THREADS");
    EXPECT_EQ(cli::resolve_threads(2U), 2U);
    EXPECT_GE(cli::resolve_threads(std::nullopt), 1U);
}

TEST(Cli, OutputFile) {
    const auto out = (std::filesystem::temp_directory_path() / "primeshift_test_out.json").string();
    const auto r = run_cli({"bound", "--ell", "100", "-o", out});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(out);
    const auto j = json::parse(f);
    EXPECT_EQ(j["subcommand"], "bound");
}

TEST(Cli, BinaryExitCodes) {
    const auto path = write_temp("bin01.txt", "0\n1\n");
    EXPECT_EQ(std::system((std::string(PRIMESHIFT_CLI_PATH) + " check " + path + " > /dev/null").c_str()), 0);
    const int rc = std::system((std::string(PRIMESHIFT_CLI_PATH) + " nope 2> /dev/null").c_str());
    EXPECT_EQ(WEXITSTATUS(rc), 2);
}
