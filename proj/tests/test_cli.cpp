#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dickson/output.hpp"
#include "gtest/gtest.h"

namespace {

using json = nlohmann::ordered_json;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(DICKSON_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<json> json_lines(const std::string& out) {
    std::vector<json> v;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) v.push_back(json::parse(line));
    return v;
}

TEST(Cli, Eval) {
    EXPECT_EQ(run("eval 3 1 5 2").out, "2\n");
    EXPECT_EQ(run("eval 1 1 99 41").out, "41\n");
    EXPECT_EQ(run("eval 0 1 10 7").out, "2\n");
    EXPECT_EQ(run("eval 6 1 1000000000 3 --recurrence").out, "322\n");
    const auto checked = run("eval 1000 1 997 5 --check");
    EXPECT_EQ(checked.code, 0);
    EXPECT_EQ(run("eval 1000 1 997 5 --fast").out, run("eval 1000 1 997 5 --recurrence").out);
}

TEST(Cli, EvalErrors) {
    EXPECT_EQ(run("eval 3 1 0 2").code, 2);
    EXPECT_EQ(run("eval x 1 5 2").code, 2);
    EXPECT_EQ(run("eval -3 1 5 2").code, 2);
    EXPECT_EQ(run("eval 3 1 5").code, 2);
    EXPECT_EQ(run("eval 3 1 5 2 --fast --recurrence").code, 2);
    EXPECT_EQ(run("bogus").code, 2);
}

TEST(Cli, Order) {
    const auto r7 = run("--json order 7");
    ASSERT_EQ(r7.code, 0);
    const auto j7 = json_lines(r7.out).at(0);
    EXPECT_EQ(j7["result"]["order"], "2");
    EXPECT_EQ(j7["method"], "closed_form");

    const auto j105 = json_lines(run("--json order 105").out).at(0);
    EXPECT_EQ(j105["result"]["order"], "2");
    EXPECT_EQ(j105["method"], "kernel_enum");

    const auto j1 = json_lines(run("--json order 1").out).at(0);
    EXPECT_EQ(j1["result"]["order"], "1");
    EXPECT_EQ(j1["method"], "trivial");

    for (const char* m : {"closed", "enum", "oracle"}) {
        const auto j = json_lines(run(std::string("--json order 9 --method ") + m).out).at(0);
        EXPECT_EQ(j["result"]["order"], "2") << m;
    }
    EXPECT_EQ(run("order 3000 --method oracle").code, 5);
    EXPECT_EQ(run("order 15 --method closed").code, 2);
    EXPECT_EQ(run("order 0").code, 2);
    EXPECT_EQ(run("order 9223372036854775783").code, 4);
}

TEST(Cli, Kernel) {
    EXPECT_EQ(run("kernel 15").out, "K_15 = {1, 5, 7, 11} mod 12  (|K| = 4)\n");
    EXPECT_EQ(run("kernel 45").out, "K_45 = {1, 11} mod 12  (|K| = 2)\n");
    EXPECT_EQ(run("kernel 8").out, "K_8 = {1, 5} mod 6  (|K| = 2)\n");
    const auto j = json_lines(run("--json kernel 15 --witnesses").out).at(0);
    ASSERT_EQ(j["result"]["witnesses"].size(), 4u);
    EXPECT_EQ(j["result"]["witnesses"][1]["k"], "5");
    EXPECT_EQ(j["result"]["witnesses"][1]["tuple"], (json{"1", "5"}));
    EXPECT_EQ(j["result"]["witnesses"][1]["moduli"], (json{"4", "12"}));
    EXPECT_EQ(run("kernel 1").code, 2);
}

TEST(Cli, TextAndJsonAgree) {
    const auto text = run("order 105").out;
    const auto j = json_lines(run("--json order 105").out).at(0);
    const std::string order = j["result"]["order"];
    EXPECT_NE(text.find("|G_105| = " + order), std::string::npos);
    const auto prof_text = run("profile 15").out;
    const auto prof = json_lines(run("--json profile 15").out).at(0);
    EXPECT_NE(prof_text.find("w: " + prof["result"]["w"].get<std::string>()), std::string::npos);
    EXPECT_EQ(prof["result"]["ls"], (json{"4", "12"}));
}

TEST(Cli, JsonRecordsRoundTrip) {
    for (const char* args : {"--json order 105", "--json kernel 45 --witnesses", "--json eval 5 1 7 3",
                             "--json solve 2:6 5:9", "--json is-perm 7 15", "--json profile 8"}) {
        const auto lines = json_lines(run(args).out);
        ASSERT_EQ(lines.size(), 1u) << args;
        const auto rec = lines[0].get<dickson::OutputRecord>();
        EXPECT_EQ(json(rec), lines[0]) << args;
    }
}

TEST(Cli, SolveAndIsPerm) {
    EXPECT_EQ(run("solve 2:6 5:9").out, "14 mod 18\n");
    EXPECT_EQ(run("solve 1:4 2:6").out, "no solution\n");
    EXPECT_EQ(run("solve -1:4 -1:12 -1:24").out, "23 mod 24\n");
    EXPECT_EQ(run("solve 1:1").code, 2);
    const auto j = json_lines(run("--json is-perm 3 5").out).at(0);
    EXPECT_EQ(j["result"]["w_criterion"], "false");
    EXPECT_EQ(j["result"]["v_criterion"], "false");
    EXPECT_EQ(j["result"]["brute_force"], "false");
    const auto j2 = json_lines(run("--json is-perm 7 15 --method brute").out).at(0);
    EXPECT_EQ(j2["result"]["brute_force"], "true");
    EXPECT_EQ(run("is-perm 7 6000 --method brute").code, 5);
}

TEST(Cli, BatchInput) {
    const std::string path = testing::TempDir() + "dickson_cli_batch.txt";
    {
        std::ofstream f(path);
        f << "7\n105\n\n16\n";
    }
    const auto lines = json_lines(run("order --input " + path).out);
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0]["result"]["order"], "2");
    EXPECT_EQ(lines[1]["result"]["order"], "2");
    EXPECT_EQ(lines[2]["result"]["order"], "2");
    const auto kernels = json_lines(run("kernel --input " + path).out);
    ASSERT_EQ(kernels.size(), 3u);
    EXPECT_EQ(kernels[0]["result"]["kernel"], (json{"1", "7", "17", "23"}));
    const auto table = json_lines(run("table --input " + path + " --method oracle").out);
    ASSERT_EQ(table.size(), 3u);
    EXPECT_EQ(table[1]["method"], "oracle");
    EXPECT_EQ(run("order --input /nonexistent/file").code, 2);
}

TEST(Cli, Table) {
    const auto out = run("table --from 2 --to 9 --prime-powers").out;
    EXPECT_NE(out.find("9\t12\t4\t2\t2\t2"), std::string::npos) << out;
    const auto lines = json_lines(run("--json table --from 2 --to 20").out);
    EXPECT_EQ(lines.size(), 19u);
}

TEST(Cli, Verify) {
    const auto r = run("--json verify --max-n 100 --seed 7 --samples 500");
    EXPECT_EQ(r.code, 0);
    const auto j = json_lines(r.out).at(0);
    EXPECT_EQ(j["result"]["status"], "pass");
    EXPECT_EQ(j["result"]["moduli_checked"], "99");
    EXPECT_EQ(run("verify --max-n 2").code, 0);
    EXPECT_EQ(run("verify --max-n 3000").code, 5);
}

}  // namespace
