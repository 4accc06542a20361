#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>


using nlohmann::json;

namespace
{

struct Run
{
    int code = -1;
    std::string out;
};

Run run(const std::string &args)
{
    std::string cmd = std::string(CLIFFORDT_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_path(const std::string &name)
{
    return (std::filesystem::temp_directory_path() / ("cliffordt_cli_" + name)).string();
}

std::string slurp(const std::string &path)
{
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST(Cli, SynthDeterministic)
{
    auto r = run("synth det --target 'rz(0.5)' --eps 1e-6");
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["mode"], "det");
    EXPECT_LT(j["distance"].get<double>(), 1e-6);
    EXPECT_GT(j["t"].get<int>(), 0);
    EXPECT_TRUE(j.contains("wall_time_ms"));
    EXPECT_TRUE(j.contains("candidates_visited"));
}

TEST(Cli, ExactTarget)
{
    auto r = run("synth det --target 'rz(pi/4)' --eps 1e-12");
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["word"], "T");
    EXPECT_EQ(j["t"], 1);
    auto plain = run("synth det --target 'rz(pi/4)' --eps 1e-12 --plain");
    EXPECT_EQ(plain.out, "T\n");
}

TEST(Cli, SynthProbabilistic)
{
    auto r = run("synth prob --target haar --seed 5 --eps 1e-8");
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["mode"], "prob");
    auto eps_star = j["eps_star"];
    EXPECT_LE(eps_star[0].get<double>(), eps_star[1].get<double>());
    EXPECT_LT(eps_star[1].get<double>(), 1e-8);
    double sum = 0;
    for (auto &m : j["mixture"])
        sum += m["p"].get<double>();
    EXPECT_NEAR(sum, 1, 1e-12);
    EXPECT_EQ(j["words"].size(), j["probs"].size());
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("synth det --target 'rz(0.5)'").code, 2);
    EXPECT_EQ(run("synth det --target 'rz(0.5' --eps 1e-3").code, 2);
    EXPECT_EQ(run("synth det --target '1 0 0 0 0 0 3 0' --eps 1e-3").code, 2);
    EXPECT_EQ(run("synth det --target 'rz(0.5)' --eps -1").code, 2);
    EXPECT_EQ(run("synth maybe --target 'rz(0.5)' --eps 1e-3").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("synth det --target 'rz(0.5)' --eps 1e-3 --config /nonexistent.json").code, 2);
    std::string cfg = temp_path("bad.json");
    std::ofstream(cfg) << R"({"c1": 0.1, "typo": 3})";
    EXPECT_EQ(run("synth det --target 'rz(0.5)' --eps 1e-3 --config " + cfg).code, 2);
    std::ofstream(cfg) << R"({"precision_bits": 32})";
    EXPECT_EQ(run("synth det --target 'rz(0.5)' --eps 1e-3 --config " + cfg).code, 2);
    std::remove(cfg.c_str());
}

TEST(Cli, PrecisionBits)
{
    std::string cfg = temp_path("bits.json");
    std::ofstream(cfg) << R"({"precision_bits": 96})";
    auto r = run("synth det --target 'rz(0.5)' --eps 1e-6 --config " + cfg);
    std::remove(cfg.c_str());
    ASSERT_EQ(r.code, 0);
    EXPECT_LT(json::parse(r.out)["distance"].get<double>(), 1e-6);
}

TEST(Cli, DeterministicOutputWithoutTiming)
{
    auto a = run("synth det --target haar --seed 9 --eps 1e-5 --omit-timing");
    auto b = run("synth det --target haar --seed 9 --eps 1e-5 --omit-timing --threads 2");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(json::parse(a.out).contains("wall_time_ms"));
    auto p = run("synth prob --target haar --seed 9 --eps 1e-4 --omit-timing");
    auto q = run("synth prob --target haar --seed 9 --eps 1e-4 --omit-timing");
    ASSERT_EQ(p.code, 0);
    EXPECT_EQ(p.out, q.out);
}

TEST(Cli, BenchCsv)
{
    std::string out = temp_path("bench.csv");
    auto r = run("bench --mode det --eps 1e-3 1e-4 --trials 3 --threads 2 --out " + out);
    ASSERT_EQ(r.code, 0);
    std::istringstream in(slurp(out));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "seed,eps,t,time_ms,candidates_visited,mode");
    int rows = 0;
    while (std::getline(in, line) && !line.empty())
    {
        ++rows;
        EXPECT_NE(line.find(",det"), std::string::npos);
    }
    EXPECT_EQ(rows, 6);
    std::getline(in, line);
    EXPECT_EQ(line, "eps,mode,t_min,t_median,t_max,time_median_ms");
    std::remove(out.c_str());

    auto a = run("bench --mode det --eps 1e-3 --trials 4 --omit-timing");
    auto b = run("bench --mode det --eps 1e-3 --trials 4 --omit-timing --threads 3");
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OracleBuildAndCheck)
{
    std::string db = temp_path("oracle.db");
    auto b = run("oracle build --tmax 10 --db " + db);
    ASSERT_EQ(b.code, 0);
    auto size = std::filesystem::file_size(db);
    // 24·(1 + 3·(2¹⁰ − 1)) entries
    const std::uint64_t entries = 24ull * (1 + 3 * 1023);
    EXPECT_EQ(entries, 73680u);
    auto c = run("oracle check --db " + db + " --trials 50 --eps 0.25");
    ASSERT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("database entries 73680"), std::string::npos);
    EXPECT_NE(c.out.find("optimality agreements 50/50"), std::string::npos);

    std::filesystem::resize_file(db, size / 2);
    EXPECT_EQ(run("oracle check --db " + db + " --trials 2 --eps 0.25").code, 1);
    std::remove(db.c_str());
}
