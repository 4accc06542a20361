#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliffordt/config.hpp"
#include "cliffordt/det.hpp"
#include "cliffordt/oracle.hpp"
#include "cliffordt/prob.hpp"

using namespace cliffordt;
using json = nlohmann::json;

namespace
{

constexpr int kExitParse = 2;
constexpr int kExitCap = 3;

struct ParseFailure : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Common
{
    std::string config_path;
    std::uint64_t seed = 1;
    int threads = -1;
    double c1 = -1, c2 = -1, offset = NAN;
    bool omit_timing = false;
};

void add_common(CLI::App *app, Common &c)
{
    app->add_option("--config", c.config_path, "JSON config file (c1, c2, split_offset, threads)");
    app->add_option("--seed", c.seed, "seed for random targets");
    app->add_option("--threads", c.threads, "worker threads (overrides config and CLIFFORDT_THREADS)");
    app->add_option("--c1", c.c1, "initial covering radius exponent");
    app->add_option("--c2", c.c2, "covering radius growth exponent");
    app->add_option("--offset", c.offset, "divide-and-conquer split offset");
    app->add_flag("--omit-timing", c.omit_timing, "leave wall-clock fields out for byte-identical output");
}

Config resolve(const Common &c)
{
    Config cfg;
    try
    {
        cfg = load_config(c.config_path);
    }
    catch (const std::exception &e)
    {
        throw ParseFailure(e.what());
    }
    if (c.threads > 0)
        cfg.threads = (unsigned)c.threads;
    if (c.c1 >= 0)
        cfg.c1 = c.c1;
    if (c.c2 >= 0)
        cfg.c2 = c.c2;
    if (!std::isnan(c.offset))
        cfg.split_offset = c.offset;
    return cfg;
}

TargetUnitary target_of(const std::string &text, std::uint64_t seed, unsigned bits)
{
    if (text == "haar")
    {
        TargetUnitary t = haar_sample(seed);
        return {UnitVec4(t.v.coords(), bits), t.source};
    }
    try
    {
        TargetUnitary t = parse_target(text);
        return {UnitVec4(t.v.coords(), bits), t.source};
    }
    catch (const std::exception &e)
    {
        throw ParseFailure(std::string("bad target: ") + e.what());
    }
}

DetOptions det_options(const Config &cfg)
{
    DetOptions o;
    o.split.offset = cfg.split_offset;
    o.split.threads = cfg.threads;
    return o;
}

ProbOptions prob_options(const Config &cfg)
{
    ProbOptions o;
    o.c1 = cfg.c1;
    o.c2 = cfg.c2;
    o.split.offset = cfg.split_offset;
    o.split.threads = cfg.threads;
    return o;
}

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ---- synth ----

struct SynthArgs
{
    std::string mode, target;
    double eps = 0;
    bool plain = false;
    Common common;
};

int cmd_synth(const SynthArgs &a)
{
    if (!(a.eps > 0))
        throw ParseFailure("--eps must be positive");
    Config cfg = resolve(a.common);
    TargetUnitary tgt = target_of(a.target, a.common.seed, cfg.precision_bits);
    json out;
    out["mode"] = a.mode;
    out["target"] = tgt.source;
    out["eps"] = a.eps;
    auto t0 = std::chrono::steady_clock::now();
    if (a.mode == "det")
    {
        DetResult r = synth_deterministic(tgt.v, a.eps, det_options(cfg));
        double ms = elapsed_ms(t0);
        if (a.plain)
        {
            std::cout << r.word.to_string() << "\n";
            return 0;
        }
        out["t"] = r.tcount;
        out["word"] = r.word.to_string();
        out["distance"] = r.distance;
        out["candidates_visited"] = r.stats.lattice_points;
        if (!a.common.omit_timing)
            out["wall_time_ms"] = ms;
    }
    else
    {
        MixtureSolution r = synth_probabilistic(tgt.v, a.eps, prob_options(cfg));
        double ms = elapsed_ms(t0);
        if (a.plain)
        {
            for (std::size_t i = 0; i < r.support.size(); ++i)
                std::cout << fmt(r.probs[i]) << " " << r.support[i].to_string() << "\n";
            return 0;
        }
        out["t"] = r.t;
        out["eps_star"] = {r.eps_star.lo, r.eps_star.hi};
        json mix = json::array();
        json words = json::array(), probs = json::array();
        for (std::size_t i = 0; i < r.support.size(); ++i)
        {
            mix.push_back({{"word", r.support[i].to_string()}, {"p", r.probs[i]}});
            words.push_back(r.support[i].to_string());
            probs.push_back(r.probs[i]);
        }
        out["mixture"] = mix;
        out["words"] = words;
        out["probs"] = probs;
        out["distance"] = r.eps_star.hi;
        out["candidates_visited"] = r.candidates_visited;
        if (!a.common.omit_timing)
            out["wall_time_ms"] = ms;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- bench ----

struct BenchArgs
{
    std::string mode = "det", out;
    std::vector<double> eps;
    int trials = 10;
    Common common;
};

struct BenchRow
{
    std::uint64_t seed;
    double eps;
    unsigned t = 0;
    double ms = 0;
    std::uint64_t visited = 0;
    bool ok = true;
};

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_bench(const BenchArgs &a)
{
    if (a.eps.empty())
        throw ParseFailure("bench needs at least one --eps");
    Config cfg = resolve(a.common);
    // trials run in the pool; each synthesis is single-threaded
    const unsigned workers = std::max(1u, cfg.threads);
    Config inner = cfg;
    inner.threads = 1;

    std::vector<BenchRow> rows;
    for (int i = 0; i < a.trials; ++i)
        for (double e : a.eps)
            rows.push_back({a.common.seed + (std::uint64_t)i, e});

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;)
        {
            std::size_t k = next.fetch_add(1);
            if (k >= rows.size())
                return;
            BenchRow &r = rows[k];
            TargetUnitary tgt = target_of("haar", r.seed, cfg.precision_bits);
            auto t0 = std::chrono::steady_clock::now();
            try
            {
                if (a.mode == "det")
                {
                    auto res = synth_deterministic(tgt.v, r.eps, det_options(inner));
                    r.ms = elapsed_ms(t0);
                    r.t = res.tcount;
                    r.visited = res.stats.lattice_points;
                }
                else
                {
                    auto res = synth_probabilistic(tgt.v, r.eps, prob_options(inner));
                    r.ms = elapsed_ms(t0);
                    r.t = res.t;
                    r.visited = res.candidates_visited;
                }
            }
            catch (const TCountCapExceeded &)
            {
                r.ms = elapsed_ms(t0);
                r.ok = false;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto &p : pool)
        p.join();

    std::ostringstream csv;
    csv << "seed,eps,t,time_ms,candidates_visited,mode\n";
    for (const auto &r : rows)
        csv << r.seed << "," << fmt(r.eps) << "," << (r.ok ? std::to_string(r.t) : std::string("cap")) << ","
            << (a.common.omit_timing ? std::string("0") : fmt(r.ms)) << "," << r.visited << "," << a.mode << "\n";
    csv << "\neps,mode,t_min,t_median,t_max,time_median_ms\n";
    for (double e : a.eps)
    {
        std::vector<double> ts, ms;
        for (const auto &r : rows)
            if (r.eps == e && r.ok)
            {
                ts.push_back(r.t);
                ms.push_back(r.ms);
            }
        if (ts.empty())
            continue;
        csv << fmt(e) << "," << a.mode << "," << *std::min_element(ts.begin(), ts.end()) << "," << fmt(median(ts))
            << "," << *std::max_element(ts.begin(), ts.end()) << ","
            << (a.common.omit_timing ? std::string("0") : fmt(median(ms))) << "\n";
    }
    if (a.out.empty() || a.out == "-")
        std::cout << csv.str();
    else
    {
        std::ofstream f(a.out);
        if (!f)
            throw std::runtime_error("cannot write " + a.out);
        f << csv.str();
    }
    bool all_ok = std::all_of(rows.begin(), rows.end(), [](const BenchRow &r) { return r.ok; });
    return all_ok ? 0 : kExitCap;
}

// ---- oracle ----

struct OracleArgs
{
    std::string action, db_path;
    unsigned tmax = 10;
    int trials = 50;
    double eps = 0.25;
    Common common;
};

int cmd_oracle(const OracleArgs &a)
{
    Config cfg = resolve(a.common);
    if (a.action == "build")
    {
        if (a.db_path.empty())
            throw ParseFailure("oracle build needs --db");
        ChannelDatabase db = build_database(a.tmax, cfg.threads);
        db.save(a.db_path);
        std::cout << "entries " << db.entries.size() << "\n";
        auto counts = db.count_per_t();
        for (unsigned t = 0; t < counts.size(); ++t)
            std::cout << "t=" << t << " " << counts[t] << "\n";
        return 0;
    }
    ChannelDatabase db;
    if (a.db_path.empty())
        db = build_database(a.tmax, cfg.threads);
    else
    {
        try
        {
            db = ChannelDatabase::load(a.db_path);
        }
        catch (const std::exception &e)
        {
            std::cerr << "database rejected: " << e.what() << "\n";
            return 1;
        }
    }
    std::size_t bad = verify_database(db);
    std::cout << "database entries " << db.entries.size() << ", inconsistent " << bad << "\n";
    int agree = 0, skipped = 0;
    for (int i = 0; i < a.trials; ++i)
    {
        TargetUnitary tgt = target_of("haar", a.common.seed + (std::uint64_t)i, cfg.precision_bits);
        auto want = oracle_min_tcount(db, tgt.v, a.eps);
        if (!want)
        {
            ++skipped;
            continue;
        }
        auto got = synth_deterministic(tgt.v, a.eps, det_options(cfg));
        if (got.tcount == *want)
            ++agree;
        else
            std::cout << "mismatch seed=" << a.common.seed + i << " oracle=" << *want << " synth=" << got.tcount
                      << "\n";
    }
    int checked = a.trials - skipped;
    std::cout << "optimality agreements " << agree << "/" << checked;
    if (skipped)
        std::cout << " (" << skipped << " beyond database)";
    std::cout << "\n";
    return (bad == 0 && agree == checked) ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Clifford+T single-qubit synthesis with optimal T-count"};
    app.require_subcommand(1);

    SynthArgs sa;
    auto *synth = app.add_subcommand("synth", "approximate a target unitary");
    synth->add_option("mode", sa.mode, "det or prob")->required()->check(CLI::IsMember({"det", "prob"}));
    synth->add_option("--target", sa.target, "rz(θ), rx(θ), ry(θ), eight matrix numbers, or haar")->required();
    synth->add_option("--eps", sa.eps, "diamond-distance bound")->required();
    synth->add_flag("--plain", sa.plain, "print the gate word(s) only");
    add_common(synth, sa.common);

    BenchArgs ba;
    auto *bench = app.add_subcommand("bench", "runtime and T-count over Haar-random targets");
    bench->add_option("--mode", ba.mode, "det or prob")->check(CLI::IsMember({"det", "prob"}));
    bench->add_option("--eps", ba.eps, "one or more eps values")->required();
    bench->add_option("--trials", ba.trials, "targets per eps");
    bench->add_option("--out", ba.out, "CSV path (default stdout)");
    add_common(bench, ba.common);

    OracleArgs oa;
    auto *oracle = app.add_subcommand("oracle", "brute-force channel database");
    oracle->add_option("action", oa.action, "build or check")->required()->check(CLI::IsMember({"build", "check"}));
    oracle->add_option("--db", oa.db_path, "database file");
    oracle->add_option("--tmax", oa.tmax, "largest T-count stored (≤ 14)");
    oracle->add_option("--trials", oa.trials, "random targets for the optimality check");
    oracle->add_option("--eps", oa.eps, "eps for the optimality check");
    add_common(oracle, oa.common);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitParse;
    }

    try
    {
        if (*synth)
            return cmd_synth(sa);
        if (*bench)
            return cmd_bench(ba);
        return cmd_oracle(oa);
    }
    catch (const ParseFailure &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    catch (const TCountCapExceeded &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
