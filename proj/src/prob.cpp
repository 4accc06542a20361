#include "cliffordt/prob.hpp"

#include <algorithm>
#include <cmath>

#include "cliffordt/det.hpp"

namespace cliffordt
{

namespace
{

constexpr double kMixingTol = 1e-10;

std::vector<ExactUnitary> ball_upto(const UnitVec4 &v, double radius, unsigned t, const SplitOptions &split,
                                    EnumStats &stats)
{
    std::vector<ExactUnitary> out;
    for (unsigned s = 0; s <= t; ++s)
    {
        auto part = divide_and_conquer_enum(v, radius, s, split);
        out.insert(out.end(), part.entries.begin(), part.entries.end());
        stats += part.stats;
    }
    std::sort(out.begin(), out.end());
    return out;
}

MixtureSolution pruned(const UnitVec4 &v, const MixtureSolution &ms, double threshold)
{
    MixtureSolution out;
    out.converged = ms.converged;
    double sum = 0;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < ms.probs.size(); ++i)
        if (ms.probs[i] > threshold)
        {
            keep.push_back(i);
            sum += ms.probs[i];
        }
    // stable order: T-count, then word text
    std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
        auto ta = ms.support[a].tcount(), tb = ms.support[b].tcount();
        if (ta != tb)
            return ta < tb;
        return ms.support[a].to_string() < ms.support[b].to_string();
    });
    for (std::size_t i : keep)
    {
        out.support.push_back(ms.support[i]);
        out.unitaries.push_back(ms.unitaries[i]);
        out.probs.push_back(ms.probs[i] / sum);
        out.t = std::max(out.t, ms.support[i].tcount());
    }
    out.eps_star = mixture_distance(v, out.unitaries, out.probs);
    return out;
}

} // namespace

unsigned prob_tcount_cap(double eps, unsigned margin)
{
    return (unsigned)std::ceil(1.5 * std::log2(1 / eps)) + margin;
}

std::vector<ExactUnitary> all_channels_upto(unsigned t)
{
    std::vector<ExactUnitary> out;
    const auto &cl = clifford_table();
    for (unsigned s = 0; s <= t; ++s)
        for (const auto &w : coset_words(s))
        {
            ExactUnitary p = evaluate(w);
            for (const auto &c : cl)
                out.push_back(p * c);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CandidateSet candidate_set(const UnitVec4 &v, unsigned t, const ProbOptions &opts)
{
    if (!(opts.c1 > 0) || !(opts.c2 > 0))
        throw std::invalid_argument("candidate_set: c1 and c2 must be positive");
    auto check = opts.covering_check ? opts.covering_check : &verify_covering;
    CandidateSet cs;
    cs.delta = std::exp2(-(double)t / 3 + opts.c1);
    for (;;)
    {
        if (2 * cs.delta > 1)
        {
            cs.entries = all_channels_upto(t);
            cs.full_set = true;
            return cs;
        }
        cs.entries = ball_upto(v, 2 * cs.delta, t, opts.split, cs.stats);
        CoveringInstance inst{v, {}, cs.delta};
        for (const auto &u : cs.entries)
            inst.points.emplace_back(su2_column(u));
        if (!cs.entries.empty() && check(inst))
            return cs;
        cs.delta *= std::exp2(opts.c2);
        ++cs.retries;
    }
}

MixtureSolution synth_probabilistic(const UnitVec4 &v, double eps, const ProbOptions &opts)
{
    if (!(eps > 0))
        throw std::invalid_argument("synth_probabilistic: eps must be positive");
    if (eps > 1)
    {
        MixtureSolution id;
        id.unitaries = {ExactUnitary()};
        id.support = {GateWord{}};
        id.probs = {1.0};
        id.eps_star = mixture_distance(v, id.unitaries, id.probs);
        return id;
    }
    const unsigned cap = prob_tcount_cap(eps, opts.cap_margin);
    const double root = std::sqrt(eps);
    bool reachable = false;
    std::uint64_t visited = 0;
    for (unsigned t = 0; t <= cap; ++t)
    {
        // any mixture is at least (min singleton distance)² away
        if (!reachable)
        {
            auto near = divide_and_conquer_enum(v, root, t, opts.split);
            visited += near.stats.lattice_points;
            reachable = !near.entries.empty();
            if (!reachable)
                continue;
        }
        CandidateSet cs = candidate_set(v, t, opts);
        visited += cs.stats.lattice_points;
        double tol = kMixingTol;
        for (int attempt = 0; attempt < 3; ++attempt, tol /= 100)
        {
            MixtureSolution ms = solve_mixing(v, cs.entries, tol);
            if (ms.eps_star.lo >= eps)
                break;
            if (ms.eps_star.hi >= eps)
                continue; // undecided at this tolerance
            // sparsest pruning that still certifies
            for (double thr : {1e-4, 1e-8, opts.prune})
            {
                MixtureSolution out = pruned(v, ms, std::max(thr, opts.prune));
                out.candidates_visited = visited;
                if (out.eps_star.hi < eps)
                    return out;
            }
        }
    }
    throw TCountCapExceeded("probabilistic synthesis passed T-count cap " + std::to_string(cap));
}

} // namespace cliffordt
