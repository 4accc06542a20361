#include "cliffordt/det.hpp"

#include <cmath>
#include <optional>

namespace cliffordt
{

unsigned det_tcount_cap(double eps, unsigned margin)
{
    if (eps >= 1)
        return margin;
    return (unsigned)std::ceil(3 * std::log2(1 / eps)) + margin;
}

DetResult synth_deterministic(const UnitVec4 &v, double eps, const DetOptions &opts)
{
    if (!(eps > 0))
        throw std::domain_error("eps must be positive");
    DetResult res;
    if (eps > 1)
    {
        res.distance = std::abs(channel_distance(res.unitary, v).convert_to<double>());
        return res;
    }
    const unsigned cap = det_tcount_cap(eps, opts.cap_margin);
    for (unsigned t = 0; t <= cap; ++t)
    {
        CandidateList c = divide_and_conquer_enum(v, eps, t, opts.split);
        res.stats += c.stats;
        if (c.entries.empty())
            continue;
        std::optional<std::string> best;
        for (const auto &u : c.entries)
        {
            GateWord w = exact_synthesize(u);
            std::string s = w.to_string();
            if (!best || s < *best)
            {
                best = s;
                res.word = w;
                res.unitary = u;
            }
        }
        res.tcount = t;
        res.distance = std::abs(channel_distance(res.unitary, v).convert_to<double>());
        return res;
    }
    throw TCountCapExceeded("no solution up to T-count " + std::to_string(cap));
}

} // namespace cliffordt
