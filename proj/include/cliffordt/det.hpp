#pragma once

#include <stdexcept>
#include <string>

#include "cliffordt/grid.hpp"

namespace cliffordt
{

// Raised when the T-count search passes its cap without finding a solution.
class TCountCapExceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct DetOptions
{
    SplitOptions split;
    // t_max = ⌈3·log2(1/ε)⌉ + cap_margin
    unsigned cap_margin = 40;
};

struct DetResult
{
    GateWord word;
    ExactUnitary unitary;
    unsigned tcount = 0;
    double distance = 0;
    EnumStats stats;
};

unsigned det_tcount_cap(double eps, unsigned margin = 40);

// Minimum-T-count approximation; ties broken by the smallest word string.
DetResult synth_deterministic(const UnitVec4 &v, double eps, const DetOptions &opts = {});

} // namespace cliffordt
