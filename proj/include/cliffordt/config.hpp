#pragma once

#include <string>

namespace cliffordt
{

struct Config
{
    double c1 = 0.1;
    double c2 = 0.5;
    double split_offset = 0;
    unsigned threads = 1;
    unsigned precision_bits = 256;
};

// Defaults, then the optional JSON file, then CLIFFORDT_THREADS. Unknown keys are
// rejected so typos do not go unnoticed.
Config load_config(const std::string &path = "");

} // namespace cliffordt
