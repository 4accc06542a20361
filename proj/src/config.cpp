#include "cliffordt/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace cliffordt
{

Config load_config(const std::string &path)
{
    Config c;
    if (!path.empty())
    {
        std::ifstream f(path);
        if (!f)
            throw std::runtime_error("cannot read config " + path);
        nlohmann::json j = nlohmann::json::parse(f);
        for (auto it = j.begin(); it != j.end(); ++it)
        {
            const std::string &k = it.key();
            if (k == "c1")
                c.c1 = it->get<double>();
            else if (k == "c2")
                c.c2 = it->get<double>();
            else if (k == "split_offset")
                c.split_offset = it->get<double>();
            else if (k == "threads")
                c.threads = it->get<unsigned>();
            else if (k == "precision_bits")
                c.precision_bits = it->get<unsigned>();
            else
                throw std::runtime_error("unknown config key: " + k);
        }
    }
    if (const char *env = std::getenv("CLIFFORDT_THREADS"))
    {
        int n = std::atoi(env);
        if (n > 0)
            c.threads = (unsigned)n;
    }
    if (!(c.c1 > 0) || !(c.c2 > 0))
        throw std::runtime_error("config: c1 and c2 must be positive");
    // the parser works in ~330-bit floats; below 64 bits the exact checks lose meaning
    if (c.precision_bits < 64 || c.precision_bits > 320)
        throw std::runtime_error("config: precision_bits must lie in [64, 320]");
    return c;
}

} // namespace cliffordt
