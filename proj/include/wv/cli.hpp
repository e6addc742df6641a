#pragma once

#include <cstdint>
#include <string>

#include "wv/rng.hpp"

namespace wv {

// Exit codes: 0 pass, 1 residual/verification failure, 2 usage or domain error.
struct RunConfig {
    std::string source;        // catalog entry name or metric file path
    bool lambda_set = false;
    double lambda = 0.0;       // entry default when not set
    long samples = 1000;
    double tol = 1e-7;
    std::uint64_t seed = kDefaultSeed;
    std::string format;        // "json" | "csv" | "text"; command default when empty
    std::string grid;          // classify: "v=-1:1:5,x=0.3:2:4"
};

struct CommandResult {
    int exit_code = 0;
    std::string output;
};

CommandResult cmd_check(const RunConfig& cfg);
CommandResult cmd_classify(const RunConfig& cfg);
CommandResult cmd_killing(const RunConfig& cfg);
CommandResult cmd_gauge_demo(const RunConfig& cfg);
CommandResult cmd_list(const RunConfig& cfg);
CommandResult cmd_export(const RunConfig& cfg);

} // namespace wv
