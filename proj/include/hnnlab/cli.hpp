#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hnnlab::cli {

/// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or input error.
struct RunReport {
    int exit_code = 0;
    nlohmann::json result;  // machine-readable result, also printed with --json
    std::string out;        // what goes to stdout
    std::string err;        // what goes to stderr
};

/// args excludes the program name.
RunReport run(const std::vector<std::string>& args);

}  // namespace hnnlab::cli
