#pragma once

#include "rht/dsl.hpp"

#include <json.hpp>

namespace rht {

using ojson = nlohmann::ordered_json;

ojson json_vec(const Vec& v);
ojson json_matrix(const Matrix& m);
ojson json_verdict(const Verdict& v);
ojson json_status(const SubgroupStatus& st);
ojson json_check(const DiagramCheck& c);

struct RunResult {
    int code = 0; // 0 computed, 2 rejected input, 3 internal failure
    ojson out;
};

// the whole command-line surface; args exclude the program name
RunResult run_command(const std::vector<std::string>& args);

} // namespace rht
