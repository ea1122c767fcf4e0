#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Command-line front end. run_cli is the whole program behind a callable
// interface so the argument handling, output formats, and determinism can
// be exercised in-process by tests.
//
// Exit codes: 0 success, 1 invalid configuration, 2 computation failure
// (or a failed `verify` check). Failures emit a machine-readable JSON
// error record on stderr.

namespace anyon {

// "start:stop:count" with inclusive endpoints, or a comma-separated list.
std::vector<double> parse_double_grid(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<std::int64_t> parse_int64_list(const std::string& text);

int run_cli(const std::vector<std::string>& args);

}  // namespace anyon
