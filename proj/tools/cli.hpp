#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace hyperis::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kBudgetRefused = 3, kGenerationFailed = 4 };

struct RunReport {
  std::string command;
  std::string input_digest;  // empty when the command reads no hypergraph
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  // Exact values are strings ("p/q"); log-domain values carry 12 digits.
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, double>> timings_ms;
};

// key=value lines (nested values flattened with dots) or one JSON object.
std::string render(const RunReport& report, bool json, bool timings);

struct Outcome {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

// Parses argv (without the program name), runs the command and renders it.
// Never throws; errors map to exit codes.
Outcome run(const std::vector<std::string>& args);

}  // namespace hyperis::cli
