#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace zsigff::api {

using json = nlohmann::json;

struct RunOptions {
  unsigned jobs = 1;
  std::function<void(const std::string&)> progress;
};

/// Kinds accepted by run(): curve, seq, zsigmondy, divisibility, growth,
/// heights, criterion_table, criterion_sum, demo_supersingular, factor,
/// valuation.
std::vector<std::string> kinds();

/// Runs one computation. The report has the shape
/// {"kind": ..., "input": ..., "result": ..., "passed": bool}; "passed" is
/// false when a built-in verification failed.
json run(const std::string& kind, const json& input, const RunOptions& opt = {});

/// Recomputes a report from its kind and input and compares the results.
/// Returns {"kind", "ok", "passed", "differences"}.
json verify(const json& report, const RunOptions& opt = {});

/// Admissibility in the reference table the computed table is checked against.
bool reference_admissible(long p, long r);

}  // namespace zsigff::api
