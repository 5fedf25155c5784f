#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "phonosurp/config.hpp"
#include "phonosurp/ingest.hpp"

namespace phonosurp {

// Reads every dataset named by the config (concurrently, one task per file)
// and joins them. Parser warnings are appended to `warnings`.
JoinResult ingest_datasets(const RunConfig& config, Warnings* warnings = nullptr);

PhonemeInventory inventory_for(const RunConfig& config);

void write_join_report(std::ostream& out, const JoinReport& report);

// Entry point behind the `phonosurp` executable. `args` excludes the program
// name. Returns 0 on success, 1 when expectations fail, 2 on usage, config or
// data errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace phonosurp
