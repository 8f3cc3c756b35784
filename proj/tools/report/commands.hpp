#pragma once

#include <string>

#include "nij/jordan.hpp"
#include "report/wire.hpp"

namespace nij::report {

/// Commands taking a document: analyze-11, analyze-form, analyze-sym02,
/// analyze-sym20, analyze-bivector, lie-check and construct. Throws
/// InputError when the document kind does not fit the command.
Json run_command(const std::string& command, const AnalysisSpec& spec);

/// Certifies control by N for one Jordan type.
Json verify_controlled(const JordanProfile& profile, int n_cap);

/// Fixed-width verdict table for --pretty.
std::string pretty_table(const Json& report);

/// Error object written in place of a report.
Json error_json(const std::exception& e);

/// 2 for input errors, 3 for unsupported requests, 1 otherwise.
int exit_code(const std::exception& e);

}  // namespace nij::report
