#pragma once

#include "degenkit/io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace degenkit {

struct RunConfig {
    std::string verb;
    std::string input;  // path or inline JSON
    long window = 3;
    Rational cutoff = 40;
    std::size_t rank_cap = 6;
    std::string output;  // empty = stdout
};

/// Exit codes.
enum : int { kExitOk = 0, kExitDomain = 1, kExitUsage = 2 };

/// Full front end: parses argv, runs the verb, writes JSON to out (or --out) and errors to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// validation, extension, polytope, strata and counts; a failing stage ends the dossier.
Json report(const DegenerationDatum& d, const RunConfig& cfg);

/// Accepts a path or an inline JSON document (first non-space character '{' or '[').
Json load_input(const std::string& path_or_json);

}  // namespace degenkit
