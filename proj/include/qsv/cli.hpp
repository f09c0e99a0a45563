#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qsv/catalog.hpp"

namespace qsv {

inline constexpr const char* kVersion = "1.0.0";

/// Everything a verify/replay/recursion run reports.
struct RunManifest {
    std::string version = kVersion;
    std::size_t order = 0;
    std::vector<VerifyReport> checks;
    bool pass = true;

    bool operator==(const RunManifest&) const = default;
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

/// Runs the command line; returns the process exit status (0 pass, 1 mismatch, 2 usage error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsv
