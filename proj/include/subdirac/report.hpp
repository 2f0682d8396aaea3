#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "subdirac/dims.hpp"

namespace subdirac {

inline constexpr const char* tool_name = "subdirac";
inline constexpr const char* tool_version = "1.0.0";

// one verified identity (or recorded discrepancy) in a run report
struct CheckRecord {
    std::string id;        // stable dotted identifier, e.g. "potential.trace.sq"
    std::string paper_ref; // human-readable statement of the identity being checked
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;
    bool pass = false;
    std::string klass = "check"; // "check" (gates exit status) or "audit" (recorded only)
    std::string note;
};

// pass iff |lhs - rhs| <= tol
CheckRecord make_check(std::string id, std::string ref, double lhs, double rhs, double tol,
                       std::string note = "");

// pass iff the relative deviation (absolute below unit scale) is <= tol
CheckRecord make_check_rel(std::string id, std::string ref, double lhs, double rhs, double tol,
                           std::string note = "");

// recorded comparison that never gates the exit status
CheckRecord make_audit(std::string id, std::string ref, double lhs, double rhs,
                       std::string note = "");

// everything a command run reports; serialized deterministically for a fixed seed
struct Report {
    std::string command;
    Dims dims{1, 2};
    std::uint64_t seed = 0;
    long trials = 0;
    double tolerance = 0.0;
    std::vector<std::string> flags; // names of the boolean switches that were on
    double wall_time_s = 0.0;
    std::vector<CheckRecord> records;
    nlohmann::json values = nlohmann::json::object(); // command-specific numeric payload

    // true iff every record of class "check" passed
    bool all_passed() const;
};

// full report object: metadata, values, records sorted by id, summary counts
nlohmann::json report_to_json(const Report& r);

} // namespace subdirac
