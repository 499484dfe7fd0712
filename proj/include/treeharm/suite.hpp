#pragma once

#include <string>
#include <vector>

#include "treeharm/io.hpp"

namespace treeharm {

/// One verified identity: the two computed sides, the residual, the pinned
/// tolerance, and a claim id resolved by the claims index in the README.
struct CheckResult {
    std::string name;    // unique row id, e.g. "round-trip.q2.R4"
    std::string claim;   // claims-index key, e.g. "fh.inversion"
    std::string digest;  // hash of the canonical input description
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    double wall_ms = 0.0;  // emitted in the CSV summary only
};

struct SuiteResult {
    std::vector<CheckResult> rows;
    bool all_pass = false;
    std::string jsonl;  // deterministic: identical config => identical bytes
    std::string csv;    // summary including wall times
};

/// Serialize rows as JSON lines (without wall times) / as the CSV summary.
std::string rows_to_jsonl(const std::vector<CheckResult>& rows);
std::string rows_to_csv(const std::vector<CheckResult>& rows);

/// Run every acceptance check at the configured M and seed. The (q, R)
/// matrix is fixed by the criteria (q in {2,3}, R up to min(4, cfg.R));
/// determinism is verified by running the whole set twice and comparing
/// serialized bytes.
SuiteResult run_suite(const RunConfig& cfg);

/// Criterion labels in suite order: rows are grouped by name prefix.
const std::vector<std::pair<std::string, std::string>>& criterion_groups();

}  // namespace treeharm
