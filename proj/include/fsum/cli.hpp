#pragma once

/// Subcommand front door. Each theorem-level workflow maps to one
/// subcommand producing a deterministic JSON report; `verify` re-executes a
/// report from its recorded exact inputs and demands identical certificates.
///
/// Exit codes: 0 verified, 2 hypothesis-not-met, 3 budget-exceeded,
/// 4 verification-failed, 64 usage/parse error.

#include "fsum/json.hpp"

#include <string>
#include <vector>

namespace fsum {

inline constexpr int kExitVerified = 0;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitVerificationFailed = 4;
inline constexpr int kExitUsage = 64;

struct RunReport {
    std::string subcommand;
    Json inputs = Json::object();
    Json certificates = Json::array();
    Json sweep; // null unless the subcommand produces a depth sweep
    std::string status = "verified";
    std::string message;
    int exit_code = kExitVerified;
    double timing_ms = 0.0;

    std::string out_path; // side-effect targets, not part of the report body
    std::string csv_path;

    Json to_json(bool include_timing = true) const;
};

/// Re-runs a subcommand from recorded inputs; used by `verify` and tests.
/// Throws the library's error types on failure.
struct ExecOutcome {
    Json certificates = Json::array();
    Json sweep;
    std::string status_override; // empty unless the executor decides status
};
ExecOutcome exec_subcommand(const std::string& name, const Json& inputs);

/// Full CLI pass: parse args (without the program name), execute, classify
/// errors into exit codes. Never throws.
RunReport run_cli(const std::vector<std::string>& args);

/// Runs, prints the human summary, writes --out / --csv files.
int cli_main(int argc, char** argv);

/// CSV sweep rendering (boxdim: n,count,estimate; moran: k,m_k,N_k,s_k).
std::string sweep_to_csv(const Json& sweep);

} // namespace fsum
