#pragma once

// Config-driven execution of scenarios.
//
// Config file (JSON):
//   {
//     "scenario": {"kind": "paper_example", "m": 8, "partition_measures": [...], "atoms_per_cell": 1}
//               | {"kind": "continuous_fourier", "n": 4, "n_atoms": 64}
//               | {"kind": "random", "n": 4, "n_atoms": 6, "fiber_dims": [...], "weights": [...], "seed": 7}
//               | {"kind": "explicit", "family": <family literal>},
//     "K": <matrix literal>,                     optional; paper_example supplies its own, others default to I
//     "requests": [{"op": "bounds"}, {"op": "verify", "claimed": [1, 4]}, {"op": "dual"},
//                  {"op": "theta", "vectors": 16}, {"op": "perturb", "delta": 0.1},
//                  {"op": "perturb", "params": [l1, l2, g], "family": <family literal>},
//                  {"op": "refine", "n_atoms": [9, 18]} | {"op": "refine", "factors": [2, 3]}],
//     "tolerance": {"rel_rank_cutoff": .., "psd_slack": .., "residual_tol": ..},
//     "seed": 0, "samples": 256
//   }

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ckg/literal.hpp"
#include "ckg/scenarios.hpp"

namespace ckg {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum class ScenarioKind { paper_example, continuous_fourier, random, explicit_family };

struct Request {
    std::string op;  // bounds | verify | dual | theta | perturb | refine
    Json params;     // the request object as given
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::paper_example;
    std::size_t m = 8;
    std::vector<double> partition_measures;
    std::size_t atoms_per_cell = 1;
    std::size_t n = 4;
    std::size_t n_atoms = 6;
    std::vector<std::size_t> fiber_dims;
    std::vector<double> weights;
    std::uint64_t scenario_seed = 0;
    std::optional<Json> family;
    std::optional<ComplexMatrix> k;
    std::vector<Request> requests;
    TolerancePolicy tol;
    std::uint64_t seed = 0;
    std::size_t samples = 256;
    Json source;  // config as parsed, echoed into the report
};

// Throws ParseError / InvalidConfig.
ScenarioConfig parse_config(const Json& j);
ScenarioConfig load_config(const std::filesystem::path& path);

// Builds the scenario's family and K. Throws InvalidConfig.
Scenario build_scenario(const ScenarioConfig& cfg);

struct RunReport {
    Json document;    // full report, including "wall_clock_seconds"
    std::string csv;  // curves from refine requests; empty if none
    bool all_passed = false;

    // 0 when every request succeeded and verified, 1 otherwise.
    int exit_code() const noexcept { return all_passed ? 0 : 1; }
};

// Executes every request; module errors are recorded per request.
RunReport run(const ScenarioConfig& cfg);

// load_config + run, then writes the report (and CSV when requested).
RunReport run_config(const std::filesystem::path& config_path, const std::filesystem::path& report_path,
                     const std::optional<std::filesystem::path>& csv_path = std::nullopt);

std::string dump_report(const Json& report);

}  // namespace ckg
