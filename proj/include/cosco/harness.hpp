#pragma once
// Run configuration, (N x seed) sweeps with parallel replication, and CSV
// report emission.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosco/core.hpp"

namespace cosco {

struct RunConfig {
    std::string algorithm;  // "ec" or "cc"
    std::string problem;    // kkt-ec | kkt-cc | cvar | mean-dev | moment
    std::vector<std::size_t> n_values;
    std::vector<std::uint64_t> seeds;
    std::string x0_spec = "center";  // "zeros", "center", or comma-separated vector
    std::optional<Vec> lambda0;      // default: zeros
    std::string out_path;
    bool checkpoints = false;

    // problem parameters
    std::optional<std::string> scenario_file;
    double alpha = 0.9;       // cvar
    double gamma = 0.0;       // cvar
    Vec gammas = {0.0};       // mean-dev
    double mu = 1e-3;         // mean-dev smoothing
    int p = 4;                // moment order
    Vec c_p = {0.015};        // moment bounds
};

// Parse a flat dotted-key document ("key = value", '#' comments). Unknown
// keys, missing required keys, and type or constraint violations are
// reported by key name.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// One record per (N, seed) pair. Each run's oracle stream is keyed by a
// deterministic hash of (master seed, N, seed), so results do not depend on
// execution order or worker count.
std::vector<RunRecord> run_sweep(const RunConfig& config, std::uint64_t master_seed,
                                 std::size_t workers = 1);

// Writes the raw CSV to path and a per-N aggregate CSV alongside it
// (path with an "_agg.csv" suffix); returns a human-readable summary
// including the fitted log-log slopes.
std::string emit_report(const std::vector<RunRecord>& records, const std::string& path);

// Raw CSV serialization (17 significant digits) and its inverse.
std::string records_to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_records_csv(const std::string& text);

}  // namespace cosco
