#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aca/pipeline.hpp"

#include "json.hpp"

namespace aca {

inline constexpr const char* kToolVersion = "0.1.0";

// Full default config: every runner key with its default value. User configs
// may override any subset; unknown keys are rejected.
nlohmann::json default_config();

// Recursively checks `user` against the default schema (unknown keys and type
// clashes are errors) and returns defaults deep-merged with user values.
nlohmann::json merge_config(const nlohmann::json& user);

nlohmann::json load_config_file(const std::filesystem::path& path);

struct RunnerOptions {
    nlohmann::json config;  // merged config (see merge_config)
    std::filesystem::path out_dir = "results";

    std::uint64_t seed() const { return config.at("seed").get<std::uint64_t>(); }
    int threads() const { return config.at("threads").get<int>(); }
};

struct RunnerResult {
    std::string name;
    bool ok = false;  // all hard invariants held
    nlohmann::json summary;
};

WorldEnv make_world(const nlohmann::json& world_cfg, std::uint64_t field_seed);

// Noise calibration for trap-style experiments: equalize the two bound terms
// at the calibration K, with the coverage term MEASURED (zero-noise sup error
// of reference fits) rather than taken from the conservative certified
// product L*c. Reports the backed-out effective constants alongside sigma.
struct Calibration {
    double sigma = 0.0;         // coverage_ref * sqrt(N / K_cal)
    double coverage_ref = 0.0;  // mean zero-noise sup error at K_cal
    double l_effective = 0.0;   // coverage_ref / (c_ref * K_cal^(-1/d))
    double c_ref = 0.0;         // measured fill constant of the reference layout
};
Calibration calibrate_sigma(const nlohmann::json& world_cfg, int n_budget, int calibration_k,
                            std::uint64_t seed);

RunnerResult run_sweep_k(const RunnerOptions& opts);
RunnerResult run_scaling_law(const RunnerOptions& opts);
RunnerResult run_concentration(const RunnerOptions& opts);
RunnerResult run_heavy_tail(const RunnerOptions& opts);
RunnerResult run_discontinuity(const RunnerOptions& opts);
RunnerResult run_layouts(const RunnerOptions& opts);
RunnerResult run_aca_compare(const RunnerOptions& opts);
RunnerResult run_allocate(const RunnerOptions& opts);
RunnerResult run_gronwall_audit(const RunnerOptions& opts);

using RunnerFn = RunnerResult (*)(const RunnerOptions&);

struct RunnerEntry {
    const char* name;
    RunnerFn fn;
};

// All CLI runners by subcommand name.
const std::vector<RunnerEntry>& runner_table();

}  // namespace aca
