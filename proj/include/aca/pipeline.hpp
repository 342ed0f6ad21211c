#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aca/allocation.hpp"
#include "aca/condition_space.hpp"
#include "aca/estimation.hpp"
#include "aca/mining.hpp"
#include "aca/rollout.hpp"
#include "aca/synthetic_field.hpp"

namespace aca {

// Trajectory budget ledger: N = N_A + N_probe + N_bd, enforced exactly.
struct BudgetPlan {
    int n_total = 0;
    int n_anchor = 0;
    int n_probe = 0;
    int n_boundary = 0;
    int anchor_count = 0;
    int mining_k = 0;
    double expansion_radius = 0.1;

    // The reference split: 80% anchoring, the remainder divided between
    // probing and expansion; k grows stepwise with the budget.
    static BudgetPlan standard(int n_total, int anchor_count);
    void validate() const;
};

// Compact-support additive correction: bump kernels (1 - u^2)^2 centered at
// the mined boundary points. Predictions farther than every radius are left
// untouched, byte for byte, which is what "frozen base" means here.
struct ResidualLayer final : ResidualCorrection {
    std::vector<Vec> centers;
    std::vector<Vec> deltas;
    std::vector<double> radii;

    void add_to(const Vec& p, double* out) const override;
    bool supports(const Vec& p) const override;
};

// Infinite-support variant used by the residual-off ablation arm: the same
// boundary corrections extrapolated over the whole domain through normalized
// Gaussian weights, the drift-prone analog of full-parameter fine-tuning.
struct GlobalCorrection final : ResidualCorrection {
    std::vector<Vec> centers;
    std::vector<Vec> deltas;
    double bandwidth = 0.1;

    void add_to(const Vec& p, double* out) const override;
    bool supports(const Vec& p) const override { return !centers.empty(); }
};

struct WorldEnv {
    SyntheticField field;
    ConditionSpace space;
    NoiseModel noise;
};

SurrogatePolicy run_stage1(const WorldEnv& env, const BudgetPlan& plan, LayoutTag layout,
                           std::uint64_t seed);

struct MiningResult {
    DeviationReport report;
    std::vector<ProbeDemo> probes;  // one per candidate, candidate order
    int consumed = 0;               // trajectories spent (= N_probe)
    double probe_horizon = 0.0;
    int probe_steps = 0;
};

// Scores N_probe low-discrepancy candidates (disjoint from the anchors) and
// selects the top k; set top_k_selection = false for the random-acquisition
// ablation arm.
MiningResult run_mining(const SurrogatePolicy& base, const WorldEnv& env, const BudgetPlan& plan,
                        std::uint64_t seed, bool top_k_selection = true);

// Fits boundary corrections from the reused selected probes plus N_bd fresh
// local-expansion observations; compact_support = false yields the global
// (drift-prone) ablation arm. The base policy is not modified.
SurrogatePolicy run_stage2(const SurrogatePolicy& base, const MiningResult& mined,
                           const WorldEnv& env, const BudgetPlan& plan, std::uint64_t seed,
                           bool compact_support = true);

enum class Strategy { fully_diverse, anchors_only, aca };
Strategy strategy_from_string(const std::string& name);
std::string to_string(Strategy s);

struct StrategyConfig {
    LayoutTag layout = LayoutTag::low_discrepancy;
    int anchor_count = 6;
    double expansion_radius_frac = 0.1;  // of the domain width
    EstimatorTag estimator = EstimatorTag::sample_mean;
    AssignmentRule rule = AssignmentRule::nearest;
    SuccessConfig success;
    bool mining_on = true;
    bool residual_on = true;
    bool evaluate_success = true;
};

struct StrategyReport {
    Strategy strategy = Strategy::fully_diverse;
    std::uint64_t seed = 0;
    int n_total = 0;
    int anchor_count = 0;
    int consumed = 0;  // must equal n_total; enforced
    double sup_error = 0.0;
    double stage1_sup_error = 0.0;  // aca only: base policy before stage 2
    double max_anchor_err = 0.0;
    double fill_dist = 0.0;
    double measured_c = 0.0;
    double bound_value = 0.0;  // max_anchor_err + L * fill_dist
    RegionRates regions;
    BudgetPlan plan;
};

// Spends exactly N trajectories under the given strategy and reports the
// policy together with the bound-side quantities of the same world.
std::pair<SurrogatePolicy, StrategyReport> run_strategy(const WorldEnv& env, Strategy strategy,
                                                        int n_total, const StrategyConfig& cfg,
                                                        std::uint64_t seed);

nlohmann::json strategy_report_to_json(const StrategyReport& report);

}  // namespace aca
