#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aca/condition_space.hpp"
#include "aca/linalg.hpp"
#include "aca/synthetic_field.hpp"

namespace aca {

enum class EstimatorTag { sample_mean, median_of_means };
enum class AssignmentRule { nearest, kernel };

std::string to_string(EstimatorTag tag);
std::string to_string(AssignmentRule rule);
EstimatorTag estimator_from_string(const std::string& name);
AssignmentRule rule_from_string(const std::string& name);

struct AnchorEstimate {
    int anchor_index = 0;
    Vec estimate;  // g-hat at the anchor, R^m
    int repeats = 0;
    EstimatorTag estimator = EstimatorTag::sample_mean;
};

// Coordinate-wise arithmetic mean.
Vec anchor_mean(const std::vector<Vec>& observations);

// Coordinate-wise median of block means; blocks are consecutive and as equal
// as possible (leading blocks absorb the remainder).
Vec median_of_means(const std::vector<Vec>& observations, int num_blocks);

// sigma * sqrt(2 m log(2 m K / delta) / n): simultaneous sub-Gaussian radius
// for all K anchors at confidence 1 - delta.
double concentration_radius(double sigma, int n, int m, int k, double delta);

// Additive p-dependent correction applied on top of a fitted policy. The
// compact-support contract matters: outside its support the correction must
// leave the prediction buffer untouched so frozen-base comparisons stay
// bit-exact.
struct ResidualCorrection {
    virtual ~ResidualCorrection() = default;
    virtual void add_to(const Vec& p, double* out) const = 0;
    virtual bool supports(const Vec& p) const = 0;
};

struct SurrogatePolicy {
    AnchorSet anchors;
    std::vector<AnchorEstimate> estimates;
    AssignmentRule rule = AssignmentRule::nearest;
    double kernel_bandwidth = 0.0;
    Mat state_coupling;  // known structure, shared with the environment
    Vec drift;
    double l_hat = 0.0;  // measured predictor constant (kernel rule only)
    std::shared_ptr<const ResidualCorrection> residual;

    int dim() const { return anchors.empty() ? 0 : static_cast<int>(anchors.points.front().size()); }
    int out_dim() const { return static_cast<int>(drift.size()); }

    // The p-dependent part of the prediction (anchor estimates + residual).
    Vec condition_estimate(const Vec& p) const;
    void condition_estimate_into(const Vec& p, double* out) const;

    Vec predict(const Vec& z, const Vec& p, double t) const;
    void predict_into(const double* z, const Vec& p, double t, double* out) const;
};

// Draws repeats[i] observations of g(p_i) at the canonical query (z=0, t=0),
// fits one estimate per anchor, and for the kernel rule measures the
// predictor's empirical Lipschitz constant on the dense grid. The declared
// stage budget must match sum(repeats) exactly.
SurrogatePolicy fit_surrogate(const SyntheticField& field, const ConditionSpace& space,
                              const AnchorSet& anchors, const std::vector<int>& repeats,
                              int stage_budget, const NoiseModel& noise, EstimatorTag estimator,
                              AssignmentRule rule, std::uint64_t seed);

// Max finite-difference ratio of the p-part over grid edges, scaled by
// sqrt(d) to convert axis-aligned slopes into a directional constant.
double measure_predictor_lipschitz(const SurrogatePolicy& policy, const ConditionSpace& space);

struct SupError {
    double value = 0.0;
    Vec argmax;
};

// Sup over the dense grid of ||predict(0, p, 0) - f(0, p, 0)||; under the
// additive-separable family this equals the sup over all (z, t).
SupError field_error_sup(const SurrogatePolicy& policy, const SyntheticField& field,
                         const ConditionSpace& space);

// Max over anchors of ||predict(0, p_i, 0) - f(0, p_i, 0)||. For the nearest
// rule this is the per-anchor estimate error; for the kernel rule it is the
// smoothed predictor's error at the anchors, which is what the coverage
// decomposition consumes.
double max_anchor_error(const SurrogatePolicy& policy, const SyntheticField& field);

nlohmann::json policy_to_json(const SurrogatePolicy& policy);

}  // namespace aca
