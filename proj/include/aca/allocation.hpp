#pragma once

#include <string>
#include <vector>

#include "aca/condition_space.hpp"

namespace aca {

enum class AllocationStrategy { uniform, fully_diverse, proportional, custom };

struct AllocationPlan {
    int anchor_count = 0;
    std::vector<int> repeats;
    AllocationStrategy strategy = AllocationStrategy::custom;

    int budget() const;
    void validate() const;  // every n_i >= 1, sum matches usage sites
};

struct BoundParams {
    double estimation_const = 1.0;  // C
    double sigma = 1.0;
    double lipschitz = 1.0;         // L
    double fill_constant = 1.0;     // c, quasi-uniformity constant
    int dim = 2;
    void validate() const;
};

// C sigma sqrt(K/N) + L c K^(-1/d). K may be fractional (continuous sweeps).
double error_bound(double k, double n, const BoundParams& params);

struct OptimalK {
    double continuous = 0.0;
    int rounded = 0;  // better of floor/ceil under error_bound, clamped to [1, N]
};

// Interior minimizer (2 L c sqrt(N) / (d C sigma))^(2d/(d+2)).
OptimalK optimal_k(double n, const BoundParams& params);

// error_bound evaluated at the continuous optimum (clamped to [1, N]).
double optimal_error(double n, const BoundParams& params);

struct ProportionalAllocation {
    std::vector<double> real_counts;  // N sigma_i^2 / sum sigma_j^2
    std::vector<int> counts;          // largest-remainder rounding, every count >= 1
    double worst_anchor_bound = 0.0;  // C sqrt(sum sigma_j^2 / N)
    bool uniform_fallback = false;    // all sigmas were zero
};

ProportionalAllocation proportional_allocation(const std::vector<double>& sigmas, int n,
                                               double estimation_const = 1.0);

// Worst-case-balancing split: N_core/N_bd tracks sigma^2 c^d v per region.
std::pair<int, int> regional_split(double sigma_core, double sigma_bd, double c_core,
                                   double c_bd, double v_core, double v_bd, int dim, int n);

// sigma sqrt(K/N) + B K^(-beta/d); beta = 1 with B = L c and sigma folding in
// C reproduces error_bound bit-for-bit.
double beta_bound(double k, double n, double sigma, double b, int dim, double beta);
double beta_optimal_k(double n, double sigma, double b, int dim, double beta);

// 2^(1/q) sigma_q n^(-(1-1/q)) for q in (1, 2].
double heavy_tail_mean_bound(double q, double sigma_q, int n);

// Measured layout constant: fill_distance * K^(1/d).
double measured_fill_constant(const AnchorSet& anchors, const ConditionSpace& space);

// Round nonnegative targets to integers summing to `total` by largest
// remainder (ties to the lower index), then lift cells below `min_per_cell`
// by taking from the largest counts.
std::vector<int> largest_remainder_round(const std::vector<double>& targets, int total,
                                         int min_per_cell);

// Equal split of budget over k cells (largest remainder).
std::vector<int> uniform_repeats(int budget, int k);

// Smallest N at which the continuous optimum is >= 2 and strictly interior,
// i.e. bound(K*) < min(bound(1), bound(N)). Scans N up to n_max; returns 0 if
// never attained.
int smallest_interior_budget(const BoundParams& params, int n_max = 100000);

}  // namespace aca
