#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "aca/condition_space.hpp"
#include "aca/estimation.hpp"
#include "aca/linalg.hpp"
#include "aca/synthetic_field.hpp"

namespace aca {

struct Trajectory {
    double horizon = 0.0;
    std::vector<Vec> states;  // steps + 1 entries, uniform grid over [0, horizon]

    int steps() const { return static_cast<int>(states.size()) - 1; }
    double dt() const { return horizon / steps(); }
    const Vec& endpoint() const { return states.back(); }
};

// dz/dt evaluated at (z, t); the condition p is baked into the closure.
using FieldFn = std::function<void(const double* z, double t, double* out)>;

FieldFn true_field_fn(const SyntheticField& field, const Vec& p);
FieldFn policy_field_fn(const SurrogatePolicy& policy, const Vec& p);

// Classical fixed-step RK4. Both systems of a deviation measurement share the
// identical time grid, so adaptive stepping is deliberately absent. Throws if
// a state goes non-finite.
Trajectory integrate(const FieldFn& field, const Vec& z0, double horizon, int steps);

// ((e^(Lambda T) - 1) / Lambda) * delta, with the series limit T * delta as
// Lambda -> 0 (switchover at Lambda*T < 1e-6 to dodge cancellation).
double gronwall_bound(double lambda, double horizon, double delta);

// Endpoint distance between policy and true-field rollouts from a shared z0.
double trajectory_deviation(const SurrogatePolicy& policy, const SyntheticField& field,
                            const Vec& z0, const Vec& p, double horizon, int steps);

struct SuccessConfig {
    double tau = 0.1;      // success iff final deviation <= tau
    double horizon = 1.0;
    int trials_per_region = 20;
    int steps = 50;
    void validate() const;
};

struct RegionRates {
    std::vector<int> trials;
    std::vector<int> successes;
    std::vector<double> rates;
    double mean_rate() const;
};

// Samples conditions uniformly per region, rolls out policy vs truth, scores
// endpoint deviation <= tau.
RegionRates success_metrics(const SurrogatePolicy& policy, const SyntheticField& field,
                            const ConditionSpace& space, const RegionFamily& regions,
                            const SuccessConfig& cfg, std::uint64_t seed);

// Canonical success-report table: region, trials, successes, rate, tau, seed.
void write_success_csv(std::ostream& out, const RegionRates& rates, double tau,
                       std::uint64_t seed, bool header = true);

}  // namespace aca
