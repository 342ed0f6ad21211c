#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "aca/condition_space.hpp"
#include "aca/estimation.hpp"
#include "aca/linalg.hpp"
#include "aca/synthetic_field.hpp"

namespace aca {

// One demonstrated trajectory at a fixed condition: true-field rollout states
// plus the demonstrated action at each step (optionally noised).
struct ProbeDemo {
    Vec condition;
    std::vector<Vec> states;   // steps + 1
    std::vector<Vec> actions;  // steps; actions[k] taken at states[k], time t_k
    double horizon = 0.0;

    int steps() const { return static_cast<int>(actions.size()); }
};

ProbeDemo make_probe(const SyntheticField& field, const Vec& p, const Vec& z0, double horizon,
                     int steps, double demo_noise, std::uint64_t seed);

// Teacher-forced deviation: decode the policy on the demonstration states and
// average the L1 action gap — never on the policy's own rollout states, so
// state drift cannot compound into the score.
double teacher_forced_deviation(const SurrogatePolicy& policy, const ProbeDemo& demo);

// Indices of the k largest scores, descending; ties resolve to the lower
// candidate index.
std::vector<int> select_boundary(const std::vector<double>& scores, int k);

// Uniform draws in the l-infinity ball around the center, clipped to the
// domain.
std::vector<Vec> expand_local(const Vec& center, double radius, int count,
                              const ConditionSpace& space, std::uint64_t seed);

struct DeviationReport {
    std::vector<Vec> candidates;
    std::vector<double> scores;
    std::vector<int> ranking;   // all candidates, best first
    std::vector<int> selected;  // top-k subset of ranking
    int k = 0;
};

// Canonical deviation table: candidate index, p coordinates, score, selected.
void write_deviation_csv(std::ostream& out, const DeviationReport& report, bool header = true);

}  // namespace aca
