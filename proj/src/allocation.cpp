#include "aca/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aca {

int AllocationPlan::budget() const {
    int total = 0;
    for (int n : repeats) total += n;
    return total;
}

void AllocationPlan::validate() const {
    if (anchor_count < 1 || static_cast<int>(repeats.size()) != anchor_count) {
        throw std::invalid_argument("AllocationPlan: one repeat count per anchor required");
    }
    for (int n : repeats) {
        if (n < 1) throw std::invalid_argument("AllocationPlan: every repeat count must be >= 1");
    }
}

void BoundParams::validate() const {
    if (!(estimation_const > 0.0) || !(sigma > 0.0) || !(lipschitz > 0.0) ||
        !(fill_constant > 0.0) || dim < 1) {
        throw std::invalid_argument("BoundParams: all parameters must be positive");
    }
}

double error_bound(double k, double n, const BoundParams& params) {
    params.validate();
    if (!(k >= 1.0) || k > n) {
        throw std::invalid_argument("error_bound: requires 1 <= K <= N (repeats would fall below 1)");
    }
    const double density = params.estimation_const * params.sigma * std::sqrt(k / n);
    const double coverage = params.lipschitz * params.fill_constant * std::pow(k, -1.0 / params.dim);
    return density + coverage;
}

OptimalK optimal_k(double n, const BoundParams& params) {
    params.validate();
    if (!(n >= 1.0)) throw std::invalid_argument("optimal_k: N >= 1 required");
    const double d = static_cast<double>(params.dim);
    const double base = 2.0 * params.lipschitz * params.fill_constant * std::sqrt(n) /
                        (d * params.estimation_const * params.sigma);
    OptimalK out;
    out.continuous = std::pow(base, 2.0 * d / (d + 2.0));
    const double clamped = std::clamp(out.continuous, 1.0, n);
    const double fl = std::floor(clamped);
    const double ce = std::min(std::ceil(clamped), n);
    out.rounded = static_cast<int>(
        error_bound(fl, n, params) <= error_bound(ce, n, params) ? fl : ce);
    return out;
}

double optimal_error(double n, const BoundParams& params) {
    const OptimalK k = optimal_k(n, params);
    return error_bound(std::clamp(k.continuous, 1.0, n), n, params);
}

ProportionalAllocation proportional_allocation(const std::vector<double>& sigmas, int n,
                                               double estimation_const) {
    const int k = static_cast<int>(sigmas.size());
    if (k < 1) throw std::invalid_argument("proportional_allocation: at least one anchor required");
    if (n < k) throw std::invalid_argument("proportional_allocation: N >= K required");
    for (double s : sigmas) {
        if (s < 0.0) throw std::invalid_argument("proportional_allocation: sigmas must be >= 0");
    }
    double sum_sq = 0.0;
    for (double s : sigmas) sum_sq += s * s;

    ProportionalAllocation out;
    out.real_counts.resize(sigmas.size());
    if (sum_sq == 0.0) {
        out.uniform_fallback = true;
        const double equal = static_cast<double>(n) / k;
        std::fill(out.real_counts.begin(), out.real_counts.end(), equal);
        out.counts = uniform_repeats(n, k);
        out.worst_anchor_bound = 0.0;
        return out;
    }
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        out.real_counts[i] = static_cast<double>(n) * sigmas[i] * sigmas[i] / sum_sq;
    }
    out.counts = largest_remainder_round(out.real_counts, n, 1);
    out.worst_anchor_bound = estimation_const * std::sqrt(sum_sq / n);
    return out;
}

std::pair<int, int> regional_split(double sigma_core, double sigma_bd, double c_core,
                                   double c_bd, double v_core, double v_bd, int dim, int n) {
    if (n < 2) throw std::invalid_argument("regional_split: N >= 2 required");
    if (!(sigma_core > 0.0) || !(sigma_bd > 0.0) || !(c_core > 0.0) || !(c_bd > 0.0) ||
        !(v_core > 0.0) || !(v_bd > 0.0) || dim < 1) {
        throw std::invalid_argument("regional_split: all parameters must be positive");
    }
    const double w_core = sigma_core * sigma_core * std::pow(c_core, dim) * v_core;
    const double w_bd = sigma_bd * sigma_bd * std::pow(c_bd, dim) * v_bd;
    const std::vector<int> counts = largest_remainder_round(
        {static_cast<double>(n) * w_core / (w_core + w_bd),
         static_cast<double>(n) * w_bd / (w_core + w_bd)},
        n, 1);
    return {counts[0], counts[1]};
}

double beta_bound(double k, double n, double sigma, double b, int dim, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta_bound: beta > 0 required");
    if (!(k >= 1.0) || k > n) throw std::invalid_argument("beta_bound: requires 1 <= K <= N");
    return sigma * std::sqrt(k / n) + b * std::pow(k, -beta / dim);
}

double beta_optimal_k(double n, double sigma, double b, int dim, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta_optimal_k: beta > 0 required");
    const double d = static_cast<double>(dim);
    const double base = 2.0 * beta * b * std::sqrt(n) / (d * sigma);
    return std::pow(base, 2.0 * d / (d + 2.0 * beta));
}

double heavy_tail_mean_bound(double q, double sigma_q, int n) {
    if (!(q > 1.0 && q <= 2.0)) throw std::invalid_argument("heavy_tail_mean_bound: q in (1,2] required");
    if (!(sigma_q > 0.0) || n < 1) {
        throw std::invalid_argument("heavy_tail_mean_bound: sigma_q > 0 and n >= 1 required");
    }
    return std::pow(2.0, 1.0 / q) * sigma_q * std::pow(static_cast<double>(n), -(1.0 - 1.0 / q));
}

double measured_fill_constant(const AnchorSet& anchors, const ConditionSpace& space) {
    const double h = fill_distance(anchors, space);
    return h * std::pow(static_cast<double>(anchors.size()), 1.0 / space.dim);
}

std::vector<int> largest_remainder_round(const std::vector<double>& targets, int total,
                                         int min_per_cell) {
    const int k = static_cast<int>(targets.size());
    if (k < 1) throw std::invalid_argument("largest_remainder_round: empty targets");
    if (total < k * min_per_cell) {
        throw std::invalid_argument("largest_remainder_round: total too small for the floor");
    }
    double sum = 0.0;
    for (double t : targets) {
        if (t < 0.0) throw std::invalid_argument("largest_remainder_round: negative target");
        sum += t;
    }
    std::vector<int> counts(targets.size(), 0);
    std::vector<double> frac(targets.size(), 0.0);
    int assigned = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double scaled = sum > 0.0 ? targets[i] * static_cast<double>(total) / sum
                                        : static_cast<double>(total) / k;
        counts[i] = static_cast<int>(std::floor(scaled));
        frac[i] = scaled - std::floor(scaled);
        assigned += counts[i];
    }
    std::vector<std::size_t> order(targets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (int leftover = total - assigned; leftover > 0; --leftover) {
        counts[order[static_cast<std::size_t>(total - assigned - leftover)]] += 1;
    }
    // Lift starved cells up to the floor, taking from the largest counts.
    for (std::size_t i = 0; i < counts.size(); ++i) {
        while (counts[i] < min_per_cell) {
            const auto donor = std::max_element(counts.begin(), counts.end());
            if (*donor <= min_per_cell) {
                throw std::logic_error("largest_remainder_round: cannot satisfy the floor");
            }
            *donor -= 1;
            counts[i] += 1;
        }
    }
    return counts;
}

std::vector<int> uniform_repeats(int budget, int k) {
    if (k < 1 || budget < k) throw std::invalid_argument("uniform_repeats: budget >= K >= 1 required");
    return largest_remainder_round(std::vector<double>(static_cast<std::size_t>(k), 1.0), budget, 1);
}

int smallest_interior_budget(const BoundParams& params, int n_max) {
    params.validate();
    for (int n = 2; n <= n_max; ++n) {
        const OptimalK k = optimal_k(static_cast<double>(n), params);
        if (k.continuous < 2.0 || k.continuous > static_cast<double>(n) - 1.0) continue;
        const double at_opt = error_bound(k.continuous, n, params);
        if (at_opt < error_bound(1.0, n, params) && at_opt < error_bound(n, n, params)) {
            return n;
        }
    }
    return 0;
}

}  // namespace aca
