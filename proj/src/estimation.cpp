#include "aca/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace aca {

std::string to_string(EstimatorTag tag) {
    return tag == EstimatorTag::sample_mean ? "sample_mean" : "median_of_means";
}

std::string to_string(AssignmentRule rule) {
    return rule == AssignmentRule::nearest ? "nearest" : "kernel";
}

EstimatorTag estimator_from_string(const std::string& name) {
    if (name == "sample_mean") return EstimatorTag::sample_mean;
    if (name == "median_of_means") return EstimatorTag::median_of_means;
    throw std::invalid_argument("unknown estimator tag: " + name);
}

AssignmentRule rule_from_string(const std::string& name) {
    if (name == "nearest") return AssignmentRule::nearest;
    if (name == "kernel") return AssignmentRule::kernel;
    throw std::invalid_argument("unknown assignment rule: " + name);
}

Vec anchor_mean(const std::vector<Vec>& observations) {
    if (observations.empty()) throw std::invalid_argument("anchor_mean: empty observation list");
    // Constant streams (the zero-noise limit) must average exactly.
    bool constant = true;
    for (const Vec& y : observations) {
        check_same_size(y, observations.front(), "anchor_mean");
        if (y != observations.front()) constant = false;
    }
    if (constant) return observations.front();
    Vec mean(observations.front().size(), 0.0);
    for (const Vec& y : observations) {
        for (std::size_t r = 0; r < mean.size(); ++r) mean[r] += y[r];
    }
    for (double& v : mean) v /= static_cast<double>(observations.size());
    return mean;
}

Vec median_of_means(const std::vector<Vec>& observations, int num_blocks) {
    if (observations.empty()) throw std::invalid_argument("median_of_means: empty observation list");
    const int n = static_cast<int>(observations.size());
    if (num_blocks < 1 || num_blocks > n) {
        throw std::invalid_argument("median_of_means: need 1 <= blocks <= count");
    }
    const std::size_t m = observations.front().size();
    const int base = n / num_blocks;
    const int extra = n % num_blocks;
    std::vector<Vec> block_means;
    block_means.reserve(static_cast<std::size_t>(num_blocks));
    int cursor = 0;
    for (int b = 0; b < num_blocks; ++b) {
        const int len = base + (b < extra ? 1 : 0);
        std::vector<Vec> block(observations.begin() + cursor, observations.begin() + cursor + len);
        block_means.push_back(anchor_mean(block));
        cursor += len;
    }
    Vec out(m, 0.0);
    std::vector<double> coord(static_cast<std::size_t>(num_blocks));
    for (std::size_t r = 0; r < m; ++r) {
        for (int b = 0; b < num_blocks; ++b) coord[static_cast<std::size_t>(b)] = block_means[static_cast<std::size_t>(b)][r];
        std::sort(coord.begin(), coord.end());
        const std::size_t half = coord.size() / 2;
        out[r] = (coord.size() % 2 == 1) ? coord[half] : 0.5 * (coord[half - 1] + coord[half]);
    }
    return out;
}

double concentration_radius(double sigma, int n, int m, int k, double delta) {
    if (!(sigma > 0.0) || n < 1 || m < 1 || k < 1) {
        throw std::invalid_argument("concentration_radius: positive sigma, n, m, K required");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("concentration_radius: delta in (0,1) required");
    }
    return sigma * std::sqrt(2.0 * m * std::log(2.0 * m * k / delta) / n);
}

Vec SurrogatePolicy::condition_estimate(const Vec& p) const {
    Vec out(static_cast<std::size_t>(out_dim()), 0.0);
    condition_estimate_into(p, out.data());
    return out;
}

void SurrogatePolicy::condition_estimate_into(const Vec& p, double* out) const {
    const int m = out_dim();
    if (rule == AssignmentRule::nearest) {
        const Vec& est = estimates[static_cast<std::size_t>(nearest_anchor(p, anchors))].estimate;
        for (int r = 0; r < m; ++r) out[r] = est[static_cast<std::size_t>(r)];
    } else {
        // Normalized Gaussian weights over all anchors. With a single anchor
        // the weight is 1 and the rule coincides with nearest.
        const double inv_two_b2 = 1.0 / (2.0 * kernel_bandwidth * kernel_bandwidth);
        double wsum = 0.0;
        for (int r = 0; r < m; ++r) out[r] = 0.0;
        for (std::size_t i = 0; i < estimates.size(); ++i) {
            const Vec& q = anchors.points[i];
            double s = 0.0;
            for (std::size_t a = 0; a < p.size(); ++a) {
                const double dd = p[a] - q[a];
                s += dd * dd;
            }
            const double w = std::exp(-s * inv_two_b2);
            wsum += w;
            const Vec& est = estimates[i].estimate;
            for (int r = 0; r < m; ++r) out[r] += w * est[static_cast<std::size_t>(r)];
        }
        if (wsum <= 0.0) {
            // All weights underflowed; fall back to the nearest anchor.
            const Vec& est = estimates[static_cast<std::size_t>(nearest_anchor(p, anchors))].estimate;
            for (int r = 0; r < m; ++r) out[r] = est[static_cast<std::size_t>(r)];
        } else {
            for (int r = 0; r < m; ++r) out[r] /= wsum;
        }
    }
    if (residual) residual->add_to(p, out);
}

Vec SurrogatePolicy::predict(const Vec& z, const Vec& p, double t) const {
    Vec out(static_cast<std::size_t>(out_dim()), 0.0);
    predict_into(z.data(), p, t, out.data());
    return out;
}

void SurrogatePolicy::predict_into(const double* z, const Vec& p, double t, double* out) const {
    condition_estimate_into(p, out);
    state_coupling.apply_add(z, out);
    for (std::size_t r = 0; r < drift.size(); ++r) out[r] += drift[r] * t;
}

SurrogatePolicy fit_surrogate(const SyntheticField& field, const ConditionSpace& space,
                              const AnchorSet& anchors, const std::vector<int>& repeats,
                              int stage_budget, const NoiseModel& noise, EstimatorTag estimator,
                              AssignmentRule rule, std::uint64_t seed) {
    if (anchors.empty()) throw std::invalid_argument("fit_surrogate: empty anchor set");
    if (repeats.size() != anchors.points.size()) {
        throw std::invalid_argument("fit_surrogate: one repeat count per anchor required");
    }
    long long total = 0;
    for (int n : repeats) {
        if (n < 1) throw std::invalid_argument("fit_surrogate: every repeat count must be >= 1");
        total += n;
    }
    if (total != stage_budget) {
        throw std::invalid_argument("fit_surrogate: repeats do not sum to the stage budget");
    }

    SurrogatePolicy policy;
    policy.anchors = anchors;
    policy.rule = rule;
    policy.state_coupling = field.state_coupling;
    policy.drift = field.drift;
    policy.estimates.resize(anchors.points.size());

    const Vec z0(static_cast<std::size_t>(field.m), 0.0);
    for (std::size_t i = 0; i < anchors.points.size(); ++i) {
        Rng rng(derive_seed(seed, 0xa17c, i));
        const int n = repeats[i];
        std::vector<Vec> obs;
        obs.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) obs.push_back(observe(field, z0, anchors.points[i], 0.0, noise, rng));
        AnchorEstimate& est = policy.estimates[i];
        est.anchor_index = static_cast<int>(i);
        est.repeats = n;
        est.estimator = estimator;
        if (estimator == EstimatorTag::sample_mean) {
            est.estimate = anchor_mean(obs);
        } else {
            // sqrt(n) blocks balances bias and breakdown point at desk scale.
            const int blocks = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))));
            est.estimate = median_of_means(obs, blocks);
        }
    }

    if (rule == AssignmentRule::kernel) {
        policy.kernel_bandwidth = anchors.size() == 1 ? space.width(0) : fill_distance(anchors, space);
        if (policy.kernel_bandwidth <= 0.0) policy.kernel_bandwidth = space.width(0);
        policy.l_hat = measure_predictor_lipschitz(policy, space);
    }
    return policy;
}

double measure_predictor_lipschitz(const SurrogatePolicy& policy, const ConditionSpace& space) {
    const int res = space.eval_resolution;
    const int m = policy.out_dim();
    Vec a(static_cast<std::size_t>(m), 0.0), b(static_cast<std::size_t>(m), 0.0);
    double worst = 0.0;
    const std::size_t n = space.grid_size();
    for (std::size_t flat = 0; flat < n; ++flat) {
        const Vec p = space.grid_point(flat);
        policy.condition_estimate_into(p, a.data());
        std::size_t stride = 1;
        for (int axis = 0; axis < space.dim; ++axis) {
            const std::size_t idx = (flat / stride) % static_cast<std::size_t>(res);
            if (idx + 1 < static_cast<std::size_t>(res)) {
                Vec q = p;
                q[static_cast<std::size_t>(axis)] += space.grid_spacing(axis);
                policy.condition_estimate_into(q, b.data());
                double diff = 0.0;
                for (int r = 0; r < m; ++r) {
                    const double dd = b[static_cast<std::size_t>(r)] - a[static_cast<std::size_t>(r)];
                    diff += dd * dd;
                }
                const double ratio = std::sqrt(diff) / space.grid_spacing(axis);
                if (ratio > worst) worst = ratio;
            }
            stride *= static_cast<std::size_t>(res);
        }
    }
    return std::sqrt(static_cast<double>(space.dim)) * worst;
}

SupError field_error_sup(const SurrogatePolicy& policy, const SyntheticField& field,
                         const ConditionSpace& space) {
    const int m = field.m;
    Vec pred(static_cast<std::size_t>(m), 0.0), truth(static_cast<std::size_t>(m), 0.0);
    SupError out;
    out.value = -1.0;
    const std::size_t n = space.grid_size();
    for (std::size_t flat = 0; flat < n; ++flat) {
        const Vec p = space.grid_point(flat);
        policy.condition_estimate_into(p, pred.data());
        field.condition_part_into(p, truth.data());
        double s = 0.0;
        for (int r = 0; r < m; ++r) {
            const double dd = pred[static_cast<std::size_t>(r)] - truth[static_cast<std::size_t>(r)];
            s += dd * dd;
        }
        if (s > out.value) {
            out.value = s;
            out.argmax = p;
        }
    }
    out.value = std::sqrt(std::max(0.0, out.value));
    return out;
}

double max_anchor_error(const SurrogatePolicy& policy, const SyntheticField& field) {
    const int m = field.m;
    Vec pred(static_cast<std::size_t>(m), 0.0), truth(static_cast<std::size_t>(m), 0.0);
    double worst = 0.0;
    for (const Vec& q : policy.anchors.points) {
        policy.condition_estimate_into(q, pred.data());
        field.condition_part_into(q, truth.data());
        double s = 0.0;
        for (int r = 0; r < m; ++r) {
            const double dd = pred[static_cast<std::size_t>(r)] - truth[static_cast<std::size_t>(r)];
            s += dd * dd;
        }
        worst = std::max(worst, s);
    }
    return std::sqrt(worst);
}

nlohmann::json policy_to_json(const SurrogatePolicy& policy) {
    nlohmann::json j;
    j["rule"] = to_string(policy.rule);
    j["kernel_bandwidth"] = policy.kernel_bandwidth;
    j["l_hat"] = policy.l_hat;
    j["layout"] = to_string(policy.anchors.layout);
    nlohmann::json anchors = nlohmann::json::array();
    for (const Vec& p : policy.anchors.points) anchors.push_back(p);
    j["anchors"] = std::move(anchors);
    nlohmann::json estimates = nlohmann::json::array();
    for (const AnchorEstimate& e : policy.estimates) {
        estimates.push_back({{"anchor", e.anchor_index},
                             {"estimate", e.estimate},
                             {"repeats", e.repeats},
                             {"estimator", to_string(e.estimator)}});
    }
    j["estimates"] = std::move(estimates);
    j["state_coupling"] = policy.state_coupling.a;
    j["drift"] = policy.drift;
    return j;
}

}  // namespace aca
