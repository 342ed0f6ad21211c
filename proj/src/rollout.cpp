#include "aca/rollout.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "aca/report.hpp"

namespace aca {

FieldFn true_field_fn(const SyntheticField& field, const Vec& p) {
    return [&field, p](const double* z, double t, double* out) { field.eval_into(z, p, t, out); };
}

FieldFn policy_field_fn(const SurrogatePolicy& policy, const Vec& p) {
    return [&policy, p](const double* z, double t, double* out) { policy.predict_into(z, p, t, out); };
}

Trajectory integrate(const FieldFn& field, const Vec& z0, double horizon, int steps) {
    if (steps < 1) throw std::invalid_argument("integrate: steps >= 1 required");
    if (!(horizon > 0.0)) throw std::invalid_argument("integrate: horizon > 0 required");
    const std::size_t m = z0.size();
    Trajectory traj;
    traj.horizon = horizon;
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);
    traj.states.push_back(z0);

    const double h = horizon / steps;
    Vec k1(m), k2(m), k3(m), k4(m), tmp(m), next(m);
    for (int s = 0; s < steps; ++s) {
        const Vec& z = traj.states.back();
        const double t = h * s;
        field(z.data(), t, k1.data());
        for (std::size_t r = 0; r < m; ++r) tmp[r] = z[r] + 0.5 * h * k1[r];
        field(tmp.data(), t + 0.5 * h, k2.data());
        for (std::size_t r = 0; r < m; ++r) tmp[r] = z[r] + 0.5 * h * k2[r];
        field(tmp.data(), t + 0.5 * h, k3.data());
        for (std::size_t r = 0; r < m; ++r) tmp[r] = z[r] + h * k3[r];
        field(tmp.data(), t + h, k4.data());
        for (std::size_t r = 0; r < m; ++r) {
            next[r] = z[r] + h / 6.0 * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r]);
        }
        if (!all_finite(next)) {
            throw std::runtime_error("integrate: non-finite state at step " + std::to_string(s + 1) +
                                     " (t=" + std::to_string(t + h) + ")");
        }
        traj.states.push_back(next);
    }
    return traj;
}

double gronwall_bound(double lambda, double horizon, double delta) {
    if (lambda < 0.0 || !(horizon > 0.0) || delta < 0.0) {
        throw std::invalid_argument("gronwall_bound: lambda >= 0, T > 0, delta >= 0 required");
    }
    const double x = lambda * horizon;
    if (x < 1e-6) {
        return delta * horizon * (1.0 + 0.5 * x + x * x / 6.0);
    }
    return delta * std::expm1(x) / lambda;
}

double trajectory_deviation(const SurrogatePolicy& policy, const SyntheticField& field,
                            const Vec& z0, const Vec& p, double horizon, int steps) {
    const Trajectory truth = integrate(true_field_fn(field, p), z0, horizon, steps);
    const Trajectory rollout = integrate(policy_field_fn(policy, p), z0, horizon, steps);
    return dist2(rollout.endpoint(), truth.endpoint());
}

void SuccessConfig::validate() const {
    if (!(tau > 0.0) || !(horizon > 0.0) || trials_per_region < 1 || steps < 1) {
        throw std::invalid_argument("SuccessConfig: tau > 0, horizon > 0, trials >= 1, steps >= 1");
    }
}

double RegionRates::mean_rate() const {
    if (rates.empty()) return 0.0;
    double s = 0.0;
    for (double r : rates) s += r;
    return s / static_cast<double>(rates.size());
}

void write_success_csv(std::ostream& out, const RegionRates& rates, double tau,
                       std::uint64_t seed, bool header) {
    if (header) out << "region,trials,successes,rate,tau,seed\n";
    for (std::size_t r = 0; r < rates.rates.size(); ++r) {
        out << r << ',' << rates.trials[r] << ',' << rates.successes[r] << ','
            << fmt_double(rates.rates[r]) << ',' << fmt_double(tau) << ',' << seed << "\n";
    }
}

RegionRates success_metrics(const SurrogatePolicy& policy, const SyntheticField& field,
                            const ConditionSpace& space, const RegionFamily& regions,
                            const SuccessConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    RegionRates out;
    const Vec z0(static_cast<std::size_t>(field.m), 0.0);
    for (int region = 0; region < regions.size(); ++region) {
        int hits = 0;
        for (int trial = 0; trial < cfg.trials_per_region; ++trial) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(region), static_cast<std::uint64_t>(trial)));
            const Vec p = regions.sample(space, region, rng);
            const double dev = trajectory_deviation(policy, field, z0, p, cfg.horizon, cfg.steps);
            if (dev <= cfg.tau) ++hits;
        }
        out.trials.push_back(cfg.trials_per_region);
        out.successes.push_back(hits);
        out.rates.push_back(static_cast<double>(hits) / cfg.trials_per_region);
    }
    return out;
}

}  // namespace aca
