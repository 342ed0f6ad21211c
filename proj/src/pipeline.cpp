#include "aca/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace aca {

namespace {

// Bump radius for a mined point: capped at half the distance to the nearest
// core anchor (the frozen-core guarantee) and at twice the expansion radius
// (the correction is only trustworthy inside the neighborhood that supplied
// data; letting it reach farther degrades competent territory).
double protective_radius(const Vec& q, const AnchorSet& core, double expansion_radius) {
    const int idx = nearest_anchor(q, core);
    return std::min(0.5 * dist2(q, core.points[static_cast<std::size_t>(idx)]),
                    4.0 * expansion_radius);
}

// One g-observation derived from a demo trajectory: step-mean of
// a_t - M z_t - v t. The known structure (M, v) is the environment contract.
Vec demo_condition_observation(const ProbeDemo& demo, const Mat& coupling, const Vec& drift) {
    const int m = static_cast<int>(drift.size());
    Vec sum(static_cast<std::size_t>(m), 0.0);
    const double dt = demo.horizon / demo.steps();
    Vec mz(static_cast<std::size_t>(m), 0.0);
    for (int k = 0; k < demo.steps(); ++k) {
        std::fill(mz.begin(), mz.end(), 0.0);
        coupling.apply_add(demo.states[static_cast<std::size_t>(k)].data(), mz.data());
        const Vec& a = demo.actions[static_cast<std::size_t>(k)];
        for (int r = 0; r < m; ++r) {
            sum[static_cast<std::size_t>(r)] +=
                a[static_cast<std::size_t>(r)] - mz[static_cast<std::size_t>(r)] - drift[static_cast<std::size_t>(r)] * (dt * k);
        }
    }
    for (double& v : sum) v /= demo.steps();
    return sum;
}

}  // namespace

BudgetPlan BudgetPlan::standard(int n_total, int anchor_count) {
    if (n_total < 10) throw std::invalid_argument("BudgetPlan: standard split needs N >= 10");
    BudgetPlan plan;
    plan.n_total = n_total;
    plan.anchor_count = anchor_count;
    plan.n_anchor = static_cast<int>(std::lround(0.8 * n_total));
    const int rest = n_total - plan.n_anchor;
    plan.n_probe = (rest + 1) / 2;
    plan.n_boundary = rest - plan.n_probe;
    plan.mining_k = n_total <= 60 ? 2 : (n_total <= 120 ? 3 : 5);
    plan.mining_k = std::min(plan.mining_k, plan.n_probe);
    plan.validate();
    return plan;
}

void BudgetPlan::validate() const {
    if (n_anchor < 0 || n_probe < 0 || n_boundary < 0) {
        throw std::invalid_argument("BudgetPlan: negative component");
    }
    if (n_anchor + n_probe + n_boundary != n_total) {
        throw std::invalid_argument("BudgetPlan: components must sum to the total budget");
    }
    if (n_anchor > 0 && anchor_count < 1) {
        throw std::invalid_argument("BudgetPlan: anchor count >= 1 required when N_A > 0");
    }
    if (mining_k < 0) throw std::invalid_argument("BudgetPlan: mining k >= 0 required");
    if (mining_k == 0 && n_boundary > 0) {
        throw std::invalid_argument("BudgetPlan: boundary budget without mined locations is unspendable");
    }
    if (!(expansion_radius > 0.0)) {
        throw std::invalid_argument("BudgetPlan: expansion radius > 0 required");
    }
}

void ResidualLayer::add_to(const Vec& p, double* out) const {
    for (std::size_t j = 0; j < centers.size(); ++j) {
        const double u = dist2(p, centers[j]) / radii[j];
        if (u < 1.0) {
            // Flat-top bump: near-full correction through most of the disc,
            // C1 roll-off to zero at the support radius.
            const double u4 = u * u * u * u;
            const double w = (1.0 - u4) * (1.0 - u4);
            const Vec& delta = deltas[j];
            for (std::size_t r = 0; r < delta.size(); ++r) out[r] += w * delta[r];
        }
    }
}

bool ResidualLayer::supports(const Vec& p) const {
    for (std::size_t j = 0; j < centers.size(); ++j) {
        if (dist2(p, centers[j]) < radii[j]) return true;
    }
    return false;
}

void GlobalCorrection::add_to(const Vec& p, double* out) const {
    if (centers.empty()) return;
    const double inv_two_b2 = 1.0 / (2.0 * bandwidth * bandwidth);
    double wsum = 0.0;
    std::vector<double> w(centers.size(), 0.0);
    for (std::size_t j = 0; j < centers.size(); ++j) {
        const double dd = dist2(p, centers[j]);
        w[j] = std::exp(-dd * dd * inv_two_b2);
        wsum += w[j];
    }
    if (wsum <= 0.0) return;
    for (std::size_t j = 0; j < centers.size(); ++j) {
        const Vec& delta = deltas[j];
        for (std::size_t r = 0; r < delta.size(); ++r) out[r] += (w[j] / wsum) * delta[r];
    }
}

SurrogatePolicy run_stage1(const WorldEnv& env, const BudgetPlan& plan, LayoutTag layout,
                           std::uint64_t seed) {
    plan.validate();
    if (plan.n_anchor < plan.anchor_count) {
        throw std::invalid_argument("run_stage1: anchor budget below one repeat per anchor");
    }
    const AnchorSet anchors = make_layout(env.space, layout, plan.anchor_count, derive_seed(seed, 0x51a));
    const std::vector<int> repeats = uniform_repeats(plan.n_anchor, plan.anchor_count);
    return fit_surrogate(env.field, env.space, anchors, repeats, plan.n_anchor, env.noise,
                         EstimatorTag::sample_mean, AssignmentRule::nearest,
                         derive_seed(seed, 0x51b));
}

MiningResult run_mining(const SurrogatePolicy& base, const WorldEnv& env, const BudgetPlan& plan,
                        std::uint64_t seed, bool top_k_selection) {
    plan.validate();
    if (plan.n_probe < plan.mining_k) {
        throw std::invalid_argument("run_mining: probe budget below the selection size");
    }
    MiningResult result;
    result.probe_horizon = 1.0;
    result.probe_steps = 50;

    // Low-discrepancy candidate pool, disjoint from the anchors.
    Vec rotation(static_cast<std::size_t>(env.space.dim), 0.0);
    Rng rot_rng(derive_seed(seed, 0xca9d));
    for (double& r : rotation) r = rot_rng.u01();
    int qr_index = 1;
    while (static_cast<int>(result.report.candidates.size()) < plan.n_probe) {
        Vec u = quasirandom_point(qr_index++, env.space.dim, &rotation);
        Vec p(u.size());
        for (std::size_t a = 0; a < u.size(); ++a) {
            p[a] = env.space.lo[a] + u[a] * (env.space.hi[a] - env.space.lo[a]);
        }
        bool clashes = false;
        for (const Vec& q : base.anchors.points) {
            if (dist2(p, q) < 1e-9) { clashes = true; break; }
        }
        if (!clashes) result.report.candidates.push_back(std::move(p));
    }

    // Demonstrated actions inherit the environment's gaussian noise scale;
    // heavy-tailed environments keep clean demos (teleoperation quality is a
    // separate channel from rollout stochasticity).
    const double demo_noise = env.noise.kind == NoiseKind::gaussian ? env.noise.sigma : 0.0;
    const Vec z0(static_cast<std::size_t>(env.field.m), 0.0);
    for (int i = 0; i < plan.n_probe; ++i) {
        const Vec& p = result.report.candidates[static_cast<std::size_t>(i)];
        result.probes.push_back(make_probe(env.field, p, z0, result.probe_horizon,
                                           result.probe_steps, demo_noise,
                                           derive_seed(seed, 0x9c0b, static_cast<std::uint64_t>(i))));
        result.report.scores.push_back(teacher_forced_deviation(base, result.probes.back()));
    }
    result.consumed = plan.n_probe;

    result.report.ranking = select_boundary(result.report.scores, plan.n_probe);
    result.report.k = plan.mining_k;
    if (top_k_selection) {
        result.report.selected = select_boundary(result.report.scores, plan.mining_k);
    } else {
        // Random-acquisition ablation arm: k fresh uniformly drawn conditions
        // instead of the screened top-k. Their demos are newly collected, so
        // they bill against the expansion budget (the screening pool is spent
        // either way; ignoring its scores is the point of the arm).
        Rng rng(derive_seed(seed, 0xab1a));
        for (int j = 0; j < plan.mining_k; ++j) {
            Vec p(static_cast<std::size_t>(env.space.dim));
            for (int a = 0; a < env.space.dim; ++a) {
                p[static_cast<std::size_t>(a)] = rng.uniform(env.space.lo[static_cast<std::size_t>(a)],
                                                             env.space.hi[static_cast<std::size_t>(a)]);
            }
            result.report.selected.push_back(static_cast<int>(result.report.candidates.size()));
            result.probes.push_back(make_probe(env.field, p, z0, result.probe_horizon,
                                               result.probe_steps, demo_noise,
                                               derive_seed(seed, 0xab1b, static_cast<std::uint64_t>(j))));
            result.report.candidates.push_back(p);
            result.report.scores.push_back(teacher_forced_deviation(base, result.probes.back()));
            result.consumed += 1;
        }
    }
    return result;
}

SurrogatePolicy run_stage2(const SurrogatePolicy& base, const MiningResult& mined,
                           const WorldEnv& env, const BudgetPlan& plan, std::uint64_t seed,
                           bool compact_support) {
    plan.validate();
    SurrogatePolicy composite = base;
    const int k = static_cast<int>(mined.report.selected.size());
    if (k == 0) {
        if (plan.n_boundary > 0) {
            throw std::invalid_argument("run_stage2: boundary budget with no mined locations");
        }
        return composite;  // zero-initialized residual: composite == base
    }

    // Fresh demos collected during selection (the random-acquisition arm)
    // already billed against the boundary budget.
    const int expansion_budget = plan.n_boundary - (mined.consumed - plan.n_probe);
    if (expansion_budget < 0) {
        throw std::invalid_argument("run_stage2: boundary budget overrun by selection demos");
    }
    std::vector<int> expansion_counts(static_cast<std::size_t>(k), 0);
    if (expansion_budget > 0) {
        expansion_counts =
            largest_remainder_round(std::vector<double>(static_cast<std::size_t>(k), 1.0),
                                    expansion_budget, 0);
    }

    std::vector<Vec> centers, deltas;
    std::vector<double> radii;
    int consumed = 0;
    for (int j = 0; j < k; ++j) {
        const int cand = mined.report.selected[static_cast<std::size_t>(j)];
        const ProbeDemo& demo = mined.probes[static_cast<std::size_t>(cand)];
        const Vec& q = demo.condition;

        // Each boundary sample contributes its own residual against the base
        // prediction at that sample (samples landing where the base is already
        // right pull the correction toward zero instead of exporting the mined
        // cell's error to its neighbors). The reused probe condenses a full
        // demonstrated trajectory, so its residual carries steps-many action
        // samples; weight it accordingly against single-shot expansions.
        const Vec probe_residual =
            sub(demo_condition_observation(demo, base.state_coupling, base.drift),
                base.condition_estimate(q));
        const double probe_weight = std::sqrt(static_cast<double>(demo.steps()));
        Vec weighted_sum = scaled(probe_residual, probe_weight);
        double weight_total = probe_weight;
        const int expansions = expansion_counts[static_cast<std::size_t>(j)];
        if (expansions > 0) {
            const std::vector<Vec> nearby =
                expand_local(q, plan.expansion_radius, expansions, env.space,
                             derive_seed(seed, 0x2e0, static_cast<std::uint64_t>(j)));
            Rng rng(derive_seed(seed, 0x2e1, static_cast<std::uint64_t>(j)));
            const Vec z0(static_cast<std::size_t>(env.field.m), 0.0);
            for (const Vec& p : nearby) {
                weighted_sum = add(std::move(weighted_sum),
                                   sub(observe(env.field, z0, p, 0.0, env.noise, rng),
                                       base.condition_estimate(p)));
                weight_total += 1.0;
            }
            consumed += expansions;
        }

        centers.push_back(q);
        deltas.push_back(scaled(std::move(weighted_sum), 1.0 / weight_total));
        radii.push_back(protective_radius(q, base.anchors, plan.expansion_radius));
    }
    if (consumed != expansion_budget) {
        throw std::logic_error("run_stage2: boundary ledger mismatch");
    }

    if (compact_support) {
        auto layer = std::make_shared<ResidualLayer>();
        layer->centers = std::move(centers);
        layer->deltas = std::move(deltas);
        layer->radii = std::move(radii);
        composite.residual = std::move(layer);
    } else {
        auto layer = std::make_shared<GlobalCorrection>();
        layer->centers = std::move(centers);
        double mean_radius = 0.0;
        for (double r : radii) mean_radius += r;
        layer->bandwidth = std::max(1e-6, mean_radius / static_cast<double>(radii.size()));
        layer->deltas = std::move(deltas);
        composite.residual = std::move(layer);
    }
    return composite;
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "fully_diverse") return Strategy::fully_diverse;
    if (name == "anchors_only") return Strategy::anchors_only;
    if (name == "aca") return Strategy::aca;
    throw std::invalid_argument("unknown strategy: " + name);
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::fully_diverse: return "fully_diverse";
        case Strategy::anchors_only: return "anchors_only";
        case Strategy::aca: return "aca";
    }
    return "fully_diverse";
}

std::pair<SurrogatePolicy, StrategyReport> run_strategy(const WorldEnv& env, Strategy strategy,
                                                        int n_total, const StrategyConfig& cfg,
                                                        std::uint64_t seed) {
    if (n_total < 1) throw std::invalid_argument("run_strategy: N >= 1 required");
    StrategyReport report;
    report.strategy = strategy;
    report.seed = seed;
    report.n_total = n_total;

    SurrogatePolicy policy;
    switch (strategy) {
        case Strategy::fully_diverse: {
            // Every demonstration at a distinct, non-repeated condition.
            const AnchorSet anchors =
                make_layout(env.space, LayoutTag::random_uniform, n_total, derive_seed(seed, 0xd1));
            policy = fit_surrogate(env.field, env.space, anchors,
                                   std::vector<int>(static_cast<std::size_t>(n_total), 1), n_total,
                                   env.noise, cfg.estimator, cfg.rule, derive_seed(seed, 0xd2));
            report.consumed = n_total;
            report.anchor_count = n_total;
            break;
        }
        case Strategy::anchors_only: {
            // Same layout and fit-stream derivation as stage 1, so paired runs
            // at one seed compare strategies on the same anchor set with a
            // shared observation prefix (common random numbers).
            const AnchorSet anchors =
                make_layout(env.space, cfg.layout, cfg.anchor_count, derive_seed(seed, 0x51a));
            policy = fit_surrogate(env.field, env.space, anchors,
                                   uniform_repeats(n_total, cfg.anchor_count), n_total, env.noise,
                                   cfg.estimator, cfg.rule, derive_seed(seed, 0x51b));
            report.consumed = n_total;
            report.anchor_count = cfg.anchor_count;
            break;
        }
        case Strategy::aca: {
            BudgetPlan plan = BudgetPlan::standard(n_total, cfg.anchor_count);
            plan.expansion_radius = cfg.expansion_radius_frac * env.space.width(0);
            report.plan = plan;
            const SurrogatePolicy base = run_stage1(env, plan, cfg.layout, seed);
            const MiningResult mined = run_mining(base, env, plan, seed, cfg.mining_on);
            policy = run_stage2(base, mined, env, plan, seed, cfg.residual_on);
            report.stage1_sup_error = field_error_sup(base, env.field, env.space).value;
            report.consumed = plan.n_anchor + plan.n_probe + plan.n_boundary;
            report.anchor_count = cfg.anchor_count;
            break;
        }
    }
    if (report.consumed != n_total) {
        throw std::logic_error("run_strategy: budget ledger violation");
    }

    report.sup_error = field_error_sup(policy, env.field, env.space).value;
    report.max_anchor_err = max_anchor_error(policy, env.field);
    report.fill_dist = fill_distance(policy.anchors, env.space);
    report.measured_c = measured_fill_constant(policy.anchors, env.space);
    report.bound_value = report.max_anchor_err + env.field.l_cert * report.fill_dist;
    if (cfg.evaluate_success) {
        report.regions = success_metrics(policy, env.field, env.space, RegionFamily::nested_default(),
                                         cfg.success, derive_seed(seed, 0x5e));
    }
    return {std::move(policy), std::move(report)};
}

nlohmann::json strategy_report_to_json(const StrategyReport& report) {
    nlohmann::json j;
    j["strategy"] = to_string(report.strategy);
    j["seed"] = report.seed;
    j["n_total"] = report.n_total;
    j["anchor_count"] = report.anchor_count;
    j["ledger"] = {{"consumed", report.consumed},
                   {"n_anchor", report.plan.n_anchor},
                   {"n_probe", report.plan.n_probe},
                   {"n_boundary", report.plan.n_boundary}};
    j["per_stage_errors"] = {{"stage1_sup_error", report.stage1_sup_error},
                             {"final_sup_error", report.sup_error}};
    j["sup_error"] = report.sup_error;
    j["max_anchor_error"] = report.max_anchor_err;
    j["fill_distance"] = report.fill_dist;
    j["measured_c"] = report.measured_c;
    j["bound_value"] = report.bound_value;
    j["region_successes"] = report.regions.successes;
    j["region_trials"] = report.regions.trials;
    j["region_rates"] = report.regions.rates;
    return j;
}

}  // namespace aca
