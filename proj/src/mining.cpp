#include "aca/mining.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "aca/report.hpp"

#include "aca/rollout.hpp"

namespace aca {

ProbeDemo make_probe(const SyntheticField& field, const Vec& p, const Vec& z0, double horizon,
                     int steps, double demo_noise, std::uint64_t seed) {
    if (demo_noise < 0.0) throw std::invalid_argument("make_probe: demo noise >= 0 required");
    ProbeDemo demo;
    demo.condition = p;
    demo.horizon = horizon;
    const Trajectory traj = integrate(true_field_fn(field, p), z0, horizon, steps);
    demo.states = traj.states;
    demo.actions.reserve(static_cast<std::size_t>(steps));
    Rng rng(derive_seed(seed, 0xde30));
    const double dt = traj.dt();
    for (int k = 0; k < steps; ++k) {
        Vec a = field.eval(demo.states[static_cast<std::size_t>(k)], p, dt * k);
        if (demo_noise > 0.0) {
            for (double& v : a) v += demo_noise * rng.gaussian();
        }
        demo.actions.push_back(std::move(a));
    }
    return demo;
}

double teacher_forced_deviation(const SurrogatePolicy& policy, const ProbeDemo& demo) {
    if (demo.actions.empty()) throw std::invalid_argument("teacher_forced_deviation: empty demo");
    if (policy.out_dim() != static_cast<int>(demo.actions.front().size())) {
        throw std::invalid_argument("teacher_forced_deviation: action dimension mismatch");
    }
    const double dt = demo.horizon / demo.steps();
    Vec pred(static_cast<std::size_t>(policy.out_dim()), 0.0);
    double total = 0.0;
    for (int k = 0; k < demo.steps(); ++k) {
        policy.predict_into(demo.states[static_cast<std::size_t>(k)].data(), demo.condition,
                            dt * k, pred.data());
        const Vec& a = demo.actions[static_cast<std::size_t>(k)];
        for (std::size_t r = 0; r < a.size(); ++r) total += std::fabs(pred[r] - a[r]);
    }
    return total / demo.steps();
}

std::vector<int> select_boundary(const std::vector<double>& scores, int k) {
    if (k < 0 || k > static_cast<int>(scores.size())) {
        throw std::invalid_argument("select_boundary: k must be within the candidate count");
    }
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
    });
    order.resize(static_cast<std::size_t>(k));
    return order;
}

void write_deviation_csv(std::ostream& out, const DeviationReport& report, bool header) {
    if (header) {
        out << "candidate";
        const std::size_t d = report.candidates.empty() ? 0 : report.candidates.front().size();
        for (std::size_t a = 0; a < d; ++a) out << ",p" << a;
        out << ",score,selected\n";
    }
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
        out << i;
        for (double x : report.candidates[i]) out << ',' << fmt_double(x);
        const bool selected = std::find(report.selected.begin(), report.selected.end(),
                                        static_cast<int>(i)) != report.selected.end();
        out << ',' << fmt_double(report.scores[i]) << ',' << (selected ? 1 : 0) << "\n";
    }
}

std::vector<Vec> expand_local(const Vec& center, double radius, int count,
                              const ConditionSpace& space, std::uint64_t seed) {
    if (!(radius > 0.0) || count < 1) {
        throw std::invalid_argument("expand_local: radius > 0 and count >= 1 required");
    }
    Rng rng(derive_seed(seed, 0xe4a1));
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Vec p = center;
        for (double& x : p) x += rng.uniform(-radius, radius);
        out.push_back(space.clip(std::move(p)));
    }
    return out;
}

}  // namespace aca
