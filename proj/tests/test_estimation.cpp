#include "doctest.h"

#include <cmath>

#include "aca/allocation.hpp"
#include "aca/estimation.hpp"
#include "aca/rng.hpp"
#include "aca/stats.hpp"

using namespace aca;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct TestWorld {
    SyntheticField field;
    ConditionSpace space;
};

TestWorld make_test_world(std::uint64_t seed, int resolution = 101) {
    return {sample_field(seed, 2, 2, 3, 1.0, 0.5), ConditionSpace::unit_box(2, resolution)};
}

}  // namespace

TEST_CASE("anchor_mean basics") {
    CHECK(anchor_mean({{1.0, 0.0}, {0.0, 1.0}}) == Vec{0.5, 0.5});
    CHECK(anchor_mean({{3.0, -2.0}}) == Vec{3.0, -2.0});
    CHECK_THROWS_AS(anchor_mean({}), std::invalid_argument);
}

TEST_CASE("anchor_mean error tracks the folded-normal rate") {
    // |mean error| for n gaussian draws has expectation sigma*sqrt(2/pi)/sqrt(n).
    Rng rng(17);
    const int n = 100, trials = 10000;
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += rng.gaussian();
        total += std::fabs(sum / n);
    }
    const double expected = std::sqrt(2.0 / kPi) / std::sqrt(static_cast<double>(n));
    const double ratio = (total / trials) / expected;
    CHECK(ratio > 0.9);
    CHECK(ratio < 1.1);
}

TEST_CASE("median_of_means: degenerate block counts and outlier rejection") {
    const std::vector<Vec> obs = {{0.0}, {0.0}, {0.0}, {100.0}, {0.0}, {0.0}};
    CHECK(median_of_means(obs, 1) == anchor_mean(obs));
    CHECK(median_of_means(obs, 3) == Vec{0.0});  // block means (0, 50, 0)
    CHECK_THROWS_AS(median_of_means({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(median_of_means(obs, 7), std::invalid_argument);
    CHECK_THROWS_AS(median_of_means(obs, 0), std::invalid_argument);

    const std::vector<Vec> same(9, Vec{2.5, -1.0});
    CHECK(median_of_means(same, 4) == anchor_mean(same));
}

TEST_CASE("median_of_means beats the sample mean under alpha=1.5 tails") {
    const NoiseModel noise = NoiseModel::pareto(1.5, 1.0);
    double mae_mean = 0.0, mae_mom = 0.0;
    const int trials = 1000, n = 300;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(1234, static_cast<std::uint64_t>(t)));
        std::vector<Vec> obs;
        obs.reserve(n);
        for (int i = 0; i < n; ++i) obs.push_back({noise.draw(rng)});
        mae_mean += std::fabs(anchor_mean(obs)[0]);
        mae_mom += std::fabs(median_of_means(obs, 9)[0]);
    }
    CHECK(mae_mom < mae_mean);
}

TEST_CASE("concentration radius closed form") {
    CHECK(concentration_radius(1.0, 4, 1, 1, 0.5) ==
          doctest::Approx(std::sqrt(2.0 * std::log(4.0) / 4.0)).epsilon(1e-12));
    CHECK(concentration_radius(1.0, 4, 1, 1, 0.5) == doctest::Approx(0.83255).epsilon(1e-4));
    // Doubling n divides by sqrt(2); quadrupling halves.
    const double r1 = concentration_radius(0.7, 16, 2, 8, 0.1);
    CHECK(r1 / concentration_radius(0.7, 32, 2, 8, 0.1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r1 / concentration_radius(0.7, 64, 2, 8, 0.1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(concentration_radius(1.0, 4, 1, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(concentration_radius(1.0, 4, 1, 1, 1.0), std::invalid_argument);
}

TEST_CASE("concentration radius covers all anchors at the stated level") {
    const double delta = 0.1;
    const int k = 8, n = 16, trials = 500;
    const double radius = concentration_radius(1.0, n, 1, k, delta);
    int covered = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(888, static_cast<std::uint64_t>(t)));
        bool all_in = true;
        for (int i = 0; i < k; ++i) {
            double sum = 0.0;
            for (int j = 0; j < n; ++j) sum += rng.gaussian();
            if (std::fabs(sum / n) > radius) all_in = false;
        }
        covered += all_in ? 1 : 0;
    }
    CHECK(static_cast<double>(covered) / trials >= 1.0 - delta);
}

TEST_CASE("fit_surrogate: zero noise is exact, seeds reproduce bit-identically") {
    const TestWorld world = make_test_world(3);
    const AnchorSet anchors = make_layout(world.space, LayoutTag::low_discrepancy, 5, 2);
    const std::vector<int> repeats = {2, 2, 2, 2, 2};

    const SurrogatePolicy policy =
        fit_surrogate(world.field, world.space, anchors, repeats, 10, NoiseModel::gaussian(0.0),
                      EstimatorTag::sample_mean, AssignmentRule::nearest, 7);
    for (int i = 0; i < anchors.size(); ++i) {
        CHECK(policy.estimates[static_cast<std::size_t>(i)].estimate ==
              world.field.condition_part(anchors.points[static_cast<std::size_t>(i)]));
    }
    // Exactness extends to every (z, t) through the shared structure.
    const Vec z = {0.4, -0.8};
    for (int i = 0; i < anchors.size(); ++i) {
        const Vec& p = anchors.points[static_cast<std::size_t>(i)];
        CHECK(policy.predict(z, p, 0.7) == world.field.eval(z, p, 0.7));
    }

    const SurrogatePolicy again =
        fit_surrogate(world.field, world.space, anchors, repeats, 10, NoiseModel::gaussian(0.0),
                      EstimatorTag::sample_mean, AssignmentRule::nearest, 7);
    for (int i = 0; i < anchors.size(); ++i) {
        CHECK(again.estimates[static_cast<std::size_t>(i)].estimate ==
              policy.estimates[static_cast<std::size_t>(i)].estimate);
    }

    CHECK_THROWS_AS(fit_surrogate(world.field, world.space, anchors, repeats, 11,
                                  NoiseModel::gaussian(0.0), EstimatorTag::sample_mean,
                                  AssignmentRule::nearest, 7),
                    std::invalid_argument);
}

TEST_CASE("fit_surrogate: large repeat counts wash the noise out") {
    const TestWorld world = make_test_world(4);
    const AnchorSet anchors = make_layout(world.space, LayoutTag::low_discrepancy, 4, 9);
    const std::vector<int> repeats(4, 10000);
    const SurrogatePolicy policy =
        fit_surrogate(world.field, world.space, anchors, repeats, 40000, NoiseModel::gaussian(1.0),
                      EstimatorTag::sample_mean, AssignmentRule::nearest, 11);
    CHECK(max_anchor_error(policy, world.field) <= 0.05);
}

TEST_CASE("predict: anchor hit, single-anchor kernel, Voronoi cells") {
    const TestWorld world = make_test_world(5);
    const AnchorSet anchors = make_layout(world.space, LayoutTag::low_discrepancy, 6, 3);
    const SurrogatePolicy nearest =
        fit_surrogate(world.field, world.space, anchors, std::vector<int>(6, 3), 18,
                      NoiseModel::gaussian(0.3), EstimatorTag::sample_mean, AssignmentRule::nearest, 5);

    SUBCASE("p exactly at an anchor uses that anchor's estimate") {
        for (int i = 0; i < anchors.size(); ++i) {
            const Vec at = nearest.condition_estimate(anchors.points[static_cast<std::size_t>(i)]);
            CHECK(at == nearest.estimates[static_cast<std::size_t>(i)].estimate);
        }
    }

    SUBCASE("kernel with one anchor equals nearest") {
        AnchorSet one;
        one.points = {{0.4, 0.6}};
        const SurrogatePolicy kn =
            fit_surrogate(world.field, world.space, one, {4}, 4, NoiseModel::gaussian(0.2),
                          EstimatorTag::sample_mean, AssignmentRule::kernel, 6);
        const SurrogatePolicy nn =
            fit_surrogate(world.field, world.space, one, {4}, 4, NoiseModel::gaussian(0.2),
                          EstimatorTag::sample_mean, AssignmentRule::nearest, 6);
        Rng rng(12);
        for (int rep = 0; rep < 50; ++rep) {
            const Vec p = {rng.u01(), rng.u01()};
            const Vec a = kn.condition_estimate(p);
            const Vec b = nn.condition_estimate(p);
            CHECK(dist2(a, b) <= 1e-12);
        }
    }

    SUBCASE("nearest rule is constant on Voronoi cells") {
        const ConditionSpace grid = ConditionSpace::unit_box(2, 101);
        for (std::size_t flat = 0; flat < grid.grid_size(); ++flat) {
            const Vec p = grid.grid_point(flat);
            int label = 0;
            double best = 1e300;
            for (int i = 0; i < anchors.size(); ++i) {
                const double ds = dist2(p, anchors.points[static_cast<std::size_t>(i)]);
                if (ds < best) {
                    best = ds;
                    label = i;
                }
            }
            CHECK(nearest.condition_estimate(p) ==
                  nearest.estimates[static_cast<std::size_t>(label)].estimate);
        }
    }
}

TEST_CASE("field_error_sup: exactness, single-anchor bound, refinement oracle") {
    const TestWorld world = make_test_world(6, 201);

    SUBCASE("exact policy has zero sup error") {
        const AnchorSet anchors = make_layout(world.space, LayoutTag::low_discrepancy, 4, 8);
        const SurrogatePolicy policy =
            fit_surrogate(world.field, world.space, anchors, std::vector<int>(4, 1), 4,
                          NoiseModel::gaussian(0.0), EstimatorTag::sample_mean,
                          AssignmentRule::nearest, 3);
        // Not literally zero: coverage error away from anchors. At anchors:
        CHECK(max_anchor_error(policy, world.field) == 0.0);
    }

    SUBCASE("single anchor at the center obeys L*h") {
        AnchorSet center;
        center.points = {{0.5, 0.5}};
        const SurrogatePolicy policy =
            fit_surrogate(world.field, world.space, center, {1}, 1, NoiseModel::gaussian(0.0),
                          EstimatorTag::sample_mean, AssignmentRule::nearest, 4);
        const SupError sup = field_error_sup(policy, world.field, world.space);
        CHECK(sup.value <= world.field.l_cert * std::sqrt(0.5) + 1e-9);
    }

    SUBCASE("coarse-grid sup is within 2% of a 4x refinement") {
        const AnchorSet anchors = make_layout(world.space, LayoutTag::low_discrepancy, 5, 21);
        const SurrogatePolicy policy =
            fit_surrogate(world.field, world.space, anchors, std::vector<int>(5, 2), 10,
                          NoiseModel::gaussian(0.2), EstimatorTag::sample_mean,
                          AssignmentRule::nearest, 9);
        const ConditionSpace fine = ConditionSpace::unit_box(2, 801);
        const double coarse = field_error_sup(policy, world.field, world.space).value;
        const double refined = field_error_sup(policy, world.field, fine).value;
        CHECK(coarse == doctest::Approx(refined).epsilon(0.02));
    }
}

TEST_CASE("decomposition bound holds on every seeded world") {
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t seed = derive_seed(271, static_cast<std::uint64_t>(trial));
        const TestWorld world = make_test_world(seed);
        Rng rng(seed);
        const int k = 1 + static_cast<int>(rng.next_u64() % 12u);
        const int reps = 1 + static_cast<int>(rng.next_u64() % 5u);
        const AnchorSet anchors = make_layout(world.space, LayoutTag::low_discrepancy, k, seed);
        const SurrogatePolicy policy = fit_surrogate(
            world.field, world.space, anchors, std::vector<int>(static_cast<std::size_t>(k), reps),
            k * reps, NoiseModel::gaussian(0.4), EstimatorTag::sample_mean, AssignmentRule::nearest,
            seed + 1);
        const double sup = field_error_sup(policy, world.field, world.space).value;
        const double bound = max_anchor_error(policy, world.field) +
                             world.field.l_cert * fill_distance(anchors, world.space);
        CHECK(sup <= bound + 1e-9);
    }
}

TEST_CASE("stable-interpolator bound holds for the kernel rule") {
    for (int trial = 0; trial < 10; ++trial) {
        const std::uint64_t seed = derive_seed(555, static_cast<std::uint64_t>(trial));
        const TestWorld world = make_test_world(seed, 81);
        const int k = 3 + static_cast<int>(trial % 5);
        const AnchorSet anchors = make_layout(world.space, LayoutTag::low_discrepancy, k, seed);
        const SurrogatePolicy policy = fit_surrogate(
            world.field, world.space, anchors, std::vector<int>(static_cast<std::size_t>(k), 3),
            3 * k, NoiseModel::gaussian(0.3), EstimatorTag::sample_mean, AssignmentRule::kernel,
            seed + 2);
        const double sup = field_error_sup(policy, world.field, world.space).value;
        const double h = fill_distance(anchors, world.space);
        const double bound = max_anchor_error(policy, world.field) +
                             (world.field.l_cert + policy.l_hat) * h;
        // Grid slack: l_hat is sampled on grid edges, so allow one cell.
        const double slack = (world.field.l_cert + policy.l_hat) * world.space.grid_spacing(0);
        CHECK(sup <= bound + slack);
    }
}

TEST_CASE("policies serialize with their estimates and structure") {
    const TestWorld world = make_test_world(91);
    const AnchorSet anchors = make_layout(world.space, LayoutTag::low_discrepancy, 3, 4);
    const SurrogatePolicy policy =
        fit_surrogate(world.field, world.space, anchors, {2, 2, 2}, 6, NoiseModel::gaussian(0.1),
                      EstimatorTag::sample_mean, AssignmentRule::nearest, 8);
    const nlohmann::json j = policy_to_json(policy);
    CHECK(j.at("rule").get<std::string>() == "nearest");
    CHECK(j.at("anchors").size() == 3);
    CHECK(j.at("estimates").size() == 3);
    CHECK(j.at("estimates")[0].at("repeats").get<int>() == 2);
    CHECK(j.at("drift").get<std::vector<double>>() == policy.drift);
}

TEST_CASE("max anchor error shrinks like one over sqrt(n)") {
    const std::vector<int> n_values = {4, 16, 64, 256};
    std::vector<double> log_n, log_err;
    for (int n : n_values) {
        double total = 0.0;
        const int trials = 120;
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t seed = derive_seed(931, static_cast<std::uint64_t>(n * 1000 + t));
            const TestWorld world = make_test_world(seed, 41);
            const AnchorSet anchors = make_layout(world.space, LayoutTag::low_discrepancy, 6, seed);
            const SurrogatePolicy policy = fit_surrogate(
                world.field, world.space, anchors, std::vector<int>(6, n), 6 * n,
                NoiseModel::gaussian(1.0), EstimatorTag::sample_mean, AssignmentRule::nearest,
                seed + 3);
            total += max_anchor_error(policy, world.field);
        }
        log_n.push_back(std::log(static_cast<double>(n)));
        log_err.push_back(std::log(total / trials));
    }
    const LinearFit fit = fit_line(log_n, log_err);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.2));
    CHECK(std::fabs(fit.slope + 0.5) <= 0.1);
}
