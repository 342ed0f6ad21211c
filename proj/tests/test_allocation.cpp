#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "aca/allocation.hpp"
#include "aca/rng.hpp"
#include "aca/synthetic_field.hpp"
#include "aca/stats.hpp"

using namespace aca;

namespace {

BoundParams unit_params(int dim) {
    BoundParams p;
    p.dim = dim;
    return p;
}

}  // namespace

TEST_CASE("error_bound closed form") {
    const BoundParams p = unit_params(2);
    const double v = error_bound(10.0, 100.0, p);
    CHECK(v == doctest::Approx(std::sqrt(0.1) + std::pow(10.0, -0.5)).epsilon(1e-12));
    CHECK(v == doctest::Approx(0.63246).epsilon(1e-4));

    // K = N reduces to the fully-diverse form C*sigma + L*c*N^(-1/d).
    CHECK(error_bound(100.0, 100.0, p) == doctest::Approx(1.0 + 0.1).epsilon(1e-12));

    CHECK_THROWS_AS(error_bound(101.0, 100.0, p), std::invalid_argument);
    CHECK_THROWS_AS(error_bound(0.5, 100.0, p), std::invalid_argument);
}

TEST_CASE("optimal_k closed form and grid argmin oracle") {
    const BoundParams p2 = unit_params(2);
    const OptimalK k2 = optimal_k(100.0, p2);
    CHECK(k2.continuous == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(k2.rounded == 10);

    const BoundParams p1 = unit_params(1);
    const OptimalK k1 = optimal_k(100.0, p1);
    CHECK(k1.continuous == doctest::Approx(std::pow(20.0, 2.0 / 3.0)).epsilon(1e-12));
    CHECK(k1.continuous == doctest::Approx(7.368).epsilon(1e-3));

    // Continuous optimum against a dense grid search.
    Rng rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        BoundParams p;
        p.estimation_const = rng.uniform(0.5, 2.0);
        p.sigma = rng.uniform(0.1, 1.5);
        p.lipschitz = rng.uniform(0.5, 2.0);
        p.fill_constant = rng.uniform(0.5, 1.5);
        p.dim = 1 + static_cast<int>(rng.next_u64() % 3u);
        const double n = rng.uniform(50.0, 5000.0);
        const OptimalK k = optimal_k(n, p);
        double best_k = 1.0, best = 1e300;
        for (int i = 0; i < 10000; ++i) {
            const double cand = std::min(n, 1.0 + (n - 1.0) * (i / 9999.0));
            const double v = error_bound(cand, n, p);
            if (v < best) {
                best = v;
                best_k = cand;
            }
        }
        if (k.continuous >= 1.0 && k.continuous <= n) {
            CHECK(k.continuous == doctest::Approx(best_k).epsilon(0.01));
        }
        // Integer-rounded optimum beats every integer K on the grid.
        const double at_rounded = error_bound(k.rounded, n, p);
        for (int cand = 1; cand <= static_cast<int>(n); cand += 7) {
            CHECK(at_rounded <= error_bound(cand, n, p) + 1e-12);
        }
    }
}

TEST_CASE("optimal_error value, rate in N, and diverse comparison") {
    const BoundParams p = unit_params(2);
    CHECK(optimal_error(100.0, p) == doctest::Approx(0.63246).epsilon(1e-4));
    // Both terms equal at the optimum for d = 2.
    const double density = std::sqrt(10.0 / 100.0);
    CHECK(optimal_error(100.0, p) == doctest::Approx(2.0 * density).epsilon(1e-12));

    // Doubling N contracts the optimum by 2^(-1/(d+2)).
    const double ratio = optimal_error(200.0, p) / optimal_error(100.0, p);
    CHECK(ratio == doctest::Approx(std::pow(2.0, -0.25)).epsilon(0.01));

    for (double n = 4.0; n <= 4096.0; n *= 2.0) {
        const double diverse = 1.0 + std::pow(n, -0.5);
        CHECK(optimal_error(n, p) <= diverse + 1e-12);
    }
}

TEST_CASE("interior optimum and stationarity") {
    Rng rng(67);
    for (int rep = 0; rep < 20; ++rep) {
        BoundParams p;
        p.sigma = rng.uniform(0.2, 1.0);
        p.lipschitz = rng.uniform(0.5, 2.0);
        p.fill_constant = rng.uniform(0.5, 1.5);
        p.dim = 1 + static_cast<int>(rng.next_u64() % 3u);
        const double n = 4000.0;
        const OptimalK k = optimal_k(n, p);
        if (k.continuous < 2.0 || k.continuous > n - 1.0) continue;
        const double at_opt = error_bound(k.continuous, n, p);
        CHECK(at_opt < error_bound(1.0, n, p));
        CHECK(at_opt < error_bound(n, n, p));
        // Central-difference stationarity at the continuous optimum.
        const double h = 1e-6 * k.continuous;
        const double deriv =
            (error_bound(k.continuous + h, n, p) - error_bound(k.continuous - h, n, p)) / (2.0 * h);
        CHECK(std::fabs(deriv) <= 1e-9);
    }
}

TEST_CASE("K* scaling exponent is d/(d+2) exactly") {
    for (int d : {1, 2, 3}) {
        const BoundParams p = unit_params(d);
        const double slope = (std::log(optimal_k(1.0e7, p).continuous) -
                              std::log(optimal_k(1.0e3, p).continuous)) /
                             (std::log(1.0e7) - std::log(1.0e3));
        CHECK(std::fabs(slope - static_cast<double>(d) / (d + 2)) <= 1e-9);
    }
}

TEST_CASE("bound is monotone in sigma and L") {
    const BoundParams base = unit_params(2);
    for (double k : {1.0, 7.0, 40.0}) {
        BoundParams hi = base;
        hi.sigma = 2.0;
        CHECK(error_bound(k, 100.0, hi) > error_bound(k, 100.0, base));
        hi = base;
        hi.lipschitz = 2.0;
        CHECK(error_bound(k, 100.0, hi) > error_bound(k, 100.0, base));
    }
}

TEST_CASE("proportional allocation: worked example and equalization") {
    const ProportionalAllocation alloc = proportional_allocation({1.0, 1.0, std::sqrt(2.0)}, 100);
    CHECK(alloc.counts == std::vector<int>{25, 25, 50});
    CHECK(alloc.worst_anchor_bound == doctest::Approx(0.2).epsilon(1e-12));
    CHECK_FALSE(alloc.uniform_fallback);

    // Equal sigmas give the uniform split.
    CHECK(proportional_allocation({0.3, 0.3, 0.3, 0.3}, 100).counts == std::vector<int>{25, 25, 25, 25});

    // sigma_i / sqrt(n_i*) is constant across anchors before rounding.
    Rng rng(91);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> sigmas;
        for (int i = 0; i < 5; ++i) sigmas.push_back(rng.uniform(0.1, 2.0));
        const ProportionalAllocation a = proportional_allocation(sigmas, 200);
        const double ref = sigmas[0] / std::sqrt(a.real_counts[0]);
        for (std::size_t i = 1; i < sigmas.size(); ++i) {
            CHECK(sigmas[i] / std::sqrt(a.real_counts[i]) == doctest::Approx(ref).epsilon(1e-9));
        }
        int total = 0;
        for (int c : a.counts) {
            CHECK(c >= 1);
            total += c;
        }
        CHECK(total == 200);
    }

    const ProportionalAllocation fallback = proportional_allocation({0.0, 0.0}, 10);
    CHECK(fallback.uniform_fallback);
    CHECK(fallback.counts == std::vector<int>{5, 5});

    CHECK_THROWS_AS(proportional_allocation({1.0, 1.0}, 1), std::invalid_argument);
}

TEST_CASE("proportional beats uniform on Monte Carlo worst-anchor error") {
    // Lighter version of the acceptance sweep: 100 sigma vectors.
    const int vectors = 100, inner = 300, k = 5, n = 200;
    int wins = 0;
    for (int v = 0; v < vectors; ++v) {
        Rng vec_rng(derive_seed(313, static_cast<std::uint64_t>(v)));
        std::vector<double> sigmas;
        for (int i = 0; i < k; ++i) sigmas.push_back(std::exp(vec_rng.uniform(std::log(0.2), std::log(2.0))));
        const std::vector<int> prop = proportional_allocation(sigmas, n).counts;
        const std::vector<int> unif = uniform_repeats(n, k);
        double prop_err = 0.0, unif_err = 0.0;
        for (int t = 0; t < inner; ++t) {
            double worst_p = 0.0, worst_u = 0.0;
            for (int i = 0; i < k; ++i) {
                Rng rng(derive_seed(7177, static_cast<std::uint64_t>(v * 1000 + t), static_cast<std::uint64_t>(i)));
                double sum = 0.0;
                int j = 0;
                for (; j < prop[static_cast<std::size_t>(i)]; ++j) sum += sigmas[static_cast<std::size_t>(i)] * rng.gaussian();
                worst_p = std::max(worst_p, std::fabs(sum / prop[static_cast<std::size_t>(i)]));
                // Continue the same stream so equal counts draw equal values.
                Rng rng2(derive_seed(7177, static_cast<std::uint64_t>(v * 1000 + t), static_cast<std::uint64_t>(i)));
                double sum2 = 0.0;
                for (int jj = 0; jj < unif[static_cast<std::size_t>(i)]; ++jj) sum2 += sigmas[static_cast<std::size_t>(i)] * rng2.gaussian();
                worst_u = std::max(worst_u, std::fabs(sum2 / unif[static_cast<std::size_t>(i)]));
            }
            prop_err += worst_p;
            unif_err += worst_u;
        }
        if (prop_err <= unif_err) ++wins;
    }
    CHECK(static_cast<double>(wins) / vectors >= 0.9);
}

TEST_CASE("regional split: symmetry and the variance-weighted example") {
    CHECK(regional_split(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2, 100) == std::pair<int, int>{50, 50});
    // sigma_bd^2 = 2 sigma_core^2 tips the ratio to 1:2.
    CHECK(regional_split(1.0, std::sqrt(2.0), 1.0, 1.0, 1.0, 1.0, 2, 90) == std::pair<int, int>{30, 60});
    CHECK_THROWS_AS(regional_split(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2, 1), std::invalid_argument);
}

TEST_CASE("regional split balances the optimized regional errors") {
    Rng rng(271828);
    int within = 0;
    const int draws = 100;
    for (int rep = 0; rep < draws; ++rep) {
        const double s_core = rng.uniform(0.3, 1.5), s_bd = rng.uniform(0.3, 1.5);
        const double c_core = rng.uniform(0.5, 1.5), c_bd = rng.uniform(0.5, 1.5);
        const double v_core = rng.uniform(0.3, 1.0), v_bd = rng.uniform(0.3, 1.0);
        const int dim = 2;
        const auto [n_core, n_bd] = regional_split(s_core, s_bd, c_core, c_bd, v_core, v_bd, dim, 2000);

        BoundParams core;
        core.sigma = s_core;
        core.fill_constant = c_core * std::pow(v_core, 1.0 / dim);
        core.dim = dim;
        BoundParams bd;
        bd.sigma = s_bd;
        bd.fill_constant = c_bd * std::pow(v_bd, 1.0 / dim);
        bd.dim = dim;
        const double e_core = optimal_error(n_core, core);
        const double e_bd = optimal_error(n_bd, bd);
        const double ratio = e_core / e_bd;
        if (ratio >= 0.5 && ratio <= 2.0) ++within;
    }
    CHECK(within == draws);
}

TEST_CASE("beta bound: beta=1 equivalence is exact") {
    Rng rng(99);
    for (int rep = 0; rep < 50; ++rep) {
        BoundParams p;
        p.estimation_const = rng.uniform(0.5, 2.0);
        p.sigma = rng.uniform(0.1, 1.0);
        p.lipschitz = rng.uniform(0.5, 2.0);
        p.fill_constant = rng.uniform(0.5, 1.5);
        p.dim = 1 + static_cast<int>(rng.next_u64() % 3u);
        const double n = rng.uniform(10.0, 1000.0);
        const double k = rng.uniform(1.0, n);
        const double via_beta = beta_bound(k, n, p.estimation_const * p.sigma,
                                           p.lipschitz * p.fill_constant, p.dim, 1.0);
        CHECK(via_beta == error_bound(k, n, p));  // bit-exact

        const double kstar_beta =
            beta_optimal_k(n, p.estimation_const * p.sigma, p.lipschitz * p.fill_constant, p.dim, 1.0);
        CHECK(kstar_beta == doctest::Approx(optimal_k(n, p).continuous).epsilon(1e-12));
    }
}

TEST_CASE("beta bound: second-order rate and K* monotone in beta") {
    // For beta = 2, d = 2 the optimal bound scales as N^(-1/3).
    std::vector<double> log_n, log_e;
    for (double n = 100.0; n <= 100000.0; n *= std::sqrt(10.0)) {
        const double kstar = std::clamp(beta_optimal_k(n, 1.0, 1.0, 2, 2.0), 1.0, n);
        log_n.push_back(std::log(n));
        log_e.push_back(std::log(beta_bound(kstar, n, 1.0, 1.0, 2, 2.0)));
    }
    const LinearFit fit = fit_line(log_n, log_e);
    CHECK(std::fabs(fit.slope + 1.0 / 3.0) <= 0.01);

    for (double beta = 0.5; beta <= 3.0; beta += 0.25) {
        CHECK(beta_optimal_k(1000.0, 1.0, 1.0, 2, beta + 0.25) <
              beta_optimal_k(1000.0, 1.0, 1.0, 2, beta));
    }
}

TEST_CASE("heavy-tail mean bound: worked values and Monte Carlo domination") {
    CHECK(heavy_tail_mean_bound(2.0, 1.0, 100) == doctest::Approx(std::sqrt(2.0) * 0.1).epsilon(1e-12));
    CHECK(heavy_tail_mean_bound(2.0, 1.0, 100) == doctest::Approx(0.14142).epsilon(1e-4));
    CHECK(heavy_tail_mean_bound(1.5, 1.0, 1000) ==
          doctest::Approx(std::pow(2.0, 2.0 / 3.0) * std::pow(1000.0, -1.0 / 3.0)).epsilon(1e-12));
    CHECK(heavy_tail_mean_bound(1.5, 1.0, 1000) == doctest::Approx(0.15874).epsilon(1e-4));
    CHECK_THROWS_AS(heavy_tail_mean_bound(1.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(heavy_tail_mean_bound(2.5, 1.0, 10), std::invalid_argument);

    // Pareto draws with the matched analytic (q, sigma_q) stay below the bound.
    const NoiseModel noise = NoiseModel::pareto(1.5, 1.0);
    const double q = noise.moment_order();
    const double sigma_q = noise.moment_scale();
    for (int n : {10, 100, 1000}) {
        Rng rng(derive_seed(747, static_cast<std::uint64_t>(n)));
        double total = 0.0;
        const int trials = 2000;
        for (int t = 0; t < trials; ++t) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) sum += noise.draw(rng);
            total += std::fabs(sum / n);
        }
        CHECK(total / trials <= heavy_tail_mean_bound(q, sigma_q, n));
    }
}

TEST_CASE("largest remainder rounding preserves totals and floors") {
    CHECK(uniform_repeats(80, 6) == std::vector<int>{14, 14, 13, 13, 13, 13});
    CHECK(uniform_repeats(100, 4) == std::vector<int>{25, 25, 25, 25});
    CHECK_THROWS_AS(uniform_repeats(3, 4), std::invalid_argument);

    Rng rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        const int cells = 1 + static_cast<int>(rng.next_u64() % 8u);
        const int total = cells + static_cast<int>(rng.next_u64() % 200u);
        std::vector<double> targets;
        for (int i = 0; i < cells; ++i) targets.push_back(rng.u01());
        const std::vector<int> counts = largest_remainder_round(targets, total, 1);
        int sum = 0;
        for (int c : counts) {
            CHECK(c >= 1);
            sum += c;
        }
        CHECK(sum == total);
    }
}

TEST_CASE("smallest interior budget is reported, not asserted") {
    const BoundParams p = unit_params(2);
    const int n0 = smallest_interior_budget(p);
    REQUIRE(n0 > 0);
    // At the reported budget the interior-optimum property holds...
    const OptimalK k = optimal_k(static_cast<double>(n0), p);
    CHECK(k.continuous >= 2.0);
    CHECK(error_bound(k.continuous, n0, p) < error_bound(1.0, n0, p));
    CHECK(error_bound(k.continuous, n0, p) < error_bound(n0, n0, p));
}
