#include "doctest.h"

#include <cmath>

#include "aca/rng.hpp"
#include "aca/synthetic_field.hpp"

using namespace aca;

namespace {

SyntheticField manual_field(int d, int m) {
    SyntheticField f;
    f.d = d;
    f.m = m;
    f.state_coupling = Mat(m, m);
    f.drift.assign(static_cast<std::size_t>(m), 0.0);
    return f;
}

}  // namespace

TEST_CASE("amplitude rescaling pins the certified constant") {
    // Single term (2,0) x omega (3,0) rescaled to L = 1 becomes (1/3, 0).
    SyntheticField f = manual_field(2, 2);
    f.terms.push_back({{2.0, 0.0}, {3.0, 0.0}, 0.0});
    const double budget = norm2(f.terms[0].amp) * norm2(f.terms[0].freq);
    const double scale = 1.0 / budget;
    for (double& x : f.terms[0].amp) x *= scale;
    f.l_cert = 1.0;
    CHECK(f.terms[0].amp[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(norm2(f.terms[0].amp) * norm2(f.terms[0].freq) == doctest::Approx(1.0).epsilon(1e-12));

    // Sampled fields hit the target sum exactly (to float rounding).
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const SyntheticField g = sample_field(seed, 2, 2, 4, 1.7, 0.5);
        double sum = 0.0;
        for (const FieldTerm& t : g.terms) sum += norm2(t.amp) * norm2(t.freq);
        CHECK(sum == doctest::Approx(1.7).epsilon(1e-12));
        CHECK(g.l_cert == 1.7);
        CHECK(g.state_coupling.spectral_norm() == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("zero state-coupling target gives the zero matrix") {
    const SyntheticField f = sample_field(11, 2, 3, 2, 1.0, 0.0);
    for (double x : f.state_coupling.a) CHECK(x == 0.0);
    CHECK(f.lambda_cert == 0.0);
}

TEST_CASE("empirical Lipschitz ratio never exceeds the certificate") {
    for (std::uint64_t seed : {5ull, 6ull, 7ull}) {
        const SyntheticField f = sample_field(seed, 2, 2, 4, 1.3, 0.0);
        Rng rng(seed * 77 + 1);
        double worst = 0.0;
        for (int rep = 0; rep < 10000; ++rep) {
            const Vec p = {rng.u01(), rng.u01()};
            const Vec q = {rng.u01(), rng.u01()};
            const double dp = dist2(p, q);
            if (dp < 1e-12) continue;
            worst = std::max(worst, dist2(f.condition_part(p), f.condition_part(q)) / dp);
        }
        CHECK(worst <= f.l_cert * (1.0 + 1e-9));
    }
}

TEST_CASE("eval: canonical query, identity coupling, analytic Jacobian") {
    const SyntheticField f = sample_field(3, 2, 2, 3, 1.0, 0.8);
    const Vec p = {0.3, 0.6};
    const Vec zero_z = {0.0, 0.0};
    CHECK(f.eval(zero_z, p, 0.0) == f.condition_part(p));

    SyntheticField id = manual_field(2, 2);
    id.terms.push_back({{0.0, 0.0}, {1.0, 1.0}, 0.0});
    id.state_coupling = Mat::identity(2);
    const Vec z = {0.7, -0.2};
    CHECK(id.eval(z, p, 0.5) == z);

    CHECK_THROWS_AS(f.eval({1.0}, p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(f.eval(zero_z, {0.1}, 0.0), std::invalid_argument);

    // Central differences against the analytic Jacobian.
    Rng rng(44);
    const double step = 1e-5;
    for (int rep = 0; rep < 20; ++rep) {
        const Vec x = {rng.u01(), rng.u01()};
        const Mat jac = f.condition_jacobian(x);
        for (int a = 0; a < 2; ++a) {
            Vec hi = x, lo = x;
            hi[static_cast<std::size_t>(a)] += step;
            lo[static_cast<std::size_t>(a)] -= step;
            const Vec fh = f.condition_part(hi);
            const Vec fl = f.condition_part(lo);
            for (int r = 0; r < 2; ++r) {
                const double fd = (fh[static_cast<std::size_t>(r)] - fl[static_cast<std::size_t>(r)]) / (2.0 * step);
                CHECK(fd == doctest::Approx(jac.at(r, a)).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("linearity in the state argument") {
    const SyntheticField f = sample_field(9, 2, 3, 3, 1.0, 1.2);
    Rng rng(10);
    for (int rep = 0; rep < 50; ++rep) {
        Vec z1(3), z2(3);
        for (int r = 0; r < 3; ++r) {
            z1[static_cast<std::size_t>(r)] = rng.uniform(-2.0, 2.0);
            z2[static_cast<std::size_t>(r)] = rng.uniform(-2.0, 2.0);
        }
        const Vec p = {rng.u01(), rng.u01()};
        const Vec lhs = sub(f.eval(z1, p, 0.3), f.eval(z2, p, 0.3));
        const Vec rhs = f.state_coupling.apply(sub(z1, z2));
        for (int r = 0; r < 3; ++r) {
            CHECK(lhs[static_cast<std::size_t>(r)] ==
                  doctest::Approx(rhs[static_cast<std::size_t>(r)]).epsilon(1e-12));
        }
    }
}

TEST_CASE("observe: zero-noise identity, determinism, moments") {
    const SyntheticField f = sample_field(21, 2, 2, 3, 1.0, 0.5);
    const Vec p = {0.4, 0.9};
    const Vec z = {0.1, -0.3};

    SUBCASE("sigma = 0 reproduces the field value") {
        CHECK(observe(f, z, p, 0.7, NoiseModel::gaussian(0.0), 5ull) == f.eval(z, p, 0.7));
    }

    SUBCASE("identical seeds give identical streams") {
        Rng a(42), b(42);
        const NoiseModel noise = NoiseModel::pareto(1.5, 1.0);
        for (int i = 0; i < 100; ++i) {
            CHECK(observe(f, z, p, 0.1, noise, a) == observe(f, z, p, 0.1, noise, b));
        }
    }

    SUBCASE("gaussian unit variance") {
        Rng rng(77);
        const NoiseModel noise = NoiseModel::gaussian(1.0);
        double sum = 0.0, sum_sq = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const double e = noise.draw(rng);
            sum += e;
            sum_sq += e * e;
        }
        const double var = sum_sq / n - (sum / n) * (sum / n);
        CHECK(var > 0.98);
        CHECK(var < 1.02);
    }

    SUBCASE("symmetric pareto is mean-zero within 3 standard errors") {
        Rng rng(78);
        const NoiseModel noise = NoiseModel::pareto(1.5, 1.0);
        const int n = 100000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double e = noise.draw(rng);
            sum += e;
            sum_sq += e * e;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sum_sq / n - mean * mean) / n);
        CHECK(std::fabs(mean) <= 3.0 * se);
    }
}

TEST_CASE("moment proxies match the density") {
    SUBCASE("pareto") {
        const NoiseModel noise = NoiseModel::pareto(1.5, 1.0);
        const double q = noise.moment_order();
        CHECK(q == doctest::Approx(1.4));
        // Closed form: E|X|^q = alpha / (alpha - q) at unit scale.
        CHECK(std::pow(noise.moment_scale(), q) == doctest::Approx(1.5 / 0.1).epsilon(1e-9));
        // The q-th moment itself is too heavy for Monte Carlo; a lighter
        // fractional moment |X|^0.7 has finite variance and the same density:
        // E|X|^0.7 = alpha / (alpha - 0.7).
        Rng rng(90);
        double sum = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) sum += std::pow(std::fabs(noise.draw(rng)), 0.7);
        CHECK(sum / n == doctest::Approx(1.5 / 0.8).epsilon(0.05));
    }
    SUBCASE("student_t with nu > 2.1 has the exact second moment") {
        const NoiseModel noise = NoiseModel::student(5.0, 1.0);
        CHECK(noise.moment_order() == 2.0);
        CHECK(noise.moment_scale() == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-9));
    }
    SUBCASE("gaussian") {
        const NoiseModel noise = NoiseModel::gaussian(0.7);
        CHECK(noise.moment_order() == 2.0);
        CHECK(noise.moment_scale() == 0.7);
    }
}

TEST_CASE("piecewise fields: geometry and jump") {
    const ConditionSpace space = ConditionSpace::unit_box(2, 101);
    const SyntheticField base = sample_field(31, 2, 2, 3, 1.0, 0.5);

    CHECK_THROWS_AS(make_piecewise(base, space, 0.0, 1.0, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_piecewise(base, space, 1.0, 1.0, {1.0, 1.0}), std::invalid_argument);

    const PiecewiseField pw = make_piecewise(base, space, 0.25, 2.0, {1.0, 1.0});
    CHECK(pw.exceptional.lo[0] == doctest::Approx(0.5));
    CHECK(pw.exceptional.hi[0] == doctest::Approx(1.0));
    CHECK(pw.exceptional.volume() == doctest::Approx(0.25).epsilon(1e-12));

    // Jump magnitude zero leaves the field untouched.
    const PiecewiseField flat = make_piecewise(base, space, 0.25, 0.0, {1.0, 1.0});
    const Vec z = {0.0, 0.0};
    for (std::size_t i = 0; i < space.grid_size(); i += 7) {
        const Vec p = space.grid_point(i);
        CHECK(flat.eval(z, p, 0.0) == base.eval(z, p, 0.0));
    }

    // Constant jump of the requested magnitude inside the box.
    double sup_gap = 0.0, min_gap_inside = 1e300;
    for (std::size_t i = 0; i < space.grid_size(); ++i) {
        const Vec p = space.grid_point(i);
        const double gap = dist2(pw.eval(z, p, 0.0), base.eval(z, p, 0.0));
        sup_gap = std::max(sup_gap, gap);
        if (pw.exceptional.contains(p)) min_gap_inside = std::min(min_gap_inside, gap);
    }
    CHECK(sup_gap == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(min_gap_inside == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("field JSON round-trip is bit-exact") {
    const SyntheticField f = sample_field(55, 2, 3, 4, 1.1, 0.9);
    // Through the serialized text, not just the DOM.
    const SyntheticField back =
        field_from_json(nlohmann::json::parse(field_to_json(f).dump()));
    CHECK(back.d == f.d);
    CHECK(back.m == f.m);
    REQUIRE(back.terms.size() == f.terms.size());
    for (std::size_t k = 0; k < f.terms.size(); ++k) {
        CHECK(back.terms[k].amp == f.terms[k].amp);
        CHECK(back.terms[k].freq == f.terms[k].freq);
        CHECK(back.terms[k].phase == f.terms[k].phase);
    }
    CHECK(back.state_coupling.a == f.state_coupling.a);
    CHECK(back.drift == f.drift);
    CHECK(back.l_cert == f.l_cert);
    CHECK(back.lambda_cert == f.lambda_cert);

    const Vec p = {0.2, 0.8};
    const Vec z = {0.3, -0.1, 0.4};
    CHECK(back.eval(z, p, 0.6) == f.eval(z, p, 0.6));
}
