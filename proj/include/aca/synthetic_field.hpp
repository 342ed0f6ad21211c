#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aca/condition_space.hpp"
#include "aca/linalg.hpp"
#include "aca/rng.hpp"

#include "json.hpp"

namespace aca {

// One Fourier term of the condition part: amp * sin(<freq, p> + phase).
struct FieldTerm {
    Vec amp;    // R^m
    Vec freq;   // R^d
    double phase = 0.0;
};

// Ground truth f(z, p, t) = g(p) + M z + v t with
//   g(p) = sum_k amp_k * sin(<freq_k, p> + phase_k).
// The gradient bound ||grad g|| <= sum_k |amp_k||freq_k| makes the certified
// Lipschitz constant in p a theorem, not an estimate; lambda_cert is the
// spectral norm of M.
struct SyntheticField {
    int d = 0;
    int m = 0;
    std::vector<FieldTerm> terms;
    Mat state_coupling;  // m x m
    Vec drift;           // R^m
    double l_cert = 0.0;
    double lambda_cert = 0.0;

    Vec condition_part(const Vec& p) const;                  // g(p)
    void condition_part_into(const Vec& p, double* out) const;
    Mat condition_jacobian(const Vec& p) const;              // dg/dp, m x d
    Vec eval(const Vec& z, const Vec& p, double t) const;
    void eval_into(const double* z, const Vec& p, double t, double* out) const;
};

SyntheticField sample_field(std::uint64_t seed, int d, int m, int num_terms,
                            double l_target, double lambda_target);

enum class NoiseKind { gaussian, student_t, symmetric_pareto };

struct NoiseModel {
    NoiseKind kind = NoiseKind::gaussian;
    double sigma = 0.0;   // gaussian std (sigma = 0 is the noiseless limit)
    double nu = 3.0;      // student_t degrees of freedom, > 1
    double alpha = 1.5;   // pareto tail index, > 1
    double scale = 1.0;   // student_t / pareto scale

    static NoiseModel gaussian(double sigma);
    static NoiseModel student(double nu, double scale);
    static NoiseModel pareto(double alpha, double scale);

    double draw(Rng& rng) const;

    // (q, sigma_q) with E|eps|^q <= sigma_q^q, q in (1, 2]; computed from the
    // density (q = min(2, tail - 0.1) for the heavy-tailed variants).
    double moment_order() const;
    double moment_scale() const;
};

NoiseKind noise_kind_from_string(const std::string& name);
std::string to_string(NoiseKind kind);

// y = f(z, p, t) + eps, independent per coordinate; deterministic given the
// stream state.
Vec observe(const SyntheticField& field, const Vec& z, const Vec& p, double t,
            const NoiseModel& noise, Rng& rng);
Vec observe(const SyntheticField& field, const Vec& z, const Vec& p, double t,
            const NoiseModel& noise, std::uint64_t seed);

struct AxisBox {
    Vec lo;
    Vec hi;
    bool contains(const Vec& p) const;
    double volume() const;
};

// Base field plus a constant jump on an exceptional box region.
struct PiecewiseField {
    SyntheticField base;
    AxisBox exceptional;
    Vec jump;  // R^m

    Vec eval(const Vec& z, const Vec& p, double t) const;
};

// Exceptional box of the given volume fraction anchored at `corner` (a vertex
// of the domain; which vertex is the caller's choice, typically the one
// farthest from the anchors).
PiecewiseField make_piecewise(const SyntheticField& base, const ConditionSpace& space,
                              double volume_fraction, double jump_magnitude, const Vec& corner);

nlohmann::json field_to_json(const SyntheticField& field);
SyntheticField field_from_json(const nlohmann::json& j);

}  // namespace aca
