#pragma once

#include <cmath>
#include <cstdint>

namespace aca {

// splitmix64. Hand-rolled so observation streams are bit-reproducible across
// platforms and standard libraries; all experiment determinism rests on this.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30u)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27u)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31u);
    }

    // [0, 1)
    double u01() { return static_cast<double>(next_u64() >> 11u) * 0x1.0p-53; }

    // (0, 1]
    double u01_open_low() { return 1.0 - u01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // Box-Muller, two uniforms per draw (no cached spare, keeps the stream
    // position a pure function of the draw count).
    double gaussian() {
        const double u1 = u01_open_low();
        const double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Marsaglia-Tsang; shape > 0, unit scale.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double g = gamma(shape + 1.0);
            return g * std::pow(u01_open_low(), 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = gaussian();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = u01_open_low();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double chi_square(double dof) { return 2.0 * gamma(0.5 * dof); }

    double student_t(double dof) {
        const double z = gaussian();
        const double w = chi_square(dof);
        return z * std::sqrt(dof / w);
    }

    // Two-sided Pareto: |X| = scale * U^(-1/alpha), random sign. Mean zero for
    // alpha > 1; E|X|^q = scale^q * alpha/(alpha-q) for q < alpha.
    double pareto_symmetric(double alpha, double scale) {
        const double mag = scale * std::pow(u01_open_low(), -1.0 / alpha);
        return (next_u64() & 1u) ? mag : -mag;
    }
};

// Deterministic sub-stream derivation: hash-combines a master seed with a
// stream index so parallel workers never share generator state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master ^ (0x9e3779b97f4a7c15ull + (stream << 1u) + (stream >> 2u));
    z = (z ^ (z >> 30u)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27u)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31u);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(master, a), b);
}

}  // namespace aca
