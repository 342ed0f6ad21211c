#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace aca {

using Vec = std::vector<double>;

inline Vec zeros(std::size_t n) { return Vec(n, 0.0); }

inline void check_same_size(const Vec& a, const Vec& b, const char* where) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
    }
}

inline double dot(const Vec& a, const Vec& b) {
    check_same_size(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

inline double norm1(const Vec& a) {
    double s = 0.0;
    for (double x : a) s += std::fabs(x);
    return s;
}

inline double dist2(const Vec& a, const Vec& b) {
    check_same_size(a, b, "dist2");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline Vec add(Vec a, const Vec& b) {
    check_same_size(a, b, "add");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Vec sub(Vec a, const Vec& b) {
    check_same_size(a, b, "sub");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Vec scaled(Vec a, double s) {
    for (double& x : a) x *= s;
    return a;
}

inline bool all_finite(const Vec& a) {
    for (double x : a) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

// Dense row-major matrix, small sizes only (state coupling, Jacobians).
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    Vec apply(const Vec& x) const {
        if (static_cast<int>(x.size()) != cols) {
            throw std::invalid_argument("Mat::apply: dimension mismatch");
        }
        Vec y(static_cast<std::size_t>(rows), 0.0);
        for (int r = 0; r < rows; ++r) {
            double s = 0.0;
            const double* row = a.data() + static_cast<std::size_t>(r) * cols;
            for (int c = 0; c < cols; ++c) s += row[c] * x[c];
            y[static_cast<std::size_t>(r)] = s;
        }
        return y;
    }

    // In-place y += M x, no allocation. Hot path for integrators.
    void apply_add(const double* x, double* y) const {
        for (int r = 0; r < rows; ++r) {
            double s = 0.0;
            const double* row = a.data() + static_cast<std::size_t>(r) * cols;
            for (int c = 0; c < cols; ++c) s += row[c] * x[c];
            y[r] += s;
        }
    }

    // Largest singular value via power iteration on M^T M.
    double spectral_norm() const {
        if (rows == 0 || cols == 0) return 0.0;
        Vec v(static_cast<std::size_t>(cols), 1.0 / std::sqrt(static_cast<double>(cols)));
        double est = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            // w = M v, u = M^T w
            Vec w = apply(v);
            Vec u(static_cast<std::size_t>(cols), 0.0);
            for (int r = 0; r < rows; ++r) {
                for (int c = 0; c < cols; ++c) u[static_cast<std::size_t>(c)] += at(r, c) * w[static_cast<std::size_t>(r)];
            }
            const double nu = norm2(u);
            if (nu == 0.0) return 0.0;
            for (double& x : u) x /= nu;
            const double next = std::sqrt(nu);
            if (iter > 4 && std::fabs(next - est) <= 1e-14 * std::max(1.0, next)) {
                est = next;
                break;
            }
            est = next;
            v = std::move(u);
        }
        return est;
    }
};

}  // namespace aca
