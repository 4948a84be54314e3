#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "tangles/errors.hpp"

namespace tangles {

namespace detail {

// 15-point Gauss-Legendre nodes/weights on [-1,1], computed once by Newton
// iteration on P_15 so no literal table has to be trusted.
struct Gl15 {
    std::array<double, 15> x{};
    std::array<double, 15> w{};
    Gl15() {
        constexpr int n = 15;
        for (int i = 0; i < n; ++i) {
            double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double step = p1 / dp;
                t -= step;
                if (std::abs(step) < 1e-16) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

inline const Gl15& gl15_table() {
    static const Gl15 table;
    return table;
}

template <typename F>
double gl15(F&& f, double a, double b) {
    const auto& t = gl15_table();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 15; ++i) sum += t.w[i] * f(mid + half * t.x[i]);
    return sum * half;
}

template <typename F>
double adaptive_rec(F&& f, double a, double b, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gl15(f, a, m), right = gl15(f, m, b);
    const double diff = left + right - whole;
    if (std::abs(diff) <= tol || b - a < 1e-14 * (1.0 + std::abs(a)))
        return left + right;
    if (depth >= 48)
        throw NonConvergent("adaptive quadrature: tolerance not reached within depth budget");
    return adaptive_rec(f, a, m, left, 0.5 * tol, depth + 1) +
           adaptive_rec(f, m, b, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Legendre integration of f over [a,b] to absolute tolerance.
template <typename F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10) {
    if (!(a < b)) return 0.0;
    const double whole = detail::gl15(f, a, b);
    return detail::adaptive_rec(f, a, b, whole, abs_tol, 0);
}

}  // namespace tangles
