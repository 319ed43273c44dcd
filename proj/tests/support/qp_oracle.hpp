// Independent reference solver for the SVM dual, used to cross-check the
// SMO trainer. Projected gradient ascent on
//   W(a) = sum a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
// over {0 <= a <= C, sum y_i a_i = 0}; the projection is computed by
// bisection on the equality constraint's multiplier. Deliberately shares no
// code with the production trainer.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "drowsy/kernel.hpp"

namespace oracle {

struct DualSolution {
    std::vector<double> alpha;
    double objective = 0.0;
    double bias = 0.0;
};

inline std::vector<double> project(const std::vector<double>& v, const std::vector<int>& y,
                                   double c) {
    // alpha_i(lambda) = clip(v_i - lambda*y_i, 0, C); sum y_i alpha_i is
    // nonincreasing in lambda, so bisect.
    auto constraint = [&](double lambda) {
        double s = 0.0;
        for (size_t i = 0; i < v.size(); ++i) {
            s += y[i] * std::clamp(v[i] - lambda * y[i], 0.0, c);
        }
        return s;
    };
    double lo = -1e6, hi = 1e6;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (constraint(mid) > 0.0 ? lo : hi) = mid;
    }
    double lambda = 0.5 * (lo + hi);
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = std::clamp(v[i] - lambda * y[i], 0.0, c);
    return out;
}

inline DualSolution solve_dual(const std::vector<std::vector<double>>& points,
                               const std::vector<int>& y, const drowsy::KernelSpec& kernel,
                               double c, int iters = 20000) {
    size_t n = points.size();
    auto k = drowsy::gram_matrix(kernel, points);
    std::vector<std::vector<double>> q(n, std::vector<double>(n));
    double trace = 0.0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) q[i][j] = y[i] * y[j] * k[i][j];
        trace += std::abs(q[i][i]);
    }
    double step = 1.0 / std::max(trace, 1e-9);  // 1/L with L <= trace for PSD Q

    std::vector<double> alpha(n, 0.0);
    for (int it = 0; it < iters; ++it) {
        std::vector<double> grad(n, 1.0);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) grad[i] -= q[i][j] * alpha[j];
        }
        std::vector<double> moved(n);
        for (size_t i = 0; i < n; ++i) moved[i] = alpha[i] + step * grad[i];
        alpha = project(moved, y, c);
    }

    DualSolution sol;
    sol.alpha = alpha;
    double quad = 0.0, lin = 0.0;
    for (size_t i = 0; i < n; ++i) {
        lin += alpha[i];
        for (size_t j = 0; j < n; ++j) quad += alpha[i] * alpha[j] * q[i][j];
    }
    sol.objective = lin - 0.5 * quad;

    // Bias from free support vectors, else from the bound-consistent interval.
    double sum = 0.0;
    int free_count = 0;
    auto f_of = [&](size_t t) {
        double f = 0.0;
        for (size_t s = 0; s < n; ++s) f += alpha[s] * y[s] * k[s][t];
        return f;
    };
    for (size_t t = 0; t < n; ++t) {
        if (alpha[t] > 1e-6 * c && alpha[t] < c * (1.0 - 1e-6)) {
            sum += y[t] - f_of(t);
            ++free_count;
        }
    }
    if (free_count > 0) {
        sol.bias = sum / free_count;
    } else {
        double lo = -1e18, hi = 1e18;
        for (size_t t = 0; t < n; ++t) {
            double v = y[t] - f_of(t);
            bool at_zero = alpha[t] <= 1e-6 * c;
            // alpha=0, y=+1 and alpha=C, y=-1 demand b >= y - f; the other
            // two bound cases demand b <= y - f.
            if ((y[t] == +1 && at_zero) || (y[t] == -1 && !at_zero)) lo = std::max(lo, v);
            else hi = std::min(hi, v);
        }
        sol.bias = 0.5 * (lo + hi);
    }
    return sol;
}

inline double decision(const DualSolution& sol, const std::vector<std::vector<double>>& points,
                       const std::vector<int>& y, const drowsy::KernelSpec& kernel,
                       const std::vector<double>& x) {
    double f = sol.bias;
    for (size_t i = 0; i < points.size(); ++i) {
        if (sol.alpha[i] > 0.0) f += sol.alpha[i] * y[i] * drowsy::kernel_eval(kernel, points[i], x);
    }
    return f;
}

}  // namespace oracle
