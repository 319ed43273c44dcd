#include "drowsy/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace drowsy {

namespace {

constexpr double kAlphaFloor = 1e-10;  // below this an alpha is treated as zero

}  // namespace

BinarySvm train_binary_svm(const std::vector<std::vector<double>>& points,
                           const std::vector<int>& labels, const KernelSpec& kernel,
                           const SvmParams& params) {
    if (points.size() != labels.size()) {
        throw Error(ErrorKind::LengthMismatch, "points and labels differ in length");
    }
    if (params.c <= 0.0 || params.tol <= 0.0) {
        throw Error(ErrorKind::InvalidCount, "c and tol must be positive");
    }
    size_t n = points.size();
    bool has_pos = false, has_neg = false;
    for (int y : labels) {
        if (y == +1) has_pos = true;
        else if (y == -1) has_neg = true;
        else throw Error(ErrorKind::UnknownLabel, "binary labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) {
        throw Error(ErrorKind::SingleClassData, "both classes must be present");
    }

    KernelSpec resolved = resolve_gamma(kernel, points);
    const double c = params.c;

    auto gram = gram_matrix(resolved, points);
    std::vector<double> alpha(n, 0.0);
    std::vector<double> f(n, 0.0);  // f_t = sum_s alpha_s y_s K_ts, bias excluded

    auto in_up = [&](size_t t) {
        return (labels[t] == +1 && alpha[t] < c) || (labels[t] == -1 && alpha[t] > 0.0);
    };
    auto in_low = [&](size_t t) {
        return (labels[t] == -1 && alpha[t] < c) || (labels[t] == +1 && alpha[t] > 0.0);
    };

    bool converged = false;
    for (int iter = 0; iter < params.max_passes; ++iter) {
        // Maximal violating pair: largest y_t - f_t over I_up vs smallest
        // over I_low.
        double up_best = -std::numeric_limits<double>::infinity();
        double low_best = std::numeric_limits<double>::infinity();
        size_t i = n, j = n;
        for (size_t t = 0; t < n; ++t) {
            double v = labels[t] - f[t];
            if (in_up(t) && v > up_best) {
                up_best = v;
                i = t;
            }
            if (in_low(t) && v < low_best) {
                low_best = v;
                j = t;
            }
        }
        if (i == n || j == n || up_best - low_best <= params.tol) {
            converged = true;
            break;
        }

        double e_i = f[i] - labels[i];
        double e_j = f[j] - labels[j];
        double lo, hi;
        if (labels[i] != labels[j]) {
            lo = std::max(0.0, alpha[j] - alpha[i]);
            hi = std::min(c, c + alpha[j] - alpha[i]);
        } else {
            lo = std::max(0.0, alpha[i] + alpha[j] - c);
            hi = std::min(c, alpha[i] + alpha[j]);
        }
        double eta = gram[i][i] + gram[j][j] - 2.0 * gram[i][j];
        if (eta < 1e-12) eta = 1e-12;  // clipping keeps indefinite kernels moving
        // Snap to the box so near-bound alphas leave the working sets
        // exactly; otherwise the pair search can stall on a ~1e-16 residual.
        auto snap = [c](double a) {
            if (a < 1e-12) return 0.0;
            if (a > c - 1e-12) return c;
            return a;
        };
        double aj_new = snap(std::clamp(alpha[j] + labels[j] * (e_i - e_j) / eta, lo, hi));
        double dj = aj_new - alpha[j];
        if (std::abs(dj) < 1e-14) {
            converged = up_best - low_best <= params.tol;
            break;
        }
        double ai_new = snap(alpha[i] + labels[i] * labels[j] * (alpha[j] - aj_new));
        double di = ai_new - alpha[i];
        alpha[i] = ai_new;
        alpha[j] = aj_new;
        for (size_t t = 0; t < n; ++t) {
            f[t] += di * labels[i] * gram[i][t] + dj * labels[j] * gram[j][t];
        }
    }

    // Bias: average y_t - f_t over free support vectors, else midpoint of the
    // feasible interval.
    double bias = 0.0;
    int free_count = 0;
    for (size_t t = 0; t < n; ++t) {
        if (alpha[t] > kAlphaFloor && alpha[t] < c - kAlphaFloor) {
            bias += labels[t] - f[t];
            ++free_count;
        }
    }
    if (free_count > 0) {
        bias /= free_count;
    } else {
        double up_best = -std::numeric_limits<double>::infinity();
        double low_best = std::numeric_limits<double>::infinity();
        for (size_t t = 0; t < n; ++t) {
            double v = labels[t] - f[t];
            if (in_up(t)) up_best = std::max(up_best, v);
            if (in_low(t)) low_best = std::min(low_best, v);
        }
        bias = (up_best + low_best) / 2.0;
    }

    BinarySvm model;
    model.kernel = resolved;
    model.bias = bias;
    model.converged = converged;
    for (size_t t = 0; t < n; ++t) {
        if (alpha[t] > kAlphaFloor) {
            model.support_vectors.push_back(points[t]);
            model.dual_coefs.push_back(alpha[t] * labels[t]);
        }
    }
    return model;
}

double decision_function(const BinarySvm& model, std::span<const double> x) {
    double sum = model.bias;
    for (size_t i = 0; i < model.support_vectors.size(); ++i) {
        sum += model.dual_coefs[i] * kernel_eval(model.kernel, model.support_vectors[i], x);
    }
    return sum;
}

double dual_objective(const BinarySvm& model) {
    double linear = 0.0;
    for (double dc : model.dual_coefs) linear += std::abs(dc);
    double quad = 0.0;
    for (size_t i = 0; i < model.support_vectors.size(); ++i) {
        for (size_t j = 0; j < model.support_vectors.size(); ++j) {
            quad += model.dual_coefs[i] * model.dual_coefs[j] *
                    kernel_eval(model.kernel, model.support_vectors[i], model.support_vectors[j]);
        }
    }
    return linear - 0.5 * quad;
}

MulticlassSvm train_multiclass(const std::vector<std::vector<double>>& points,
                               const std::vector<int>& labels, const KernelSpec& kernel,
                               const SvmParams& params) {
    if (points.size() != labels.size()) {
        throw Error(ErrorKind::LengthMismatch, "points and labels differ in length");
    }
    std::set<int> class_set(labels.begin(), labels.end());
    if (class_set.size() < 2) {
        throw Error(ErrorKind::SingleClassData, "need at least 2 classes");
    }
    MulticlassSvm model;
    model.classes.assign(class_set.begin(), class_set.end());

    // gamma="scale" resolves against the full training set so every pair
    // machine shares one kernel.
    KernelSpec resolved = resolve_gamma(kernel, points);

    for (size_t a = 0; a < model.classes.size(); ++a) {
        for (size_t b = a + 1; b < model.classes.size(); ++b) {
            int ca = model.classes[a];
            int cb = model.classes[b];
            std::vector<std::vector<double>> sub;
            std::vector<int> sub_y;
            for (size_t t = 0; t < points.size(); ++t) {
                if (labels[t] == ca || labels[t] == cb) {
                    sub.push_back(points[t]);
                    sub_y.push_back(labels[t] == ca ? +1 : -1);
                }
            }
            try {
                BinarySvm machine = train_binary_svm(sub, sub_y, resolved, params);
                machine.class_pair = {ca, cb};
                model.machines.push_back(std::move(machine));
            } catch (const Error& e) {
                throw Error(e.kind(), "pair (" + std::to_string(ca) + "," + std::to_string(cb) +
                                          "): " + e.what());
            }
        }
    }
    return model;
}

int predict(const MulticlassSvm& model, std::span<const double> x) {
    std::map<int, int> votes;
    std::map<int, double> magnitude;  // sum of |decision| over a class's machines
    for (int c : model.classes) {
        votes[c] = 0;
        magnitude[c] = 0.0;
    }
    for (const auto& machine : model.machines) {
        double d = decision_function(machine, x);
        int winner = d > 0.0 ? machine.class_pair.first : machine.class_pair.second;
        ++votes[winner];
        magnitude[machine.class_pair.first] += std::abs(d);
        magnitude[machine.class_pair.second] += std::abs(d);
    }
    int best = model.classes.front();
    for (int c : model.classes) {
        if (votes[c] > votes[best]) {
            best = c;
        } else if (votes[c] == votes[best] && c != best) {
            if (magnitude[c] > magnitude[best]) best = c;
            // equal magnitude keeps the earlier class
        }
    }
    return best;
}

}  // namespace drowsy
