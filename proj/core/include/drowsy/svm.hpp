#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "drowsy/kernel.hpp"
#include "drowsy/types.hpp"

namespace drowsy {

struct SvmParams {
    double c = 1.0;        // box constraint
    double tol = 1e-3;     // KKT violation tolerance
    int max_passes = 200000;  // working-set iteration budget
    uint64_t seed = 0;
};

/// One trained binary machine. dual_coefs holds alpha_i * y_i for each
/// support vector; |dual_coefs[i]| <= c and they sum to ~0.
struct BinarySvm {
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual_coefs;
    double bias = 0.0;
    KernelSpec kernel;
    std::pair<int, int> class_pair{-1, +1};
    bool converged = true;
};

/// SMO with max-violating-pair working-set selection. Labels are +/-1.
/// Deterministic for fixed inputs. When the iteration budget runs out the
/// model is still returned with converged=false.
BinarySvm train_binary_svm(const std::vector<std::vector<double>>& points,
                           const std::vector<int>& labels, const KernelSpec& kernel,
                           const SvmParams& params);

/// f(x) = sum_i dual_coef_i * K(sv_i, x) + bias
double decision_function(const BinarySvm& model, std::span<const double> x);

/// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij,
/// recovered from the stored dual coefficients.
double dual_objective(const BinarySvm& model);

/// One-vs-one multiclass ensemble: k(k-1)/2 machines over the ordered class
/// list.
struct MulticlassSvm {
    std::vector<int> classes;
    std::vector<BinarySvm> machines;  // pairs in (i,j) order, i < j
};

MulticlassSvm train_multiclass(const std::vector<std::vector<double>>& points,
                               const std::vector<int>& labels, const KernelSpec& kernel,
                               const SvmParams& params);

/// Majority vote over pair machines; ties broken by the largest sum of
/// |decision value| over the tied classes' machines, then by class order.
int predict(const MulticlassSvm& model, std::span<const double> x);

}  // namespace drowsy
