#pragma once

#include <span>
#include <string>
#include <vector>

namespace drowsy {

enum class KernelKind : int { Linear = 0, Polynomial = 1, Rbf = 2, Sigmoid = 3 };

const char* to_string(KernelKind k);
KernelKind kernel_kind_from_string(const std::string& s);

/// Kernel parameters. gamma <= 0 means "scale": resolved against training
/// data as 1/(dim * variance) before any evaluation.
struct KernelSpec {
    KernelKind kind = KernelKind::Linear;
    double gamma = 0.0;
    int degree = 3;
    double coef0 = 0.0;
};

/// Replace a "scale" gamma with 1/(dim * var(X)), variance over all entries.
KernelSpec resolve_gamma(const KernelSpec& spec, const std::vector<std::vector<double>>& data);

/// Linear: x.y; Polynomial: (g x.y + c0)^d; Rbf: exp(-g |x-y|^2);
/// Sigmoid: tanh(g x.y + c0).
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

/// Full pairwise kernel matrix.
std::vector<std::vector<double>> gram_matrix(const KernelSpec& spec,
                                             const std::vector<std::vector<double>>& points);

}  // namespace drowsy
