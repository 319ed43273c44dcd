#include "drowsy/kernel.hpp"

#include <cmath>

#include "drowsy/error.hpp"

namespace drowsy {

const char* to_string(KernelKind k) {
    switch (k) {
        case KernelKind::Linear: return "Linear";
        case KernelKind::Polynomial: return "Polynomial";
        case KernelKind::Rbf: return "Gaussian";
        case KernelKind::Sigmoid: return "Sigmoid";
    }
    return "Unknown";
}

KernelKind kernel_kind_from_string(const std::string& s) {
    if (s == "Linear") return KernelKind::Linear;
    if (s == "Polynomial") return KernelKind::Polynomial;
    if (s == "Gaussian" || s == "Rbf" || s == "RBF") return KernelKind::Rbf;
    if (s == "Sigmoid") return KernelKind::Sigmoid;
    throw Error(ErrorKind::Format, "unknown kernel '" + s + "'");
}

KernelSpec resolve_gamma(const KernelSpec& spec, const std::vector<std::vector<double>>& data) {
    if (spec.gamma > 0.0) return spec;
    KernelSpec out = spec;
    if (data.empty() || data.front().empty()) {
        out.gamma = 1.0;
        return out;
    }
    size_t dim = data.front().size();
    size_t n = data.size() * dim;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& row : data) {
        for (double v : row) {
            sum += v;
            sum_sq += v * v;
        }
    }
    double mean = sum / static_cast<double>(n);
    double var = sum_sq / static_cast<double>(n) - mean * mean;
    out.gamma = var > 0.0 ? 1.0 / (static_cast<double>(dim) * var) : 1.0;
    return out;
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorKind::DimMismatch, std::to_string(x.size()) + " vs " +
                                                std::to_string(y.size()) + " dimensions");
    }
    switch (spec.kind) {
        case KernelKind::Linear: {
            double dot = 0.0;
            for (size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
            return dot;
        }
        case KernelKind::Polynomial: {
            double dot = 0.0;
            for (size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
            return std::pow(spec.gamma * dot + spec.coef0, spec.degree);
        }
        case KernelKind::Rbf: {
            double dist_sq = 0.0;
            for (size_t i = 0; i < x.size(); ++i) {
                double d = x[i] - y[i];
                dist_sq += d * d;
            }
            return std::exp(-spec.gamma * dist_sq);
        }
        case KernelKind::Sigmoid: {
            double dot = 0.0;
            for (size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
            return std::tanh(spec.gamma * dot + spec.coef0);
        }
    }
    throw Error(ErrorKind::Format, "unhandled kernel kind");
}

std::vector<std::vector<double>> gram_matrix(const KernelSpec& spec,
                                             const std::vector<std::vector<double>>& points) {
    size_t n = points.size();
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            g[i][j] = g[j][i] = kernel_eval(spec, points[i], points[j]);
        }
    }
    return g;
}

}  // namespace drowsy
