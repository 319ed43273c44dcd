#pragma once

#include <functional>
#include <vector>

#include "drowsy/error.hpp"

namespace drowsy {

/// Row = true class, column = predicted class.
struct ConfusionMatrix {
    std::vector<std::vector<int64_t>> counts;

    int num_classes() const { return static_cast<int>(counts.size()); }
    int64_t total() const;
};

ConfusionMatrix confusion(const std::vector<int>& truth, const std::vector<int>& preds,
                          int num_classes);

/// sum_i w_i * tp_i/(tp_i+fp_i) / sum_i w_i, w_i = row sum. A class never
/// predicted contributes precision 0.
double weighted_precision(const ConfusionMatrix& cm);

/// sum_i w_i * tp_i/(tp_i+fn_i) / sum_i w_i; algebraically equal to accuracy.
double weighted_recall(const ConfusionMatrix& cm);

double accuracy(const ConfusionMatrix& cm);

struct LatencyStats {
    double mean_ms = 0.0;
    double p95_ms = 0.0;
    int64_t samples = 0;
};

/// Time repeats * |samples| single-sample calls of `predict_one`, after one
/// untimed warm-up pass over the samples. Sequential by design.
LatencyStats time_predictions(const std::function<void(const std::vector<double>&)>& predict_one,
                              const std::vector<std::vector<double>>& samples, int repeats);

}  // namespace drowsy
