#include "drowsy/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "drowsy/error.hpp"

namespace drowsy {

int64_t ConfusionMatrix::total() const {
    int64_t n = 0;
    for (const auto& row : counts) {
        for (int64_t c : row) n += c;
    }
    return n;
}

ConfusionMatrix confusion(const std::vector<int>& truth, const std::vector<int>& preds,
                          int num_classes) {
    if (truth.size() != preds.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(truth.size()) + " truth vs " +
                                                   std::to_string(preds.size()) + " predictions");
    }
    ConfusionMatrix cm;
    cm.counts.assign(static_cast<size_t>(num_classes),
                     std::vector<int64_t>(static_cast<size_t>(num_classes), 0));
    for (size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 0 || truth[i] >= num_classes || preds[i] < 0 || preds[i] >= num_classes) {
            throw Error(ErrorKind::UnknownLabel,
                        "label outside 0.." + std::to_string(num_classes - 1) + " at index " +
                            std::to_string(i));
        }
        ++cm.counts[static_cast<size_t>(truth[i])][static_cast<size_t>(preds[i])];
    }
    return cm;
}

namespace {

void require_nonempty(const ConfusionMatrix& cm) {
    if (cm.counts.empty() || cm.total() == 0) {
        throw Error(ErrorKind::EmptyMatrix, "no evaluated samples");
    }
}

}  // namespace

double weighted_precision(const ConfusionMatrix& cm) {
    require_nonempty(cm);
    size_t k = cm.counts.size();
    double num = 0.0;
    double denom = 0.0;
    for (size_t i = 0; i < k; ++i) {
        int64_t w = 0;
        for (int64_t c : cm.counts[i]) w += c;
        int64_t tp = cm.counts[i][i];
        int64_t col = 0;
        for (size_t r = 0; r < k; ++r) col += cm.counts[r][i];
        int64_t fp = col - tp;
        double precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
        num += static_cast<double>(w) * precision;
        denom += static_cast<double>(w);
    }
    return num / denom;
}

double weighted_recall(const ConfusionMatrix& cm) {
    require_nonempty(cm);
    size_t k = cm.counts.size();
    double num = 0.0;
    double denom = 0.0;
    for (size_t i = 0; i < k; ++i) {
        int64_t w = 0;
        for (int64_t c : cm.counts[i]) w += c;
        // w_i * (tp_i / w_i) = tp_i, summed exactly in integers so the
        // recall == accuracy identity holds bit-for-bit.
        num += static_cast<double>(cm.counts[i][i]);
        denom += static_cast<double>(w);
    }
    return num / denom;
}

double accuracy(const ConfusionMatrix& cm) {
    require_nonempty(cm);
    int64_t tp = 0;
    for (size_t i = 0; i < cm.counts.size(); ++i) tp += cm.counts[i][i];
    return static_cast<double>(tp) / static_cast<double>(cm.total());
}

LatencyStats time_predictions(const std::function<void(const std::vector<double>&)>& predict_one,
                              const std::vector<std::vector<double>>& samples, int repeats) {
    if (samples.empty()) throw Error(ErrorKind::InvalidCount, "no samples to time");
    if (repeats < 1) throw Error(ErrorKind::InvalidCount, "repeats must be >= 1");

    // Warm-up pass, untimed.
    for (const auto& s : samples) predict_one(s);

    std::vector<double> durations_ms;
    durations_ms.reserve(samples.size() * static_cast<size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
        for (const auto& s : samples) {
            auto t0 = std::chrono::steady_clock::now();
            predict_one(s);
            auto t1 = std::chrono::steady_clock::now();
            durations_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
    }
    std::sort(durations_ms.begin(), durations_ms.end());
    double sum = 0.0;
    for (double d : durations_ms) sum += d;
    LatencyStats stats;
    stats.samples = static_cast<int64_t>(durations_ms.size());
    stats.mean_ms = sum / static_cast<double>(durations_ms.size());
    size_t p95 = std::min(durations_ms.size() - 1,
                          static_cast<size_t>(std::ceil(0.95 * durations_ms.size())) - 1);
    stats.p95_ms = durations_ms[p95];
    return stats;
}

}  // namespace drowsy
