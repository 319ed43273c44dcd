#include "drowsy/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace drowsy {

std::vector<int64_t> equally_dispersed_timestamps(int64_t frame_min, int64_t frame_max, int n) {
    if (n < 2) throw Error(ErrorKind::InvalidCount, "need at least 2 timestamps, got " + std::to_string(n));
    if (frame_max <= frame_min) {
        throw Error(ErrorKind::InvalidCount, "frame_max must exceed frame_min");
    }
    std::vector<int64_t> out(static_cast<size_t>(n));
    double span = static_cast<double>(frame_max - frame_min);
    for (int i = 0; i < n; ++i) {
        out[static_cast<size_t>(i)] =
            frame_min + static_cast<int64_t>(std::llround(i * span / (n - 1)));
    }
    return out;
}

int64_t pick_in_bin(const std::vector<int64_t>& available, int64_t bin_lo, int64_t bin_hi,
                    bool closed, std::mt19937_64& rng) {
    auto lo = std::lower_bound(available.begin(), available.end(), bin_lo);
    auto hi = closed ? std::upper_bound(available.begin(), available.end(), bin_hi)
                     : std::lower_bound(available.begin(), available.end(), bin_hi);
    if (lo < hi) {
        auto count = static_cast<uint64_t>(hi - lo);
        return *(lo + static_cast<int64_t>(rng() % count));  // modulo keeps picks portable
    }
    // Empty bin: nearest available frame to the bin start, ties to the lower.
    auto it = std::lower_bound(available.begin(), available.end(), bin_lo);
    if (it == available.end()) return available.back();
    if (it == available.begin()) return available.front();
    int64_t above = *it;
    int64_t below = *(it - 1);
    return (bin_lo - below) <= (above - bin_lo) ? below : above;
}

std::vector<int64_t> pick_frames(const std::vector<int64_t>& available,
                                 const std::vector<int64_t>& timestamps, int64_t frame_max,
                                 uint64_t seed) {
    if (available.empty()) throw Error(ErrorKind::InvalidCount, "no available frames");
    std::mt19937_64 rng(seed);
    std::vector<int64_t> picks;
    picks.reserve(timestamps.size());
    for (size_t i = 0; i < timestamps.size(); ++i) {
        bool last = i + 1 == timestamps.size();
        int64_t hi = last ? frame_max : timestamps[i + 1];
        picks.push_back(pick_in_bin(available, timestamps[i], hi, last, rng));
    }
    return picks;
}

WindowBuildResult make_windows(const std::vector<FrameFeatures>& recording,
                               const std::vector<int64_t>& anchors, int window_len,
                               ClassLabel label, const std::string& subject_id) {
    WindowBuildResult out;
    for (int64_t anchor : anchors) {
        auto it = std::lower_bound(recording.begin(), recording.end(), anchor,
                                   [](const FrameFeatures& f, int64_t a) { return f.frame_index < a; });
        if (it == recording.end() || it->frame_index != anchor) {
            ++out.dropped;
            continue;
        }
        auto pos = static_cast<int64_t>(it - recording.begin());
        if (pos < window_len - 1) {
            ++out.dropped;
            continue;
        }
        auto first = it - (window_len - 1);
        bool consecutive = true;
        for (auto p = first; p != it; ++p) {
            if ((p + 1)->frame_index != p->frame_index + 1) {
                consecutive = false;
                break;
            }
        }
        if (!consecutive) {
            ++out.dropped;
            continue;
        }
        WindowSample sample;
        sample.anchor_frame = anchor;
        sample.frames.assign(first, it + 1);
        sample.label = label;
        sample.subject_id = subject_id;
        out.windows.push_back(std::move(sample));
    }
    return out;
}

std::pair<std::vector<WindowSample>, std::vector<WindowSample>> split_train_test(
    const std::vector<WindowSample>& samples, int64_t split_frame) {
    return split_train_test_by(samples, split_frame,
                               [](const WindowSample& s) { return s.anchor_frame; });
}

FoldAssignment assign_folds(const std::vector<std::string>& subjects, int fold_size,
                            uint64_t seed) {
    if (subjects.empty()) throw Error(ErrorKind::InvalidCount, "no subjects to assign");
    if (fold_size < 1) throw Error(ErrorKind::InvalidCount, "fold_size must be positive");
    std::vector<std::string> shuffled = subjects;
    std::mt19937_64 rng(seed);
    // Fisher-Yates with modulo draws, stable across standard libraries.
    for (size_t i = shuffled.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng() % i);
        std::swap(shuffled[i - 1], shuffled[j]);
    }
    FoldAssignment out;
    out.fold_size = fold_size;
    for (size_t i = 0; i < shuffled.size(); ++i) {
        out.fold_of_subject[shuffled[i]] = static_cast<int>(i / static_cast<size_t>(fold_size));
    }
    return out;
}

}  // namespace drowsy
