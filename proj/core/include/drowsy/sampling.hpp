#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "drowsy/types.hpp"

namespace drowsy {

/// Subset-construction parameters. Defaults follow the recording protocol:
/// frames 1440..14000, 1000 anchors per class, train/test split at frame
/// 10000, 28-frame windows.
struct SubsetSpec {
    int64_t frame_min = 1440;
    int64_t frame_max = 14000;
    int per_class = 1000;
    int64_t split_frame = 10000;
    int window_len = 28;
    uint64_t seed = 0;
};

/// A labeled run of consecutive frames ending at the anchor.
struct WindowSample {
    int64_t anchor_frame = 0;
    std::vector<FrameFeatures> frames;
    ClassLabel label = ClassLabel::Unlabeled;
    std::string subject_id;
};

struct FoldAssignment {
    std::map<std::string, int> fold_of_subject;
    int fold_size = 12;
};

/// n timestamps evenly spread over [frame_min, frame_max] with both endpoints
/// exact: t_i = round(frame_min + i*(frame_max-frame_min)/(n-1)).
std::vector<int64_t> equally_dispersed_timestamps(int64_t frame_min, int64_t frame_max, int n);

/// One seeded-uniform pick per timestamp from the available frames inside the
/// bin [t_i, t_{i+1}) (last bin closed at frame_max). An empty bin falls back
/// to the available frame nearest to t_i, ties to the lower index.
std::vector<int64_t> pick_frames(const std::vector<int64_t>& available,
                                 const std::vector<int64_t>& timestamps, int64_t frame_max,
                                 uint64_t seed);

/// Single-bin pick: uniform over available frames in [bin_lo, bin_hi)
/// (closed at bin_hi when `closed`); empty bin falls back to the frame
/// nearest bin_lo, ties to the lower index. `available` must be sorted and
/// non-empty.
int64_t pick_in_bin(const std::vector<int64_t>& available, int64_t bin_lo, int64_t bin_hi,
                    bool closed, std::mt19937_64& rng);

struct WindowBuildResult {
    std::vector<WindowSample> windows;
    int dropped = 0;  // anchors without window_len frames of history
};

/// Cut a window of `window_len` consecutive frames ending at each anchor.
/// Anchors whose history is missing or non-consecutive are dropped, counted.
WindowBuildResult make_windows(const std::vector<FrameFeatures>& recording,
                               const std::vector<int64_t>& anchors, int window_len,
                               ClassLabel label = ClassLabel::Unlabeled,
                               const std::string& subject_id = {});

/// anchor_frame < split_frame goes to train, the rest to test.
template <typename Sample, typename AnchorOf>
std::pair<std::vector<Sample>, std::vector<Sample>> split_train_test_by(
    const std::vector<Sample>& samples, int64_t split_frame, AnchorOf anchor_of) {
    std::pair<std::vector<Sample>, std::vector<Sample>> out;
    for (const auto& s : samples) {
        (anchor_of(s) < split_frame ? out.first : out.second).push_back(s);
    }
    return out;
}

std::pair<std::vector<WindowSample>, std::vector<WindowSample>> split_train_test(
    const std::vector<WindowSample>& samples, int64_t split_frame);

/// Seeded shuffle then chunks of fold_size; the last fold may be short.
FoldAssignment assign_folds(const std::vector<std::string>& subjects, int fold_size,
                            uint64_t seed);

}  // namespace drowsy
