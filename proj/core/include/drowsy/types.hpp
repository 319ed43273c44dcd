#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drowsy/error.hpp"

namespace drowsy {

/// Self-reported drowsiness classes; scale values 4 and 5 stay Unlabeled.
enum class ClassLabel : int { Alert = 0, LowVigilance = 1, Drowsy = 2, Unlabeled = 3 };

inline const char* to_string(ClassLabel c) {
    switch (c) {
        case ClassLabel::Alert: return "Alert";
        case ClassLabel::LowVigilance: return "LowVigilance";
        case ClassLabel::Drowsy: return "Drowsy";
        case ClassLabel::Unlabeled: return "Unlabeled";
    }
    return "Unknown";
}

ClassLabel class_label_from_string(const std::string& s);

/// Action Units with intensity scores (AU28 is presence-only).
inline constexpr std::array<int, 17> kIntensityAus = {1,  2,  4,  5,  6,  7,  9,  10, 12,
                                                      14, 15, 17, 20, 23, 25, 26, 45};
/// Action Units with presence scores.
inline constexpr std::array<int, 18> kPresenceAus = {1,  2,  4,  5,  6,  7,  9,  10, 12,
                                                     14, 15, 17, 20, 23, 25, 26, 28, 45};

inline constexpr std::size_t kNumIntensityAus = kIntensityAus.size();
inline constexpr std::size_t kNumPresenceAus = kPresenceAus.size();

/// Index of AU45 within kIntensityAus (eyelid closure proxy).
inline constexpr std::size_t kAu45IntensityIndex = 16;

/// One video frame's parsed facial features.
struct FrameFeatures {
    int64_t frame_index = 0;
    double timestamp_s = 0.0;
    double confidence = 0.0;
    bool success = false;
    std::array<double, kNumIntensityAus> au_intensity{};  // each in [0,5]
    std::array<double, kNumPresenceAus> au_presence{};    // each 0 or 1
    std::optional<std::vector<float>> hog;
};

/// One dense HOG descriptor frame as stored on disk.
struct HogFrame {
    int64_t frame_index = 0;
    bool valid = true;
    uint32_t rows = 0;
    uint32_t cols = 0;
    uint32_t channels = 0;
    std::vector<float> values;  // length rows*cols*channels
};

struct RecordingMeta {
    std::string subject_id;
    int scale_value = 0;  // 1..9
    ClassLabel label = ClassLabel::Unlabeled;
    std::optional<int> fold;
    std::string au_path;
    std::string hog_path;  // empty when no HOG export exists
};

struct DatasetIndex {
    std::vector<RecordingMeta> recordings;
    uint32_t hog_dim = 0;  // 0 when the dataset carries no HOG streams
};

}  // namespace drowsy
