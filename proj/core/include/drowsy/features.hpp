#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "drowsy/sampling.hpp"
#include "drowsy/types.hpp"

namespace drowsy {

enum class AttributeSet : int { AU = 0, HOG = 1, HOG_AND_AU = 2 };

const char* to_string(AttributeSet a);
AttributeSet attribute_set_from_string(const std::string& s);

struct FeatureSpec {
    AttributeSet attribute_set = AttributeSet::AU;
    bool include_presence = true;
    bool standardize = true;
};

/// Per-frame feature vector. Layout: AU = 17 intensities then 18 presences
/// (presences omitted when include_presence is off); HOG = the raw HOG
/// vector; HOG_AND_AU = HOG followed by AU.
std::vector<double> frame_vector(const FrameFeatures& frame, const FeatureSpec& spec);

/// Element-wise mean of the per-frame vectors of a window.
std::vector<double> window_vector(const WindowSample& window, const FeatureSpec& spec);

/// Per-dimension standardizer. Population stdev; zero-variance dimensions
/// store stdev 1 so apply() is always defined.
struct Scaler {
    std::vector<double> means;
    std::vector<double> stdevs;

    std::vector<double> apply(const std::vector<double>& v) const;
};

Scaler fit_scaler(const std::vector<std::vector<double>>& train);

/// Binary feature-matrix file: magic "DFM1", u32 spec tag, u32 dim, u64 rows,
/// then row-major little-endian f32 values.
void save_feature_matrix(const std::filesystem::path& path,
                         const std::vector<std::vector<double>>& rows, uint32_t spec_tag);

struct FeatureMatrix {
    std::vector<std::vector<double>> rows;
    uint32_t spec_tag = 0;
    uint32_t dim = 0;
};

FeatureMatrix load_feature_matrix(const std::filesystem::path& path);

}  // namespace drowsy
