#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "drowsy/types.hpp"

namespace drowsy {

struct AuParseResult {
    std::vector<FrameFeatures> frames;
    int clamped = 0;  // intensity cells pulled back into [0,5]
};

/// Parse an OpenFace-style per-frame AU export (CSV with header row).
/// Required columns: frame, timestamp, confidence, success, AUxx_r for every
/// intensity AU and AUxx_c for every presence AU. Unknown columns are ignored.
AuParseResult parse_au_csv(std::istream& source);

/// Binary HOG stream layout, per record, all little-endian:
///   u32 cols, u32 rows, u32 channels, f32 validity (nonzero = valid),
///   then rows*cols*channels f32 values.
/// frame_index is assigned by stream position.
std::vector<HogFrame> parse_hog_stream(std::istream& source);

/// Inverse of parse_hog_stream; bit-exact round trip.
void write_hog(std::ostream& sink, const std::vector<HogFrame>& frames);

/// Attach HOG vectors to AU frames by position. An invalid HOG frame forces
/// success=false on the joined frame. Counts may differ by at most `slack`;
/// surplus frames on either side are dropped.
std::vector<FrameFeatures> join_features(const std::vector<FrameFeatures>& au,
                                         const std::vector<HogFrame>& hog, int slack = 0);

/// How recording files map to (subject, scale). `pattern` is an ECMAScript
/// regex matched against each AU file's path relative to the dataset root;
/// capture groups give the subject id and scale value. The HOG companion is
/// the AU path with its extension replaced by `hog_suffix`.
struct LayoutConfig {
    std::string pattern = R"(([^/]+)/(\d+)\.csv)";
    int subject_group = 1;
    int scale_group = 2;
    std::string hog_suffix = ".hog";
};

LayoutConfig load_layout_config(const std::filesystem::path& path);

/// Walk `root`, match AU exports against the layout, label each recording via
/// the 9-point scale mapping. Output order is lexicographic by subject then
/// scale, so identical trees index identically.
DatasetIndex scan_dataset(const std::filesystem::path& root, const LayoutConfig& layout);

void save_dataset_index(const DatasetIndex& index, const std::filesystem::path& path);
DatasetIndex load_dataset_index(const std::filesystem::path& path);

}  // namespace drowsy
