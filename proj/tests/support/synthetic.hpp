// Synthetic dataset generation shared by tests: OpenFace-style AU CSV
// exports plus binary HOG streams with class-dependent Gaussian features.
#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "drowsy/ingest.hpp"
#include "drowsy/types.hpp"

namespace synth {

namespace fs = std::filesystem;

inline std::string au_header() {
    std::string h = "frame,timestamp,confidence,success";
    char buf[16];
    for (int au : drowsy::kIntensityAus) {
        std::snprintf(buf, sizeof(buf), ",AU%02d_r", au);
        h += buf;
    }
    for (int au : drowsy::kPresenceAus) {
        std::snprintf(buf, sizeof(buf), ",AU%02d_c", au);
        h += buf;
    }
    return h;
}

struct RecordingConfig {
    std::string subject_id;
    int scale_value = 1;
    int64_t first_frame = 0;
    int64_t last_frame = 2000;
    double au_mean = 1.0;   // class-dependent center of AU intensities
    double au_sigma = 0.2;
    double hog_mean = 0.0;  // class-dependent center of HOG values
    double hog_sigma = 0.2;
    double fps = 30.0;
};

/// rows*cols*channels of the generated HOG streams.
inline constexpr uint32_t kHogRows = 2, kHogCols = 2, kHogChannels = 2;
inline constexpr uint32_t kHogDim = kHogRows * kHogCols * kHogChannels;

inline void write_recording(const fs::path& root, const RecordingConfig& cfg, uint64_t seed) {
    fs::path dir = root / cfg.subject_id;
    fs::create_directories(dir);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> au_noise(cfg.au_mean, cfg.au_sigma);
    std::normal_distribution<double> hog_noise(cfg.hog_mean, cfg.hog_sigma);

    std::ofstream csv(dir / (std::to_string(cfg.scale_value) + ".csv"));
    csv << au_header() << "\n";
    std::vector<drowsy::HogFrame> hog_frames;
    for (int64_t f = cfg.first_frame; f <= cfg.last_frame; ++f) {
        csv << f << ',' << static_cast<double>(f) / cfg.fps << ",0.98,1";
        for (size_t i = 0; i < drowsy::kNumIntensityAus; ++i) {
            double v = std::clamp(au_noise(rng), 0.0, 5.0);
            csv << ',' << v;
        }
        for (size_t i = 0; i < drowsy::kNumPresenceAus; ++i) {
            csv << ',' << (rng() % 2);
        }
        csv << "\n";

        drowsy::HogFrame hf;
        hf.rows = kHogRows;
        hf.cols = kHogCols;
        hf.channels = kHogChannels;
        hf.valid = true;
        for (uint32_t i = 0; i < kHogDim; ++i) {
            hf.values.push_back(static_cast<float>(hog_noise(rng)));
        }
        hog_frames.push_back(std::move(hf));
    }
    std::ofstream hog(dir / (std::to_string(cfg.scale_value) + ".hog"), std::ios::binary);
    drowsy::write_hog(hog, hog_frames);
}

/// Three-class dataset, `subjects_per_class` recordings per class, with
/// class centers separated by >= 3 sigma in both AU and HOG space.
inline void write_three_class_dataset(const fs::path& root, int subjects_per_class,
                                      int64_t first_frame, int64_t last_frame, uint64_t seed) {
    struct ClassDef {
        int scale;
        double au_mean;
        double hog_mean;
    };
    // au_sigma = hog_sigma = 0.2, centers 1.2 apart: 6 sigma separation.
    std::array<ClassDef, 3> classes = {{{1, 0.8, -1.2}, {6, 2.0, 0.0}, {8, 3.2, 1.2}}};
    int subject = 0;
    for (const auto& cls : classes) {
        for (int s = 0; s < subjects_per_class; ++s, ++subject) {
            RecordingConfig cfg;
            char buf[8];
            std::snprintf(buf, sizeof(buf), "s%02d", subject);
            cfg.subject_id = buf;
            cfg.scale_value = cls.scale;
            cfg.first_frame = first_frame;
            cfg.last_frame = last_frame;
            cfg.au_mean = cls.au_mean;
            cfg.au_sigma = 0.2;
            cfg.hog_mean = cls.hog_mean;
            cfg.hog_sigma = 0.2;
            write_recording(root, cfg, seed + static_cast<uint64_t>(subject) * 7919);
        }
    }
}

/// Random labeled 2-D instance for SVM oracle checks: two Gaussian blobs.
struct TinyInstance {
    std::vector<std::vector<double>> points;
    std::vector<int> labels;  // +/-1
};

inline TinyInstance random_tiny_instance(std::mt19937_64& rng, int max_points = 30) {
    TinyInstance inst;
    std::uniform_int_distribution<int> count(4, max_points);
    std::uniform_real_distribution<double> center(-3.0, 3.0);
    std::normal_distribution<double> noise(0.0, 1.0);
    int n = count(rng);
    double cx = center(rng), cy = center(rng);
    double dx = center(rng), dy = center(rng);
    for (int i = 0; i < n; ++i) {
        bool pos = i % 2 == 0;  // both classes always present
        double x = (pos ? cx : dx) + noise(rng);
        double y = (pos ? cy : dy) + noise(rng);
        inst.points.push_back({x, y});
        inst.labels.push_back(pos ? +1 : -1);
    }
    return inst;
}

/// Three well-separated 2-D clusters (centers (0,0), (10,0), (0,10)).
inline void three_cluster_fixture(std::mt19937_64& rng, int per_class,
                                  std::vector<std::vector<double>>& points,
                                  std::vector<int>& labels) {
    const double centers[3][2] = {{0, 0}, {10, 0}, {0, 10}};
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < per_class; ++i) {
            points.push_back({centers[c][0] + noise(rng), centers[c][1] + noise(rng)});
            labels.push_back(c);
        }
    }
}

}  // namespace synth
