#include <doctest.h>

#include <filesystem>
#include <random>

#include "drowsy/features.hpp"

using namespace drowsy;

namespace {

FrameFeatures frame_with_hog(size_t hog_dim, float fill = 0.0f) {
    FrameFeatures f;
    f.hog = std::vector<float>(hog_dim, fill);
    return f;
}

WindowSample window_of(std::vector<FrameFeatures> frames) {
    WindowSample w;
    w.frames = std::move(frames);
    return w;
}

}  // namespace

TEST_CASE("frame_vector layouts") {
    FeatureSpec au_spec;
    au_spec.attribute_set = AttributeSet::AU;

    SUBCASE("AU: 17 intensities + 18 presences") {
        CHECK(frame_vector(FrameFeatures{}, au_spec).size() == 35);
        au_spec.include_presence = false;
        CHECK(frame_vector(FrameFeatures{}, au_spec).size() == 17);
    }
    SUBCASE("HOG_AND_AU with hog_dim 4464 gives 4499") {
        FeatureSpec spec;
        spec.attribute_set = AttributeSet::HOG_AND_AU;
        CHECK(frame_vector(frame_with_hog(4464), spec).size() == 4499);
    }
    SUBCASE("HOG spec on a frame without HOG") {
        FeatureSpec spec;
        spec.attribute_set = AttributeSet::HOG;
        CHECK_THROWS_AS(frame_vector(FrameFeatures{}, spec), Error);
    }
}

TEST_CASE("window_vector") {
    FeatureSpec au_spec;
    au_spec.attribute_set = AttributeSet::AU;

    SUBCASE("identical frames average to the shared vector") {
        FrameFeatures f;
        f.au_intensity[0] = 2.5;
        auto w = window_of({f, f, f});
        CHECK(window_vector(w, au_spec) == frame_vector(f, au_spec));
    }
    SUBCASE("AU45 components 1.0 and 3.0 average to 2.0") {
        FrameFeatures a, b;
        a.au_intensity[kAu45IntensityIndex] = 1.0;
        b.au_intensity[kAu45IntensityIndex] = 3.0;
        auto v = window_vector(window_of({a, b}), au_spec);
        CHECK(v[kAu45IntensityIndex] == doctest::Approx(2.0));
    }
    SUBCASE("28 zero frames give a zero vector") {
        auto w = window_of(std::vector<FrameFeatures>(28));
        for (double v : window_vector(w, au_spec)) CHECK(v == 0.0);
    }
    SUBCASE("length-1 window equals frame_vector") {
        FrameFeatures f;
        f.au_intensity[3] = 1.25;
        CHECK(window_vector(window_of({f}), au_spec) == frame_vector(f, au_spec));
    }
    SUBCASE("HOG_AND_AU mean is the concatenation of the per-set means") {
        std::mt19937_64 rng(5);
        std::vector<FrameFeatures> frames;
        for (int i = 0; i < 4; ++i) {
            FrameFeatures f = frame_with_hog(6);
            for (auto& h : *f.hog) h = static_cast<float>(rng() % 100) / 10.0f;
            for (auto& a : f.au_intensity) a = static_cast<double>(rng() % 50) / 10.0;
            frames.push_back(f);
        }
        FeatureSpec both, hog_only, au_only;
        both.attribute_set = AttributeSet::HOG_AND_AU;
        hog_only.attribute_set = AttributeSet::HOG;
        au_only.attribute_set = AttributeSet::AU;
        auto w = window_of(frames);
        auto combined = window_vector(w, both);
        auto hog = window_vector(w, hog_only);
        auto au = window_vector(w, au_only);
        hog.insert(hog.end(), au.begin(), au.end());
        REQUIRE(combined.size() == hog.size());
        for (size_t i = 0; i < combined.size(); ++i) {
            CHECK(combined[i] == doctest::Approx(hog[i]).epsilon(1e-12));
        }
    }
    SUBCASE("empty window") {
        CHECK_THROWS_AS(window_vector(WindowSample{}, au_spec), Error);
    }
}

TEST_CASE("scaler") {
    SUBCASE("constant dimension stores stdev 1 and scales to 0") {
        Scaler s = fit_scaler({{2.0}, {2.0}, {2.0}});
        CHECK(s.stdevs[0] == 1.0);
        CHECK(s.apply({2.0})[0] == 0.0);
    }
    SUBCASE("train {-1, 1}: mean 0, stdev 1, apply(3) = 3") {
        Scaler s = fit_scaler({{-1.0}, {1.0}});
        CHECK(s.means[0] == 0.0);
        CHECK(s.stdevs[0] == 1.0);
        CHECK(s.apply({3.0})[0] == 3.0);
    }
    SUBCASE("dimension mismatch") {
        Scaler s = fit_scaler({{1.0, 2.0}});
        CHECK_THROWS_AS(s.apply({1.0}), Error);
    }
    SUBCASE("fit-then-apply standardizes the training set") {
        std::mt19937_64 rng(9);
        std::normal_distribution<double> noise(5.0, 3.0);
        std::vector<std::vector<double>> train;
        for (int i = 0; i < 200; ++i) train.push_back({noise(rng), noise(rng) * 2.0});
        Scaler s = fit_scaler(train);
        std::vector<double> mean(2, 0.0), var(2, 0.0);
        for (const auto& row : train) {
            auto scaled = s.apply(row);
            for (size_t d = 0; d < 2; ++d) mean[d] += scaled[d];
        }
        for (auto& m : mean) m /= 200.0;
        for (const auto& row : train) {
            auto scaled = s.apply(row);
            for (size_t d = 0; d < 2; ++d) var[d] += (scaled[d] - mean[d]) * (scaled[d] - mean[d]);
        }
        for (size_t d = 0; d < 2; ++d) {
            CHECK(mean[d] == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(std::sqrt(var[d] / 200.0) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("feature matrix file round trip") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "drowsy_matrix_test.dfm";
    std::vector<std::vector<double>> rows = {{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
    save_feature_matrix(path, rows, 2);
    auto loaded = load_feature_matrix(path);
    CHECK(loaded.spec_tag == 2);
    CHECK(loaded.dim == 3);
    REQUIRE(loaded.rows.size() == 2);
    CHECK(loaded.rows[1][2] == 6.0);
    fs::remove(path);
}
