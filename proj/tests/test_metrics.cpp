#include <doctest.h>

#include <random>

#include "drowsy/metrics.hpp"

using namespace drowsy;

namespace {

ConfusionMatrix from_counts(std::vector<std::vector<int64_t>> counts) {
    ConfusionMatrix cm;
    cm.counts = std::move(counts);
    return cm;
}

}  // namespace

TEST_CASE("confusion") {
    SUBCASE("perfect predictions form a diagonal matrix") {
        auto cm = confusion({0, 1, 2}, {0, 1, 2}, 3);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                CHECK(cm.counts[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                      (i == j ? 1 : 0));
            }
        }
    }
    SUBCASE("empty lists give a zero matrix") {
        auto cm = confusion({}, {}, 2);
        CHECK(cm.total() == 0);
    }
    SUBCASE("hand-counted 2x2 fixture") {
        auto cm = confusion({0, 0, 1}, {0, 1, 1}, 2);
        CHECK(cm.counts == std::vector<std::vector<int64_t>>{{1, 1}, {0, 1}});
    }
    SUBCASE("length mismatch and unknown label") {
        CHECK_THROWS_AS(confusion({0}, {0, 1}, 2), Error);
        CHECK_THROWS_AS(confusion({0, 2}, {0, 0}, 2), Error);
    }
}

TEST_CASE("weighted metrics on the 3x3 fixture") {
    auto cm = from_counts({{5, 2, 0}, {1, 6, 1}, {0, 2, 7}});
    // (7*(5/6) + 8*(6/10) + 9*(7/8)) / 24
    double expected = (7.0 * (5.0 / 6.0) + 8.0 * (6.0 / 10.0) + 9.0 * (7.0 / 8.0)) / 24.0;
    CHECK(weighted_precision(cm) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(weighted_precision(cm) == doctest::Approx(0.7712).epsilon(1e-4));
    CHECK(weighted_recall(cm) == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(accuracy(cm) == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("weighted metric edge cases") {
    SUBCASE("diagonal matrix scores 1.0 everywhere") {
        auto cm = from_counts({{3, 0}, {0, 5}});
        CHECK(weighted_precision(cm) == 1.0);
        CHECK(weighted_recall(cm) == 1.0);
        CHECK(accuracy(cm) == 1.0);
    }
    SUBCASE("all off-diagonal scores 0") {
        auto cm = from_counts({{0, 3}, {5, 0}});
        CHECK(weighted_precision(cm) == 0.0);
        CHECK(accuracy(cm) == 0.0);
    }
    SUBCASE("never-predicted class contributes precision 0, not NaN") {
        auto cm = from_counts({{2, 0}, {1, 0}});  // column 1 empty
        CHECK(weighted_precision(cm) == doctest::Approx(2.0 / 3.0 * 2.0 / 3.0));
        CHECK(std::isfinite(weighted_precision(cm)));
    }
    SUBCASE("empty matrix") {
        CHECK_THROWS_AS(accuracy(from_counts({{0, 0}, {0, 0}})), Error);
    }
}

TEST_CASE("weighted_recall equals accuracy exactly on random matrices") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 1000; ++trial) {
        size_t k = 2 + rng() % 4;
        std::vector<std::vector<int64_t>> counts(k, std::vector<int64_t>(k));
        int64_t total = 0;
        for (auto& row : counts) {
            for (auto& c : row) {
                c = static_cast<int64_t>(rng() % 50);
                total += c;
            }
        }
        if (total == 0) counts[0][0] = 1;
        auto cm = from_counts(counts);
        CHECK(weighted_recall(cm) == accuracy(cm));  // exact identity
    }
}

TEST_CASE("class permutation leaves the scalar metrics unchanged") {
    std::mt19937_64 rng(79);
    std::vector<int> truth, preds;
    for (int i = 0; i < 300; ++i) {
        truth.push_back(static_cast<int>(rng() % 3));
        preds.push_back(static_cast<int>(rng() % 3));
    }
    auto cm = confusion(truth, preds, 3);

    std::vector<int> perm = {2, 0, 1};
    std::vector<int> truth_p, preds_p;
    for (int t : truth) truth_p.push_back(perm[static_cast<size_t>(t)]);
    for (int p : preds) preds_p.push_back(perm[static_cast<size_t>(p)]);
    auto cm_p = confusion(truth_p, preds_p, 3);

    CHECK(weighted_precision(cm) == doctest::Approx(weighted_precision(cm_p)).epsilon(1e-12));
    CHECK(weighted_recall(cm) == doctest::Approx(weighted_recall(cm_p)).epsilon(1e-12));
    CHECK(accuracy(cm) == doctest::Approx(accuracy(cm_p)).epsilon(1e-12));
}

TEST_CASE("time_predictions") {
    SUBCASE("one sample, one repeat") {
        int calls = 0;
        auto stats = time_predictions([&](const std::vector<double>&) { ++calls; }, {{1.0}}, 1);
        CHECK(stats.samples == 1);
        CHECK(calls == 2);  // warm-up + timed
        CHECK(stats.mean_ms >= 0.0);
    }
    SUBCASE("rejects empty input") {
        CHECK_THROWS_AS(time_predictions([](const std::vector<double>&) {}, {}, 1), Error);
        CHECK_THROWS_AS(time_predictions([](const std::vector<double>&) {}, {{1.0}}, 0), Error);
    }
    SUBCASE("repeated runs agree within noise") {
        auto work = [](const std::vector<double>& v) {
            volatile double acc = 0.0;
            for (int i = 0; i < 20000; ++i) acc = acc + v[0] * i;
        };
        std::vector<std::vector<double>> samples(8, std::vector<double>{1.5});
        auto a = time_predictions(work, samples, 5);
        auto b = time_predictions(work, samples, 5);
        double rel = std::abs(a.mean_ms - b.mean_ms) / std::max(a.mean_ms, b.mean_ms);
        CHECK(rel < 0.5);
        CHECK(a.p95_ms >= 0.0);
    }
}
