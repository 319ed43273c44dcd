#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "drowsy/attention.hpp"

using namespace drowsy;

TEST_CASE("closure_from_au45 linear map") {
    CHECK(closure_from_au45(0.0) == 0.0);
    CHECK(closure_from_au45(5.0) == 1.0);
    CHECK(closure_from_au45(2.5) == 0.5);
}

TEST_CASE("perclos") {
    SUBCASE("all closed") {
        ClosureSeries s;
        s.values.assign(1800, 1.0);
        s.fps = 30.0;
        auto reports = perclos(s, 60.0, 60.0);
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].p70 == 1.0);
        CHECK(reports[0].p80 == 1.0);
        CHECK(reports[0].em == 1.0);
    }
    SUBCASE("all open") {
        ClosureSeries s;
        s.values.assign(1800, 0.0);
        s.fps = 30.0;
        auto reports = perclos(s, 60.0, 60.0);
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].p70 == 0.0);
        CHECK(reports[0].p80 == 0.0);
        CHECK(reports[0].em == 0.0);
    }
    SUBCASE("30% closed signal") {
        ClosureSeries s;
        s.fps = 30.0;
        s.values.assign(540, 1.0);
        s.values.resize(1800, 0.0);
        auto reports = perclos(s, 60.0, 60.0);
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].p70 == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(reports[0].p80 == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(reports[0].em == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(reports[0].window_start_s == 0.0);
        CHECK(reports[0].window_end_s == 60.0);
    }
    SUBCASE("series shorter than one window") {
        ClosureSeries s;
        s.values.assign(10, 0.5);
        s.fps = 30.0;
        CHECK_THROWS_AS(perclos(s, 60.0, 60.0), Error);
    }
    SUBCASE("p80 <= p70 on random series") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            ClosureSeries s;
            s.fps = 10.0;
            size_t n = 100 + rng() % 400;
            for (size_t i = 0; i < n; ++i) s.values.push_back(u(rng));
            for (const auto& r : perclos(s, 10.0, 5.0)) {
                CHECK(r.p80 <= r.p70);
                CHECK(r.em >= 0.0);
                CHECK(r.em <= 1.0);
            }
        }
    }
    SUBCASE("concatenation of two windows equals per-window reports") {
        std::mt19937_64 rng(19);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        ClosureSeries a, b, both;
        a.fps = b.fps = both.fps = 10.0;
        for (int i = 0; i < 100; ++i) a.values.push_back(u(rng));
        for (int i = 0; i < 100; ++i) b.values.push_back(u(rng));
        both.values = a.values;
        both.values.insert(both.values.end(), b.values.begin(), b.values.end());

        auto ra = perclos(a, 10.0, 10.0);
        auto rb = perclos(b, 10.0, 10.0);
        auto rc = perclos(both, 10.0, 10.0);
        REQUIRE(rc.size() == 2);
        CHECK(rc[0].p70 == ra[0].p70);
        CHECK(rc[0].em == ra[0].em);
        CHECK(rc[1].p80 == rb[0].p80);
        CHECK(rc[1].em == rb[0].em);
    }
    SUBCASE("invalid frames are excluded and reported") {
        ClosureSeries s;
        s.fps = 10.0;
        s.values.assign(20, 1.0);
        s.valid.assign(20, true);
        for (int i = 0; i < 15; ++i) s.valid[static_cast<size_t>(i)] = false;
        auto reports = perclos(s, 2.0, 2.0);
        CHECK(reports[0].invalid_fraction > 0.5);
        CHECK_FALSE(reports[0].reliable);
    }
}

TEST_CASE("classify_scale partitions the 9-point scale") {
    CHECK(classify_scale(1) == ClassLabel::Alert);
    CHECK(classify_scale(2) == ClassLabel::Alert);
    CHECK(classify_scale(3) == ClassLabel::Alert);
    CHECK(classify_scale(4) == ClassLabel::Unlabeled);
    CHECK(classify_scale(5) == ClassLabel::Unlabeled);
    CHECK(classify_scale(6) == ClassLabel::LowVigilance);
    CHECK(classify_scale(7) == ClassLabel::LowVigilance);
    CHECK(classify_scale(8) == ClassLabel::Drowsy);
    CHECK(classify_scale(9) == ClassLabel::Drowsy);
    CHECK_THROWS_AS(classify_scale(0), Error);
    CHECK_THROWS_AS(classify_scale(10), Error);
}

TEST_CASE("centroid_deviation") {
    SUBCASE("constant position never deviates") {
        std::vector<Point2> track(5, Point2{3.0, 4.0});
        for (double d : centroid_deviation(track)) CHECK(d == 0.0);
    }
    SUBCASE("two points, running mean") {
        auto d = centroid_deviation({{0, 0}, {2, 0}});
        REQUIRE(d.size() == 2);
        CHECK(d[0] == 0.0);
        CHECK(d[1] == doctest::Approx(1.0));  // mean (1,0), point (2,0)
    }
    SUBCASE("three points hand computation") {
        auto d = centroid_deviation({{0, 0}, {0, 0}, {3, 4}});
        CHECK(d[2] == doctest::Approx(std::sqrt(4.0 + 64.0 / 9.0)));
    }
    SUBCASE("global mean mode") {
        auto d = centroid_deviation({{0, 0}, {2, 0}}, true);
        CHECK(d[0] == doctest::Approx(1.0));
        CHECK(d[1] == doctest::Approx(1.0));
    }
    SUBCASE("empty track") {
        CHECK_THROWS_AS(centroid_deviation({}), Error);
    }
}

TEST_CASE("perclos csv export") {
    PerclosReport r;
    r.window_start_s = 0.0;
    r.window_end_s = 60.0;
    r.p70 = 0.5;
    r.p80 = 0.25;
    r.em = 0.4;
    std::ostringstream out;
    write_perclos_csv(out, {r});
    CHECK(out.str() ==
          "window_start_s,window_end_s,p70,p80,em,invalid_fraction\n0,60,0.5,0.25,0.4,0\n");
}
