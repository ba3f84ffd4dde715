#include <algorithm>
#include <random>

#include "doctest.h"
#include "fogmetry/ingest.hpp"
#include "fogmetry/windowing.hpp"

using namespace fogmetry;

namespace {

std::vector<RawReading> make_group(int user, Activity act, int n, std::int64_t t0 = 0) {
    std::vector<RawReading> out;
    for (int i = 0; i < n; ++i) {
        RawReading r;
        r.user_id = user;
        r.activity = act;
        r.timestamp_ns = t0 + static_cast<std::int64_t>(i) * 50'000'000;
        r.ax = i * 0.01;
        out.push_back(r);
    }
    return out;
}

}  // namespace

TEST_CASE("segment cuts non-overlapping windows and drops the remainder") {
    auto readings = make_group(1, Activity::Walking, 650);
    auto windows = segment(readings);
    CHECK(windows.size() == 3);
    for (const auto& w : windows) CHECK(w.readings.size() == 200);
}

TEST_CASE("segment below window size gives nothing") {
    CHECK(segment(make_group(1, Activity::Walking, 199)).empty());
    CHECK(segment({}).empty());
}

TEST_CASE("segment groups by user and activity, first-appearance order") {
    auto a = make_group(2, Activity::Jogging, 200);
    auto b = make_group(1, Activity::Walking, 200);
    std::vector<RawReading> all;
    all.insert(all.end(), a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    auto windows = segment(all);
    REQUIRE(windows.size() == 2);
    CHECK(windows[0].user_id == 2);
    CHECK(windows[1].user_id == 1);
}

TEST_CASE("windows satisfy invariants under shuffled interleaved input") {
    std::vector<RawReading> all;
    for (int user = 1; user <= 3; ++user)
        for (int act = 0; act < 6; ++act) {
            auto g = make_group(user, static_cast<Activity>(act), 450);
            all.insert(all.end(), g.begin(), g.end());
        }
    const std::size_t total = all.size();

    std::mt19937_64 gen(5);
    for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[gen() % i]);

    auto windows = segment(all);
    CHECK(windows.size() == 3 * 6 * 2);  // 450 = 2*200 + 50 per group
    std::size_t in_windows = 0;
    for (const auto& w : windows) {
        REQUIRE(w.readings.size() == 200);
        in_windows += 200;
        for (std::size_t i = 0; i < w.readings.size(); ++i) {
            CHECK(w.readings[i].user_id == w.user_id);
            CHECK(w.readings[i].activity == w.activity);
            if (i > 0) CHECK(w.readings[i].timestamp_ns >= w.readings[i - 1].timestamp_ns);
        }
    }
    // conservation: windowed + dropped = input
    CHECK(in_windows + 3 * 6 * 50 == total);
}

TEST_CASE("segment is independent of group interleaving") {
    auto a = make_group(1, Activity::Walking, 400);
    auto b = make_group(2, Activity::Sitting, 400);
    std::vector<RawReading> seq, mixed;
    seq.insert(seq.end(), a.begin(), a.end());
    seq.insert(seq.end(), b.begin(), b.end());
    for (std::size_t i = 0; i < 400; ++i) {
        mixed.push_back(a[i]);
        mixed.push_back(b[i]);
    }
    auto w1 = segment(seq);
    auto w2 = segment(mixed);
    REQUIRE(w1.size() == w2.size());
    for (std::size_t i = 0; i < w1.size(); ++i) CHECK(w1[i].readings == w2[i].readings);
}

TEST_CASE("trace_stats hand cases") {
    std::vector<Window> windows;
    auto add = [&](int user, int count) {
        for (int i = 0; i < count; ++i) {
            Window w;
            w.user_id = user;
            windows.push_back(w);
        }
    };
    SUBCASE("two users, 3 and 5") {
        add(1, 3);
        add(2, 5);
        auto s = trace_stats(windows);
        CHECK(s.total == 8);
        CHECK(s.mean_per_user == doctest::Approx(4.0));
        CHECK(s.stddev_per_user == doctest::Approx(1.0));
    }
    SUBCASE("single user") {
        add(9, 7);
        auto s = trace_stats(windows);
        CHECK(s.total == 7);
        CHECK(s.mean_per_user == doctest::Approx(7.0));
        CHECK(s.stddev_per_user == doctest::Approx(0.0));
    }
    SUBCASE("empty") {
        auto s = trace_stats(windows);
        CHECK(s.total == 0);
        CHECK(s.mean_per_user == 0.0);
        CHECK(s.stddev_per_user == 0.0);
    }
}

TEST_CASE("custom window size") {
    auto windows = segment(make_group(1, Activity::Walking, 25), 10);
    CHECK(windows.size() == 2);
    CHECK_THROWS(segment({}, 1));
}
