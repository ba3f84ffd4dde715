#pragma once

#include <cstddef>
#include <vector>

#include "fogmetry/types.hpp"

namespace fogmetry {

inline constexpr int kDefaultWindowSize = 200;

// Fixed-length run of readings from one (user, activity) stream,
// timestamps non-decreasing.
struct Window {
    int user_id = 0;
    Activity activity = Activity::Walking;
    std::vector<RawReading> readings;  // exactly window_size entries
};

// Groups readings by (user, activity) in first-appearance order, stable-sorts
// each group by timestamp, and cuts consecutive non-overlapping chunks of
// window_size. Trailing partial chunks are dropped.
std::vector<Window> segment(const std::vector<RawReading>& readings,
                            int window_size = kDefaultWindowSize);

struct TraceStats {
    std::size_t total = 0;
    double mean_per_user = 0.0;
    double stddev_per_user = 0.0;  // population
};

TraceStats trace_stats(const std::vector<Window>& windows);

}  // namespace fogmetry
