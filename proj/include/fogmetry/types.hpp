#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fogmetry {

enum class Activity : int {
    Walking = 0,
    Jogging = 1,
    Upstairs = 2,
    Downstairs = 3,
    Sitting = 4,
    Standing = 5,
};

inline constexpr int kNumActivities = 6;

// Thrown by parse_line and friends on bad records.
struct MalformedRecord : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyTrainingSet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedKind : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooFewRows : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* activity_name(Activity a);

// Throws MalformedRecord on an unknown label.
Activity activity_from_name(std::string_view name);

// One timestamped tri-axial accelerometer sample.
struct RawReading {
    int user_id = 0;            // positive
    Activity activity = Activity::Walking;
    std::int64_t timestamp_ns = 0;
    double ax = 0.0, ay = 0.0, az = 0.0;   // m/s^2, finite

    bool operator==(const RawReading&) const = default;
};

}  // namespace fogmetry
