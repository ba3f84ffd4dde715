#include "fogmetry/types.hpp"

#include <array>

namespace fogmetry {

namespace {
constexpr std::array<const char*, kNumActivities> kActivityNames = {
    "Walking", "Jogging", "Upstairs", "Downstairs", "Sitting", "Standing"};
}

const char* activity_name(Activity a) {
    return kActivityNames[static_cast<int>(a)];
}

Activity activity_from_name(std::string_view name) {
    for (int i = 0; i < kNumActivities; ++i) {
        if (name == kActivityNames[i]) return static_cast<Activity>(i);
    }
    throw MalformedRecord("unknown activity label: " + std::string(name));
}

}  // namespace fogmetry
