#include "fogmetry/windowing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace fogmetry {

std::vector<Window> segment(const std::vector<RawReading>& readings, int window_size) {
    if (window_size < 2) throw std::invalid_argument("window_size must be >= 2");

    using Key = std::pair<int, int>;  // (user, activity)
    std::map<Key, std::size_t> group_of;
    std::vector<std::vector<RawReading>> groups;  // first-appearance order
    for (const RawReading& r : readings) {
        Key key{r.user_id, static_cast<int>(r.activity)};
        auto [it, inserted] = group_of.try_emplace(key, groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(r);
    }

    std::vector<Window> windows;
    for (auto& group : groups) {
        std::stable_sort(group.begin(), group.end(),
                         [](const RawReading& a, const RawReading& b) {
                             return a.timestamp_ns < b.timestamp_ns;
                         });
        const std::size_t n = group.size() / static_cast<std::size_t>(window_size);
        for (std::size_t w = 0; w < n; ++w) {
            Window win;
            win.user_id = group.front().user_id;
            win.activity = group.front().activity;
            auto begin = group.begin() + static_cast<std::ptrdiff_t>(w * window_size);
            win.readings.assign(begin, begin + window_size);
            windows.push_back(std::move(win));
        }
    }
    return windows;
}

TraceStats trace_stats(const std::vector<Window>& windows) {
    TraceStats stats;
    stats.total = windows.size();
    if (windows.empty()) return stats;

    std::map<int, std::size_t> per_user;
    for (const Window& w : windows) ++per_user[w.user_id];

    const double n_users = static_cast<double>(per_user.size());
    double sum = 0.0;
    for (auto& [user, count] : per_user) sum += static_cast<double>(count);
    stats.mean_per_user = sum / n_users;

    double ss = 0.0;
    for (auto& [user, count] : per_user) {
        const double d = static_cast<double>(count) - stats.mean_per_user;
        ss += d * d;
    }
    stats.stddev_per_user = std::sqrt(ss / n_users);
    return stats;
}

}  // namespace fogmetry
