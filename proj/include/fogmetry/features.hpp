#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fogmetry/types.hpp"
#include "fogmetry/windowing.hpp"

namespace fogmetry {

inline constexpr int kNumFeatures = 43;
inline constexpr double kDefaultPeakThreshold = 0.1;

// Canonical slot order:
// XAVG,YAVG,ZAVG, XSTD,YSTD,ZSTD, XAAD,YAAD,ZAAD, RESULTANT,
// XPEAK,YPEAK,ZPEAK, XBIN0..XBIN9, YBIN0..YBIN9, ZBIN0..ZBIN9
const std::array<std::string, kNumFeatures>& feature_names();

struct FeatureVector {
    std::array<double, kNumFeatures> values{};
    Activity label = Activity::Walking;
    int user_id = 0;
};

struct FeatureDataset {
    std::vector<FeatureVector> rows;
};

double axis_mean(std::span<const double> samples);
double axis_std(std::span<const double> samples);  // population (divisor N)
double axis_avg_abs_diff(std::span<const double> samples);
double avg_resultant(const Window& window);

// Mean gap (ms) between qualified peaks: strict interior local maxima
// within `threshold` of the window maximum, relative to the window's
// dynamic range. Fewer than 2 qualified peaks -> 0.
double time_between_peaks(std::span<const double> samples,
                          std::span<const std::int64_t> timestamps_ns,
                          double threshold = kDefaultPeakThreshold);

// Fractions over 10 equal-width bins spanning [min, max] of this window.
// A sample on a bin's upper edge goes to the next bin, except the maximum
// which lands in bin 9. Degenerate range -> everything in bin 0.
std::array<double, 10> binned_distribution(std::span<const double> samples);

FeatureVector featurize(const Window& window,
                        double peak_threshold = kDefaultPeakThreshold);

FeatureDataset featurize_all(const std::vector<Window>& windows,
                             double peak_threshold = kDefaultPeakThreshold);

// Canonical CSV: header of the 43 names + user_id,label; values with
// 6 significant digits. This serialization is what deployment measures.
void write_feature_csv(std::ostream& out, const FeatureDataset& ds);
std::string feature_csv_string(const FeatureDataset& ds);
FeatureDataset read_feature_csv(std::istream& in);

}  // namespace fogmetry
