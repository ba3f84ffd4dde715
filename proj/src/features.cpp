#include "fogmetry/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "fogmetry/ingest.hpp"

namespace fogmetry {

const std::array<std::string, kNumFeatures>& feature_names() {
    static const std::array<std::string, kNumFeatures> names = [] {
        std::array<std::string, kNumFeatures> n;
        int i = 0;
        for (const char* stat : {"AVG", "STD", "AAD"})
            for (const char* axis : {"X", "Y", "Z"}) n[i++] = std::string(axis) + stat;
        n[i++] = "RESULTANT";
        for (const char* axis : {"X", "Y", "Z"}) n[i++] = std::string(axis) + "PEAK";
        for (const char* axis : {"X", "Y", "Z"})
            for (int b = 0; b < 10; ++b) n[i++] = std::string(axis) + "BIN" + std::to_string(b);
        return n;
    }();
    return names;
}

double axis_mean(std::span<const double> samples) {
    double sum = 0.0;
    for (double s : samples) sum += s;
    return samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
}

double axis_std(std::span<const double> samples) {
    if (samples.empty()) return 0.0;
    const double mu = axis_mean(samples);
    double ss = 0.0;
    for (double s : samples) ss += (s - mu) * (s - mu);
    return std::sqrt(ss / static_cast<double>(samples.size()));
}

double axis_avg_abs_diff(std::span<const double> samples) {
    if (samples.empty()) return 0.0;
    const double mu = axis_mean(samples);
    double sum = 0.0;
    for (double s : samples) sum += std::fabs(s - mu);
    return sum / static_cast<double>(samples.size());
}

double avg_resultant(const Window& window) {
    if (window.readings.empty()) return 0.0;
    double sum = 0.0;
    for (const RawReading& r : window.readings)
        sum += std::sqrt(r.ax * r.ax + r.ay * r.ay + r.az * r.az);
    return sum / static_cast<double>(window.readings.size());
}

double time_between_peaks(std::span<const double> samples,
                          std::span<const std::int64_t> timestamps_ns,
                          double threshold) {
    const std::size_t n = samples.size();
    if (n < 3) return 0.0;

    const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
    const double cutoff = *max_it - threshold * (*max_it - *min_it);

    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (samples[i] > samples[i - 1] && samples[i] > samples[i + 1] &&
            samples[i] >= cutoff) {
            peaks.push_back(i);
        }
    }
    if (peaks.size() < 2) return 0.0;

    double sum_ms = 0.0;
    for (std::size_t p = 1; p < peaks.size(); ++p) {
        sum_ms += static_cast<double>(timestamps_ns[peaks[p]] - timestamps_ns[peaks[p - 1]]) / 1e6;
    }
    return sum_ms / static_cast<double>(peaks.size() - 1);
}

std::array<double, 10> binned_distribution(std::span<const double> samples) {
    std::array<double, 10> bins{};
    if (samples.empty()) return bins;

    const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *min_it, hi = *max_it;
    if (lo == hi) {
        bins[0] = 1.0;
        return bins;
    }
    const double width = (hi - lo) / 10.0;
    for (double s : samples) {
        // half-open bins [lo+k*w, lo+(k+1)*w), maximum closed into bin 9
        int k = 9;
        for (int b = 0; b < 9; ++b) {
            if (s < lo + width * static_cast<double>(b + 1)) {
                k = b;
                break;
            }
        }
        bins[static_cast<std::size_t>(k)] += 1.0;
    }
    const double n = static_cast<double>(samples.size());
    for (double& b : bins) b /= n;
    return bins;
}

FeatureVector featurize(const Window& window, double peak_threshold) {
    const std::size_t n = window.readings.size();
    std::vector<double> x(n), y(n), z(n);
    std::vector<std::int64_t> ts(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = window.readings[i].ax;
        y[i] = window.readings[i].ay;
        z[i] = window.readings[i].az;
        ts[i] = window.readings[i].timestamp_ns;
    }

    FeatureVector fv;
    fv.label = window.activity;
    fv.user_id = window.user_id;

    const std::array<std::span<const double>, 3> axes = {x, y, z};
    int i = 0;
    for (auto axis : axes) fv.values[i++] = axis_mean(axis);
    for (auto axis : axes) fv.values[i++] = axis_std(axis);
    for (auto axis : axes) fv.values[i++] = axis_avg_abs_diff(axis);
    fv.values[i++] = avg_resultant(window);
    for (auto axis : axes) fv.values[i++] = time_between_peaks(axis, ts, peak_threshold);
    for (auto axis : axes) {
        for (double b : binned_distribution(axis)) fv.values[i++] = b;
    }
    return fv;
}

FeatureDataset featurize_all(const std::vector<Window>& windows, double peak_threshold) {
    FeatureDataset ds;
    ds.rows.reserve(windows.size());
    for (const Window& w : windows) ds.rows.push_back(featurize(w, peak_threshold));
    return ds;
}

void write_feature_csv(std::ostream& out, const FeatureDataset& ds) {
    const auto& names = feature_names();
    for (int i = 0; i < kNumFeatures; ++i) out << names[i] << ',';
    out << "user_id,label\n";

    char buf[32];
    for (const FeatureVector& row : ds.rows) {
        for (double v : row.values) {
            std::snprintf(buf, sizeof(buf), "%.6g", v);
            out << buf << ',';
        }
        out << row.user_id << ',' << activity_name(row.label) << '\n';
    }
}

std::string feature_csv_string(const FeatureDataset& ds) {
    std::ostringstream os;
    write_feature_csv(os, ds);
    return os.str();
}

FeatureDataset read_feature_csv(std::istream& in) {
    if (in.fail()) throw IoFailure("unreadable feature CSV");
    FeatureDataset ds;
    std::string line;
    if (!std::getline(in, line)) return ds;  // header (or empty stream)

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        FeatureVector row;
        for (int i = 0; i < kNumFeatures; ++i) {
            if (!std::getline(ls, field, ',')) throw MalformedRecord("short CSV row");
            row.values[static_cast<std::size_t>(i)] = std::stod(field);
        }
        if (!std::getline(ls, field, ',')) throw MalformedRecord("missing user_id");
        row.user_id = std::stoi(field);
        if (!std::getline(ls, field)) throw MalformedRecord("missing label");
        row.label = activity_from_name(field);
        ds.rows.push_back(row);
    }
    return ds;
}

}  // namespace fogmetry
