#include "fogmetry/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>

#include "fogmetry/rng.hpp"

namespace fogmetry {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

long long parse_int(std::string_view s) {
    s = trim(s);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw MalformedRecord("bad integer field: " + std::string(s));
    return v;
}

double parse_real(std::string_view s) {
    s = trim(s);
    if (s.empty()) throw MalformedRecord("empty numeric field");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw MalformedRecord("bad real field: " + std::string(s));
    if (!std::isfinite(v)) throw MalformedRecord("non-finite value: " + std::string(s));
    return v;
}

}  // namespace

RawReading parse_line(std::string_view line) {
    std::string_view rec = trim(line);
    if (!rec.empty() && rec.back() == ';') rec = trim(rec.substr(0, rec.size() - 1));
    if (rec.empty()) throw MalformedRecord("empty record");

    auto fields = split(rec, ',');
    if (fields.size() != 6)
        throw MalformedRecord("expected 6 fields, got " + std::to_string(fields.size()));

    RawReading r;
    long long user = parse_int(fields[0]);
    if (user <= 0) throw MalformedRecord("user id must be positive");
    r.user_id = static_cast<int>(user);
    r.activity = activity_from_name(trim(fields[1]));
    long long ts = parse_int(fields[2]);
    if (ts < 0) throw MalformedRecord("negative timestamp");
    r.timestamp_ns = ts;
    r.ax = parse_real(fields[3]);
    r.ay = parse_real(fields[4]);
    r.az = parse_real(fields[5]);
    return r;
}

std::string format_reading(const RawReading& r) {
    char buf[160];
    int n = std::snprintf(buf, sizeof(buf), "%d,%s,%lld,%.6g,%.6g,%.6g;",
                          r.user_id, activity_name(r.activity),
                          static_cast<long long>(r.timestamp_ns), r.ax, r.ay, r.az);
    return std::string(buf, static_cast<std::size_t>(n));
}

std::pair<std::vector<RawReading>, IngestReport> load_raw(std::istream& source) {
    if (source.fail()) throw IoFailure("unreadable source");

    std::vector<RawReading> readings;
    IngestReport report;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        std::string_view body = trim(line);
        if (body.empty()) continue;

        // The real file mixes one and several `;`-terminated records per line.
        std::vector<RawReading> line_readings;
        bool ok = true;
        for (std::string_view rec : split(body, ';')) {
            rec = trim(rec);
            if (rec.empty()) continue;
            try {
                line_readings.push_back(parse_line(rec));
            } catch (const MalformedRecord&) {
                ok = false;
                break;
            }
        }
        if (ok && !line_readings.empty()) {
            ++report.accepted;
            readings.insert(readings.end(), line_readings.begin(), line_readings.end());
        } else {
            ++report.rejected;
            report.rejected_line_numbers.push_back(line_no);
        }
    }
    if (source.bad()) throw IoFailure("read error");
    return {std::move(readings), report};
}

namespace {

struct Waveform {
    double amp_x, amp_y, amp_z;
    double freq_hz;
    double noise;
    double off_x, off_y, off_z;  // constant offsets (gravity for static poses)
};

// Per-activity parameters; distinct amplitude/frequency/offsets keep the
// classes separable for the downstream models.
constexpr Waveform kWaveforms[kNumActivities] = {
    // Walking
    {3.0, 2.0, 1.2, 1.8, 0.30, 0.0, 9.8, 0.0},
    // Jogging
    {6.5, 4.5, 3.0, 2.8, 0.50, 0.0, 9.8, 0.0},
    // Upstairs
    {2.2, 3.2, 1.8, 1.2, 0.40, 1.5, 9.0, 0.5},
    // Downstairs
    {1.6, 2.4, 2.6, 1.6, 0.40, -1.5, 9.0, -0.5},
    // Sitting
    {0.05, 0.05, 0.05, 0.3, 0.05, 0.3, 2.0, 9.6},
    // Standing
    {0.05, 0.05, 0.05, 0.3, 0.05, 0.1, 9.7, 0.8},
};

}  // namespace

std::vector<RawReading> generate_synthetic(const SynthConfig& cfg) {
    if (cfg.n_users < 1 || cfg.windows_per_activity < 1 || cfg.window_size < 1 ||
        !(cfg.sample_rate_hz > 0.0))
        throw std::invalid_argument("generate_synthetic: bad configuration");

    std::mt19937_64 gen(cfg.seed);
    const double dt_s = 1.0 / cfg.sample_rate_hz;
    const auto dt_ns = static_cast<std::int64_t>(std::llround(dt_s * 1e9));
    const std::int64_t samples_per_group =
        static_cast<std::int64_t>(cfg.windows_per_activity) * cfg.window_size;

    std::vector<RawReading> out;
    out.reserve(static_cast<std::size_t>(cfg.n_users) * kNumActivities * samples_per_group);

    std::int64_t group_index = 0;
    for (int user = 1; user <= cfg.n_users; ++user) {
        for (int act = 0; act < kNumActivities; ++act, ++group_index) {
            const Waveform& w = kWaveforms[act];
            // Separate groups on the time axis so streams never interleave.
            const std::int64_t t0 = group_index * (samples_per_group + 1000) * dt_ns;
            const double phase = uniform_in(gen, 0.0, 2.0 * M_PI);
            for (std::int64_t i = 0; i < samples_per_group; ++i) {
                const double t = static_cast<double>(i) * dt_s;
                const double arg = 2.0 * M_PI * w.freq_hz * t + phase;
                RawReading r;
                r.user_id = user;
                r.activity = static_cast<Activity>(act);
                r.timestamp_ns = t0 + i * dt_ns;
                r.ax = w.off_x + w.amp_x * std::sin(arg) + w.noise * gaussian(gen);
                r.ay = w.off_y + w.amp_y * std::sin(arg + 0.9) + w.noise * gaussian(gen);
                r.az = w.off_z + w.amp_z * std::cos(arg) + w.noise * gaussian(gen);
                out.push_back(r);
            }
        }
    }
    return out;
}

}  // namespace fogmetry
