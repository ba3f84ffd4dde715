#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fogmetry/types.hpp"

namespace fogmetry {

struct IngestReport {
    std::size_t accepted = 0;   // non-empty lines that parsed cleanly
    std::size_t rejected = 0;
    std::vector<std::size_t> rejected_line_numbers;  // 1-based
};

// Parses one WISDM-style record: `user,activity,timestamp,x,y,z;`
// Trailing semicolon and surrounding whitespace are tolerated.
// Throws MalformedRecord.
RawReading parse_line(std::string_view line);

// Serializes a reading back to the record grammar (6 significant digits
// on the acceleration values, trailing semicolon).
std::string format_reading(const RawReading& r);

// Streaming parse. Malformed lines are skipped and counted. A physical
// line may hold several `;`-separated records; if any of them is bad the
// whole line is rejected. Throws IoFailure if the stream is already bad.
std::pair<std::vector<RawReading>, IngestReport> load_raw(std::istream& source);

struct SynthConfig {
    int n_users = 1;
    int windows_per_activity = 1;
    double sample_rate_hz = 20.0;
    std::uint64_t seed = 42;
    int window_size = 200;
};

// Deterministic per-activity waveforms (distinct sinusoids + seeded noise,
// gravity offset on one axis for the static activities). Identical config
// gives an identical sequence.
std::vector<RawReading> generate_synthetic(const SynthConfig& cfg);

}  // namespace fogmetry
