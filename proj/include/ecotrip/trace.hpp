#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecotrip/errors.hpp"
#include "ecotrip/profile.hpp"

namespace ecotrip {

// One timestamped reading of the engine/vehicle channels.
struct Sample {
    std::int64_t t_ms = 0;
    double speed_kmh = 0.0;
    double rpm = 0.0;
    std::optional<double> maf_gps;
    std::optional<double> map_kpa;
    std::optional<double> iat_c;
    std::optional<double> abs_load_pct;
    std::optional<double> fuel_rate_lph;
    std::optional<double> lat;
    std::optional<double> lon;
};

struct TripMeta {
    std::string id;           // file stem or generator tag
    std::string capture_date; // free-form, empty when unknown
    std::int64_t period_ms = 1000;
    int gap_split_periods = 3; // gaps longer than this many periods split the trip
};

// Fixed-duration run of samples within one trip. Spans reference the owning
// Trip and stay valid for its lifetime.
struct Window {
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0; // exclusive: start_ms + window length
    std::span<const Sample> samples;
    std::span<const double> accel_mps2;
    std::size_t first_index = 0; // index of samples.front() within the trip
};

// Backward finite difference of speed, km/h -> m/s^2. Resets to 0 at every
// segment start.
std::vector<double> derive_acceleration(std::span<const Sample> samples,
                                        std::span<const std::size_t> segment_starts);

// Immutable after construction. Samples are strictly time-ordered; segments
// are the maximal runs not interrupted by a gap > gap_split_periods.
class Trip {
public:
    Trip(std::vector<Sample> samples, VehicleProfile vehicle, TripMeta meta);

    const std::vector<Sample>& samples() const { return samples_; }
    const std::vector<double>& accel_mps2() const { return accel_; }
    const std::vector<std::size_t>& segment_starts() const { return segment_starts_; }
    const VehicleProfile& vehicle() const { return vehicle_; }
    const TripMeta& meta() const { return meta_; }

    std::int64_t duration_ms() const {
        return samples_.back().t_ms - samples_.front().t_ms + meta_.period_ms;
    }

    // Non-overlapping contiguous windows of len_s seconds; the trailing
    // remainder is dropped; windows never span a segment boundary.
    std::vector<Window> windows(int len_s) const; // throws WindowTooShort

private:
    std::vector<Sample> samples_;
    std::vector<double> accel_;
    std::vector<std::size_t> segment_starts_;
    VehicleProfile vehicle_;
    TripMeta meta_;
};

struct RowIssue {
    std::size_t row; // 1-based file line number
    std::string reason;
};

struct IngestOptions {
    bool strict = false;               // bad rows throw instead of being skipped
    std::int64_t period_ms = 1000;     // nominal sampling period
    int gap_split_periods = 3;
    std::string trip_id;               // defaults to the file stem when loading a file
    std::vector<RowIssue>* issues = nullptr; // collects skipped rows when set
};

extern const char* const kTraceCsvHeader;

// Reads the trace CSV format. Timestamps are aligned to the nominal grid;
// interior holes up to gap_split_periods are filled by linear interpolation,
// larger gaps become segment boundaries.
Trip ingest_csv(std::istream& in, const VehicleProfile& vehicle,
                const IngestOptions& opts = {});
Trip ingest_csv_file(const std::string& path, const VehicleProfile& vehicle,
                     const IngestOptions& opts = {});

void emit_csv(const Trip& trip, std::ostream& out);
void emit_csv_file(const Trip& trip, const std::string& path);

} // namespace ecotrip
