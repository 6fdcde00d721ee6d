#include "ecotrip/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ecotrip/obd.hpp"
#include "ecotrip/text.hpp"

namespace ecotrip {

const char* const kTraceCsvHeader =
    "t_ms,speed_kmh,rpm,maf_gps,map_kpa,iat_c,abs_load_pct,fuel_rate_lph,lat,lon";

namespace {

bool in_channel_range(obd::Channel c, double v) {
    const auto r = obd::range_of(c);
    return v >= r.lo && v <= r.hi;
}

// Range check for a fully assembled sample; empty string when fine.
std::string check_sample(const Sample& s) {
    if (!in_channel_range(obd::Channel::Speed, s.speed_kmh)) return "speed_kmh out of range";
    if (!in_channel_range(obd::Channel::Rpm, s.rpm)) return "rpm out of range";
    if (s.maf_gps && !in_channel_range(obd::Channel::Maf, *s.maf_gps)) return "maf_gps out of range";
    if (s.map_kpa && !in_channel_range(obd::Channel::Map, *s.map_kpa)) return "map_kpa out of range";
    if (s.iat_c && !in_channel_range(obd::Channel::Iat, *s.iat_c)) return "iat_c out of range";
    if (s.abs_load_pct && !in_channel_range(obd::Channel::AbsLoad, *s.abs_load_pct)) {
        return "abs_load_pct out of range";
    }
    if (s.fuel_rate_lph && !in_channel_range(obd::Channel::FuelRate, *s.fuel_rate_lph)) {
        return "fuel_rate_lph out of range";
    }
    if (s.lat && !(*s.lat >= -90.0 && *s.lat <= 90.0)) return "lat out of range";
    if (s.lon && !(*s.lon >= -180.0 && *s.lon <= 180.0)) return "lon out of range";
    return {};
}

std::optional<double> lerp_opt(const std::optional<double>& a,
                               const std::optional<double>& b, double f) {
    if (!a || !b) return std::nullopt;
    return *a + (*b - *a) * f;
}

Sample lerp_sample(const Sample& a, const Sample& b, std::int64_t t) {
    const double f = static_cast<double>(t - a.t_ms) /
                     static_cast<double>(b.t_ms - a.t_ms);
    Sample s;
    s.t_ms = t;
    s.speed_kmh = a.speed_kmh + (b.speed_kmh - a.speed_kmh) * f;
    s.rpm = a.rpm + (b.rpm - a.rpm) * f;
    s.maf_gps = lerp_opt(a.maf_gps, b.maf_gps, f);
    s.map_kpa = lerp_opt(a.map_kpa, b.map_kpa, f);
    s.iat_c = lerp_opt(a.iat_c, b.iat_c, f);
    s.abs_load_pct = lerp_opt(a.abs_load_pct, b.abs_load_pct, f);
    s.fuel_rate_lph = lerp_opt(a.fuel_rate_lph, b.fuel_rate_lph, f);
    s.lat = lerp_opt(a.lat, b.lat, f);
    s.lon = lerp_opt(a.lon, b.lon, f);
    return s;
}

struct ColumnMap {
    int t = -1, speed = -1, rpm = -1;
    int maf = -1, map = -1, iat = -1, load = -1, fuel = -1, lat = -1, lon = -1;
};

ColumnMap read_header(const std::string& line) {
    ColumnMap cols;
    const auto names = text::split(text::trim(line), ',');
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto n = text::trim(names[i]);
        const int idx = static_cast<int>(i);
        if (n == "t_ms") cols.t = idx;
        else if (n == "speed_kmh") cols.speed = idx;
        else if (n == "rpm") cols.rpm = idx;
        else if (n == "maf_gps") cols.maf = idx;
        else if (n == "map_kpa") cols.map = idx;
        else if (n == "iat_c") cols.iat = idx;
        else if (n == "abs_load_pct") cols.load = idx;
        else if (n == "fuel_rate_lph") cols.fuel = idx;
        else if (n == "lat") cols.lat = idx;
        else if (n == "lon") cols.lon = idx;
        else throw ParseError("unknown trace column '" + std::string(n) + "'");
    }
    if (cols.t < 0) throw MissingColumn("trace is missing mandatory column t_ms");
    if (cols.speed < 0) throw MissingColumn("trace is missing mandatory column speed_kmh");
    if (cols.rpm < 0) throw MissingColumn("trace is missing mandatory column rpm");
    return cols;
}

bool get_opt(const std::vector<std::string_view>& fields, int idx,
             std::optional<double>& out) {
    out.reset();
    if (idx < 0 || idx >= static_cast<int>(fields.size())) return true;
    const auto f = text::trim(fields[idx]);
    if (f.empty()) return true;
    double v = 0.0;
    if (!text::parse_double(f, v)) return false;
    out = v;
    return true;
}

} // namespace

std::vector<double> derive_acceleration(std::span<const Sample> samples,
                                        std::span<const std::size_t> segment_starts) {
    std::vector<double> accel(samples.size(), 0.0);
    std::size_t seg = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        while (seg + 1 < segment_starts.size() && segment_starts[seg + 1] <= i) ++seg;
        if (seg < segment_starts.size() && segment_starts[seg] == i) {
            continue; // segment start, a = 0
        }
        const double dv_ms = (samples[i].speed_kmh - samples[i - 1].speed_kmh) / 3.6;
        const double dt_s =
            static_cast<double>(samples[i].t_ms - samples[i - 1].t_ms) / 1000.0;
        accel[i] = dv_ms / dt_s;
    }
    return accel;
}

Trip::Trip(std::vector<Sample> samples, VehicleProfile vehicle, TripMeta meta)
    : samples_(std::move(samples)), vehicle_(std::move(vehicle)), meta_(std::move(meta)) {
    if (samples_.size() < 2) {
        throw EmptyTrace("trip needs at least 2 samples, got " +
                         std::to_string(samples_.size()));
    }
    if (meta_.period_ms <= 0) throw Error("trip: sampling period must be positive");
    segment_starts_.push_back(0);
    const std::int64_t max_gap = meta_.period_ms * meta_.gap_split_periods;
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        const std::int64_t dt = samples_[i].t_ms - samples_[i - 1].t_ms;
        if (dt <= 0) {
            throw NonMonotoneTime("timestamps not strictly increasing at sample " +
                                  std::to_string(i));
        }
        if (dt > max_gap) segment_starts_.push_back(i);
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const std::string why = check_sample(samples_[i]);
        if (!why.empty()) {
            throw Error("sample " + std::to_string(i) + ": " + why);
        }
    }
    accel_ = derive_acceleration(samples_, segment_starts_);
}

std::vector<Window> Trip::windows(int len_s) const {
    const std::int64_t len_ms = static_cast<std::int64_t>(len_s) * 1000;
    if (len_ms < meta_.period_ms) {
        throw WindowTooShort("window of " + std::to_string(len_s) +
                             " s is shorter than the sampling period");
    }
    if (len_ms % meta_.period_ms != 0) {
        throw WindowTooShort("window length must be a multiple of the sampling period");
    }
    const std::size_t k = static_cast<std::size_t>(len_ms / meta_.period_ms);

    std::vector<Window> out;
    for (std::size_t seg = 0; seg < segment_starts_.size(); ++seg) {
        const std::size_t begin = segment_starts_[seg];
        const std::size_t end = seg + 1 < segment_starts_.size()
                                    ? segment_starts_[seg + 1]
                                    : samples_.size();
        for (std::size_t i = begin; i + k <= end; i += k) {
            Window w;
            w.start_ms = samples_[i].t_ms;
            w.end_ms = w.start_ms + len_ms;
            w.samples = std::span<const Sample>(samples_).subspan(i, k);
            w.accel_mps2 = std::span<const double>(accel_).subspan(i, k);
            w.first_index = i;
            out.push_back(w);
        }
    }
    return out;
}

Trip ingest_csv(std::istream& in, const VehicleProfile& vehicle,
                const IngestOptions& opts) {
    std::string line;
    if (!std::getline(in, line)) throw EmptyTrace("trace has no header row");
    const ColumnMap cols = read_header(line);

    auto reject = [&](std::size_t row, const std::string& why) {
        if (opts.strict) {
            throw ParseError("row " + std::to_string(row) + ": " + why);
        }
        if (opts.issues) opts.issues->push_back({row, why});
    };

    std::vector<Sample> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto trimmed = text::trim(line);
        if (trimmed.empty()) continue;
        const auto fields = text::split(trimmed, ',');
        auto field = [&](int idx) -> std::string_view {
            return idx >= 0 && idx < static_cast<int>(fields.size()) ? fields[idx]
                                                                     : std::string_view{};
        };

        Sample s;
        if (!text::parse_int64(field(cols.t), s.t_ms)) {
            reject(lineno, "unparseable t_ms");
            continue;
        }
        if (!text::parse_double(field(cols.speed), s.speed_kmh)) {
            reject(lineno, "unparseable speed_kmh");
            continue;
        }
        if (!text::parse_double(field(cols.rpm), s.rpm)) {
            reject(lineno, "unparseable rpm");
            continue;
        }
        if (!get_opt(fields, cols.maf, s.maf_gps) ||
            !get_opt(fields, cols.map, s.map_kpa) ||
            !get_opt(fields, cols.iat, s.iat_c) ||
            !get_opt(fields, cols.load, s.abs_load_pct) ||
            !get_opt(fields, cols.fuel, s.fuel_rate_lph) ||
            !get_opt(fields, cols.lat, s.lat) || !get_opt(fields, cols.lon, s.lon)) {
            reject(lineno, "unparseable optional field");
            continue;
        }
        const std::string why = check_sample(s);
        if (!why.empty()) {
            reject(lineno, why);
            continue;
        }
        if (!rows.empty() && s.t_ms <= rows.back().t_ms) {
            throw NonMonotoneTime("row " + std::to_string(lineno) +
                                  ": t_ms does not increase");
        }
        rows.push_back(s);
    }
    if (rows.empty()) throw EmptyTrace("trace has no usable samples");

    // Align to the nominal grid; fill interior holes, keep larger gaps.
    const std::int64_t period = opts.period_ms;
    std::vector<Sample> aligned;
    aligned.reserve(rows.size());
    for (const Sample& r : rows) {
        Sample s = r;
        s.t_ms = static_cast<std::int64_t>(
                     std::llround(static_cast<double>(r.t_ms) / period)) *
                 period;
        if (!aligned.empty()) {
            const std::int64_t prev = aligned.back().t_ms;
            if (s.t_ms <= prev) continue; // collides with an occupied slot
            const std::int64_t gap_slots = (s.t_ms - prev) / period;
            if (gap_slots > 1 && gap_slots <= opts.gap_split_periods) {
                for (std::int64_t g = 1; g < gap_slots; ++g) {
                    aligned.push_back(
                        lerp_sample(aligned.back(), s, prev + g * period));
                }
            }
        }
        aligned.push_back(s);
    }

    TripMeta meta;
    meta.id = opts.trip_id;
    meta.period_ms = period;
    meta.gap_split_periods = opts.gap_split_periods;
    return Trip(std::move(aligned), vehicle, std::move(meta));
}

Trip ingest_csv_file(const std::string& path, const VehicleProfile& vehicle,
                     const IngestOptions& opts) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open trace file " + path);
    IngestOptions o = opts;
    if (o.trip_id.empty()) {
        std::size_t slash = path.find_last_of("/\\");
        std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
        std::size_t dot = stem.find_last_of('.');
        if (dot != std::string::npos) stem = stem.substr(0, dot);
        o.trip_id = stem;
    }
    return ingest_csv(in, vehicle, o);
}

void emit_csv(const Trip& trip, std::ostream& out) {
    out << kTraceCsvHeader << '\n';
    auto opt = [](const std::optional<double>& v) {
        return v ? text::format_double(*v) : std::string{};
    };
    for (const Sample& s : trip.samples()) {
        out << s.t_ms << ',' << text::format_double(s.speed_kmh) << ','
            << text::format_double(s.rpm) << ',' << opt(s.maf_gps) << ','
            << opt(s.map_kpa) << ',' << opt(s.iat_c) << ',' << opt(s.abs_load_pct)
            << ',' << opt(s.fuel_rate_lph) << ',' << opt(s.lat) << ','
            << opt(s.lon) << '\n';
    }
}

void emit_csv_file(const Trip& trip, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write trace file " + path);
    emit_csv(trip, out);
}

} // namespace ecotrip
