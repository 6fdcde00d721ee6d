#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ecotrip/errors.hpp"
#include "ecotrip/features.hpp"
#include "ecotrip/profile.hpp"
#include "ecotrip/trace.hpp"

using namespace ecotrip;
using namespace ecotrip::features;

namespace {

Trip make_trip(const std::vector<double>& speeds, const std::vector<double>& rpms) {
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        Sample s;
        s.t_ms = static_cast<std::int64_t>(i) * 1000;
        s.speed_kmh = speeds[i];
        s.rpm = rpms[i];
        samples.push_back(s);
    }
    return Trip(std::move(samples), VehicleProfile::gasoline(), TripMeta{});
}

} // namespace

TEST_CASE("zero-variance window") {
    const Trip t = make_trip({50, 50, 50, 50}, {2000, 2000, 2000, 2000});
    const auto w = t.windows(4);
    REQUIRE(w.size() == 1);
    const RawFeatures f = extract(w[0]);
    CHECK(f.mean_speed == 50.0);
    CHECK(f.std_speed == 0.0);
    CHECK(f.mean_accel == 0.0);
    CHECK(f.std_accel == 0.0);
    CHECK(f.mean_rpm == 2000.0);
    CHECK(f.std_rpm == 0.0);
}

TEST_CASE("population standard deviation") {
    // oracle: {40, 60} -> mean 50, population std 10
    const Trip t = make_trip({40, 60}, {1000, 1200});
    const auto w = t.windows(2);
    REQUIRE(w.size() == 1);
    const RawFeatures f = extract(w[0]);
    CHECK(f.mean_speed == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(f.std_speed == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(f.mean_rpm == doctest::Approx(1100.0).epsilon(1e-12));
    CHECK(f.std_rpm == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("windows below two samples cannot be featurized") {
    Window w; // empty spans
    CHECK_THROWS_AS(extract(w), WindowTooSmall);
}

TEST_CASE("normalization maps ranges onto [0,1] with clamping") {
    const NormalizationRanges ranges; // defaults
    RawFeatures f;
    f.mean_speed = 60.0;  // (0,180) -> 1/3
    f.std_speed = 0.0;    // min -> 0
    f.mean_accel = 6.0;   // max -> 1
    f.std_accel = 99.0;   // beyond max -> clamped to 1
    f.mean_rpm = -5.0;    // below min -> clamped to 0
    f.std_rpm = 1000.0;   // (0,2000) -> 0.5
    const FeatureVector v = normalize(f, ranges);
    CHECK(v[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(v[1] == 0.0);
    CHECK(v[2] == 1.0);
    CHECK(v[3] == 1.0);
    CHECK(v[4] == 0.0);
    CHECK(v[5] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("normalization is monotone and idempotent") {
    const NormalizationRanges ranges;
    RawFeatures lo, hi;
    lo.mean_speed = 40.0;
    hi.mean_speed = 70.0;
    CHECK(normalize(lo, ranges)[0] < normalize(hi, ranges)[0]);

    // feeding normalized values through unit ranges changes nothing
    NormalizationRanges unit;
    unit.mean_speed = unit.std_speed = unit.mean_accel = unit.std_accel =
        unit.mean_rpm = unit.std_rpm = {0.0, 1.0};
    RawFeatures mid;
    mid.mean_speed = 0.25;
    mid.std_speed = 0.5;
    mid.mean_accel = 0.75;
    mid.std_accel = 1.0;
    mid.mean_rpm = 0.0;
    mid.std_rpm = 0.125;
    const FeatureVector once = normalize(mid, unit);
    RawFeatures again;
    again.mean_speed = once[0];
    again.std_speed = once[1];
    again.mean_accel = once[2];
    again.std_accel = once[3];
    again.mean_rpm = once[4];
    again.std_rpm = once[5];
    CHECK(normalize(again, unit) == once);
}

TEST_CASE("invalid ranges are rejected") {
    NormalizationRanges r;
    r.mean_accel = {2.0, 2.0};
    CHECK_THROWS_AS(r.validate(), Error);
    r.mean_accel = {3.0, -3.0};
    CHECK_THROWS_AS(r.validate(), Error);
}

TEST_CASE("feature projection widths") {
    FeatureVector v = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    const auto six = project(v, 6);
    REQUIRE(six.size() == 6);
    CHECK(six[0] == 0.1);
    CHECK(six[5] == 0.6);
    const auto four = project(v, 4);
    REQUIRE(four.size() == 4);
    // {mean_speed, std_speed, mean_accel, mean_rpm}
    CHECK(four[0] == 0.1);
    CHECK(four[1] == 0.2);
    CHECK(four[2] == 0.3);
    CHECK(four[3] == 0.5);
    CHECK_THROWS_AS(project(v, 5), Error);
}

TEST_CASE("features ignore a trailing partial window") {
    std::vector<double> speeds, rpms;
    for (int i = 0; i < 10; ++i) {
        speeds.push_back(30.0 + i);
        rpms.push_back(1500.0 + 10 * i);
    }
    const Trip full = make_trip(speeds, rpms);
    speeds.push_back(250.0); // wild trailing sample
    rpms.push_back(6000.0);
    const Trip longer = make_trip(speeds, rpms);

    const auto wa = full.windows(5);
    const auto wb = longer.windows(5);
    REQUIRE(wa.size() == wb.size());
    for (std::size_t i = 0; i < wa.size(); ++i) {
        CHECK(extract(wa[i]).as_array() == extract(wb[i]).as_array());
    }
}
