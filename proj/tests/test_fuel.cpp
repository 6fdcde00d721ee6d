#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ecotrip/errors.hpp"
#include "ecotrip/fuel.hpp"
#include "ecotrip/profile.hpp"
#include "ecotrip/trace.hpp"

using namespace ecotrip;
using namespace ecotrip::fuel;

namespace {

const VehicleProfile kGasoline = VehicleProfile::gasoline();
const VehicleProfile kDiesel = VehicleProfile::diesel();

Sample full_sample() {
    Sample s;
    s.t_ms = 0;
    s.speed_kmh = 60.0;
    s.rpm = 2500.0;
    s.maf_gps = 10.0;
    s.map_kpa = 95.0;
    s.iat_c = 25.0;
    s.abs_load_pct = 40.0;
    s.fuel_rate_lph = 6.0;
    return s;
}

Trip constant_trip(int n, double speed, double fuel_rate) {
    std::vector<Sample> samples;
    for (int i = 0; i < n; ++i) {
        Sample s;
        s.t_ms = static_cast<std::int64_t>(i) * 1000;
        s.speed_kmh = speed;
        s.rpm = 2000.0;
        s.fuel_rate_lph = fuel_rate;
        samples.push_back(s);
    }
    return Trip(std::move(samples), kGasoline, TripMeta{});
}

} // namespace

// Pinned oracle values, hand-evaluated from the formulas before these tests
// were written.
constexpr double kFlowMaf10Gasoline = 2.9865604778496766; // 36000/(14.7*820)
constexpr double kFlowMaf10Diesel = 3.4482758620689653;   // 36000/(14.5*720)
constexpr double kMafFromMapRef = 49.363523374228215;     // 3000rpm,100kPa,300K,VE.85,2.0l
constexpr double kCo2Diesel = 2.6419596;                  // 3.67*0.857*0.84
constexpr double kCo2Gasoline = 2.3518828;                // 3.67*0.866*0.74
constexpr double kCons10MafGasoline = 4.9776007964161275; // flow/60*100

TEST_CASE("fuel flow from MAF") {
    CHECK(fuel_flow_from_maf(10.0, kGasoline) == doctest::Approx(kFlowMaf10Gasoline).epsilon(1e-12));
    CHECK(fuel_flow_from_maf(10.0, kDiesel) == doctest::Approx(kFlowMaf10Diesel).epsilon(1e-12));
    CHECK(fuel_flow_from_maf(0.0, kGasoline) == 0.0);
    // strictly increasing
    CHECK(fuel_flow_from_maf(10.001, kGasoline) > fuel_flow_from_maf(10.0, kGasoline));
}

TEST_CASE("MAF from absolute load") {
    CHECK(maf_from_load(0.0, 3000.0, kGasoline) == 0.0);
    CHECK(maf_from_load(100.0, 3000.0, kGasoline) == doctest::Approx(59.2).epsilon(1e-12));
    const double once = maf_from_load(37.0, 1800.0, kGasoline);
    CHECK(maf_from_load(37.0, 3600.0, kGasoline) == doctest::Approx(2.0 * once).epsilon(1e-12));
}

TEST_CASE("MAF from MAP (speed-density)") {
    CHECK(maf_from_map(100.0, 0.0, 26.85, kGasoline) == 0.0);
    CHECK(maf_from_map(100.0, 3000.0, 26.85, kGasoline) ==
          doctest::Approx(kMafFromMapRef).epsilon(1e-12));
    // halving absolute temperature (300 K -> 150 K) doubles the estimate
    const double warm = maf_from_map(100.0, 3000.0, 26.85, kGasoline);
    const double cold = maf_from_map(100.0, 3000.0, 150.0 - 273.15, kGasoline);
    CHECK(cold == doctest::Approx(2.0 * warm).epsilon(1e-12));
    CHECK_THROWS_AS(maf_from_map(100.0, 3000.0, -273.15, kGasoline), InvalidTemperature);
    CHECK_THROWS_AS(maf_from_map(100.0, 3000.0, -300.0, kGasoline), InvalidTemperature);
}

TEST_CASE("estimate walks the fallback chain in order") {
    Sample s = full_sample();
    FuelEstimate e = estimate(s, kGasoline);
    CHECK(e.method == Method::DirectPid);
    CHECK(e.fuel_flow_lph == 6.0);
    REQUIRE(e.l_per_100km.has_value());
    CHECK(*e.l_per_100km == 10.0); // 6 l/h at 60 km/h, exactly

    s.fuel_rate_lph.reset();
    e = estimate(s, kGasoline);
    CHECK(e.method == Method::FromMaf);
    CHECK(*e.l_per_100km == doctest::Approx(kCons10MafGasoline).epsilon(1e-12));

    s.maf_gps.reset();
    e = estimate(s, kGasoline);
    CHECK(e.method == Method::MafFromLoad);

    s.abs_load_pct.reset();
    e = estimate(s, kGasoline);
    CHECK(e.method == Method::MafFromMap);

    s.map_kpa.reset();
    s.lat = 39.5;
    s.lon = -0.4;
    CHECK(!try_estimate(s, kGasoline).has_value());
    CHECK_THROWS_AS(estimate(s, kGasoline), NoUsableChannels);
}

TEST_CASE("consumption is undefined while stationary") {
    Sample s = full_sample();
    s.speed_kmh = 0.0;
    const FuelEstimate e = estimate(s, kGasoline);
    CHECK(e.fuel_flow_lph == 6.0);
    CHECK(!e.l_per_100km.has_value());
}

TEST_CASE("consumption decreases with speed at fixed flow") {
    Sample s = full_sample();
    const double at60 = *estimate(s, kGasoline).l_per_100km;
    s.speed_kmh = 90.0;
    const double at90 = *estimate(s, kGasoline).l_per_100km;
    CHECK(at90 < at60);
}

TEST_CASE("CO2 per liter anchors") {
    const double diesel = co2_per_liter_kg(kDiesel);
    CHECK(diesel == doctest::Approx(kCo2Diesel).epsilon(1e-12));
    CHECK(std::abs(diesel - 2.64) < 0.005); // 3 significant figures
    CHECK(co2_per_liter_kg(kGasoline) == doctest::Approx(kCo2Gasoline).epsilon(1e-12));

    VehicleProfile p = kDiesel;
    p.carbon_fraction = 0.0;
    CHECK(co2_per_liter_kg(p) == 0.0);
}

TEST_CASE("trip totals: constant integrand") {
    // 3600 one-second samples at 6 l/h and 60 km/h = one hour of driving
    const Trip trip = constant_trip(3600, 60.0, 6.0);
    const TripTotals t = trip_totals(trip, kGasoline);
    CHECK(t.liters == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(t.km == doctest::Approx(60.0).epsilon(1e-9));
    REQUIRE(t.l_per_100km.has_value());
    CHECK(*t.l_per_100km == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(t.co2_kg == doctest::Approx(6.0 * kCo2Gasoline).epsilon(1e-9));
    CHECK(t.samples_used == 3600);
    CHECK(t.samples_total == 3600);
}

TEST_CASE("trip totals: idling burns fuel but earns no per-km rate") {
    const Trip trip = constant_trip(120, 0.0, 0.8);
    const TripTotals t = trip_totals(trip, kGasoline);
    CHECK(t.liters > 0.0);
    CHECK(t.km == 0.0);
    CHECK(!t.l_per_100km.has_value());
    CHECK(!t.co2_kg_per_100km.has_value());
}

TEST_CASE("ten diesel liters emit 26.4 kg of CO2") {
    // 1000 samples at 36 l/h -> 10 l
    std::vector<Sample> samples;
    for (int i = 0; i < 1000; ++i) {
        Sample s;
        s.t_ms = static_cast<std::int64_t>(i) * 1000;
        s.speed_kmh = 50.0;
        s.rpm = 2200.0;
        s.fuel_rate_lph = 36.0;
        samples.push_back(s);
    }
    const Trip trip(std::move(samples), kDiesel, TripMeta{});
    const TripTotals t = trip_totals(trip, kDiesel);
    CHECK(t.liters == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(t.co2_kg == doctest::Approx(26.419596).epsilon(1e-9));
    CHECK(std::abs(t.co2_kg - 26.4) < 0.05);
}

TEST_CASE("totals are additive over concatenated spans") {
    std::vector<Sample> samples;
    for (int i = 0; i < 50; ++i) {
        Sample s;
        s.t_ms = static_cast<std::int64_t>(i) * 1000;
        s.speed_kmh = 20.0 + (i % 7) * 3.0;
        s.rpm = 1500.0;
        s.maf_gps = 4.0 + (i % 5) * 0.7;
        samples.push_back(s);
    }
    const std::span<const Sample> all(samples);
    const TripTotals whole = span_totals(all, 1000, kGasoline);
    const TripTotals a = span_totals(all.subspan(0, 20), 1000, kGasoline);
    const TripTotals b = span_totals(all.subspan(20), 1000, kGasoline);
    CHECK(whole.liters == doctest::Approx(a.liters + b.liters).epsilon(1e-12));
    CHECK(whole.km == doctest::Approx(a.km + b.km).epsilon(1e-12));
    CHECK(whole.samples_used == a.samples_used + b.samples_used);
}

TEST_CASE("totals demand at least one usable fuel path") {
    std::vector<Sample> samples(2);
    samples[0].t_ms = 0;
    samples[0].speed_kmh = 10.0;
    samples[0].rpm = 1000.0;
    samples[1].t_ms = 1000;
    samples[1].speed_kmh = 12.0;
    samples[1].rpm = 1100.0;
    CHECK_THROWS_AS(span_totals(samples, 1000, kGasoline), NoUsableChannels);
}
