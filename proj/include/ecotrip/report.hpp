#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecotrip/config.hpp"
#include "ecotrip/fuel.hpp"
#include "ecotrip/mlp.hpp"
#include "ecotrip/synth.hpp"
#include "ecotrip/trace.hpp"

namespace ecotrip::pipeline {

struct Models {
    mlp::MlpModel route;
    mlp::MlpModel style;
};

// Default label orderings the classifiers are trained with.
extern const std::array<std::string, 3> kRouteLabels;
extern const std::array<std::string, 3> kStyleLabels;

struct WindowReport {
    std::size_t index = 0;
    double start_s = 0.0;
    double mean_speed_kmh = 0.0;
    bool idle = false; // below the gate: style left unclassified
    int route_class = 0;
    std::array<double, 3> route_conf{};
    std::optional<int> style_class;
    std::array<double, 3> style_conf{};
    std::optional<double> fuel_l;          // unset when no fuel path in the window
    std::optional<double> l_per_100km;     // additionally needs distance > 0
    std::optional<double> co2_kg_per_100km;
    std::optional<std::string> fuel_method;
};

struct TripReport {
    std::string trip_id;
    std::string date;
    int window_s = 10;
    double duration_s = 0.0;
    double max_speed_kmh = 0.0;
    bool has_fuel = false;
    fuel::TripTotals totals; // whole trip, valid when has_fuel

    std::vector<WindowReport> windows;

    std::size_t windows_total = 0;
    std::size_t windows_classified = 0; // non-idle
    std::array<double, 3> route_fractions{};  // over all windows
    std::array<double, 3> style_fractions{};  // over classified windows
    std::array<std::optional<double>, 3> mean_l_per_100km_by_style;
    std::optional<int> dominant_route;
    std::optional<int> dominant_style;
};

// Classifies every window of the trip and assembles the report. Windows
// without fuel channels are flagged, never fatal.
TripReport analyze(const Trip& trip, const Models& models,
                   const config::AnalysisConfig& cfg, const std::string& date = "");

std::string report_to_json_text(const TripReport& r);
TripReport report_from_json_text(const std::string& text);

// Box-plot statistics of one value set.
struct BoxStats {
    std::size_t count = 0;
    double mean = 0.0, min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

BoxStats box_stats(std::vector<double> values); // throws EmptyInput

// Per-style consumption table over a set of reports; each report contributes
// its overall figures under its dominant style.
struct StyleTable {
    std::array<BoxStats, 3> consumption; // l/100km per style class
    std::array<BoxStats, 3> co2;         // kg/100km per style class
};

StyleTable style_table(std::span<const TripReport> reports);
std::string style_table_to_json_text(const StyleTable& t);
std::string style_table_to_text(const StyleTable& t);

// Windowed, gated, normalized training rows for both classifiers.
struct WindowKey {
    std::string trip_id;
    std::size_t window_index = 0;
};

struct LabeledWindows {
    mlp::LabeledSet route_set;
    mlp::LabeledSet style_set;
    std::vector<WindowKey> keys; // parallel to rows
};

LabeledWindows build_labeled_sets(const synth::Corpus& corpus,
                                  const config::AnalysisConfig& cfg);

// Same extraction for one trip with known labels (used when reading a corpus
// back from disk).
void append_labeled_windows(const Trip& trip, synth::Route route, synth::Style style,
                            const config::AnalysisConfig& cfg, LabeledWindows& out);

} // namespace ecotrip::pipeline
