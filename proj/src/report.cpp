#include "ecotrip/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "ecotrip/features.hpp"

namespace ecotrip::pipeline {

using nlohmann::ordered_json;

const std::array<std::string, 3> kRouteLabels = {"urban", "suburban", "highway"};
const std::array<std::string, 3> kStyleLabels = {"quiet", "normal", "aggressive"};

namespace {

int argmax3(const std::array<std::size_t, 3>& counts) {
    int best = 0;
    for (int k = 1; k < 3; ++k) {
        if (counts[k] > counts[static_cast<std::size_t>(best)]) best = k;
    }
    return best;
}

void check_model(const mlp::MlpModel& m, int input_width, const char* which) {
    if (m.inputs() != input_width) {
        throw BadWeights(std::string(which) + " network expects " +
                         std::to_string(m.inputs()) + " inputs, config uses " +
                         std::to_string(input_width));
    }
}

ordered_json opt_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

std::optional<double> opt_from(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

int label_index(const std::array<std::string, 3>& labels, const std::string& name) {
    for (int k = 0; k < 3; ++k) {
        if (labels[static_cast<std::size_t>(k)] == name) return k;
    }
    throw ParseError("unknown class label '" + name + "' in report");
}

} // namespace

TripReport analyze(const Trip& trip, const Models& models,
                   const config::AnalysisConfig& cfg, const std::string& date) {
    cfg.validate();
    check_model(models.route, cfg.input_width, "route");
    check_model(models.style, cfg.input_width, "style");

    TripReport r;
    r.trip_id = trip.meta().id;
    r.date = date;
    r.window_s = cfg.analyze_window_s;
    r.duration_s = static_cast<double>(trip.duration_ms()) / 1000.0;
    for (const Sample& s : trip.samples()) {
        r.max_speed_kmh = std::max(r.max_speed_kmh, s.speed_kmh);
    }
    try {
        r.totals = fuel::trip_totals(trip, trip.vehicle());
        r.has_fuel = true;
    } catch (const NoUsableChannels&) {
        r.has_fuel = false;
    }

    const auto windows = trip.windows(cfg.analyze_window_s);
    std::array<std::size_t, 3> route_counts{};
    std::array<std::size_t, 3> style_counts{};
    std::array<double, 3> style_cons_sum{};
    std::array<std::size_t, 3> style_cons_n{};

    for (std::size_t i = 0; i < windows.size(); ++i) {
        const Window& w = windows[i];
        WindowReport wr;
        wr.index = i;
        wr.start_s = static_cast<double>(w.start_ms) / 1000.0;

        const auto raw = features::extract(w);
        wr.mean_speed_kmh = raw.mean_speed;
        const auto norm = features::normalize(raw, cfg.ranges);
        const auto input = features::project(norm, cfg.input_width);

        const auto route = mlp::classify(models.route, input);
        wr.route_class = route.class_index;
        wr.route_conf = route.confidence;
        route_counts[static_cast<std::size_t>(route.class_index)]++;

        wr.idle = raw.mean_speed < cfg.idle_gate_kmh;
        if (!wr.idle) {
            const auto style = mlp::classify(models.style, input);
            wr.style_class = style.class_index;
            wr.style_conf = style.confidence;
            style_counts[static_cast<std::size_t>(style.class_index)]++;
        }

        try {
            const auto t =
                fuel::span_totals(w.samples, trip.meta().period_ms, trip.vehicle());
            wr.fuel_l = t.liters;
            wr.l_per_100km = t.l_per_100km;
            wr.co2_kg_per_100km = t.co2_kg_per_100km;
            for (const Sample& s : w.samples) {
                if (auto e = fuel::try_estimate(s, trip.vehicle())) {
                    wr.fuel_method = fuel::to_string(e->method);
                    break;
                }
            }
            if (wr.style_class && wr.l_per_100km) {
                style_cons_sum[static_cast<std::size_t>(*wr.style_class)] += *wr.l_per_100km;
                style_cons_n[static_cast<std::size_t>(*wr.style_class)]++;
            }
        } catch (const NoUsableChannels&) {
            // flagged by the unset optionals
        }
        r.windows.push_back(std::move(wr));
    }

    r.windows_total = windows.size();
    r.windows_classified =
        std::accumulate(style_counts.begin(), style_counts.end(), std::size_t{0});
    for (int k = 0; k < 3; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        r.route_fractions[ku] =
            r.windows_total ? static_cast<double>(route_counts[ku]) /
                                  static_cast<double>(r.windows_total)
                            : 0.0;
        r.style_fractions[ku] =
            r.windows_classified ? static_cast<double>(style_counts[ku]) /
                                       static_cast<double>(r.windows_classified)
                                 : 0.0;
        if (style_cons_n[ku] > 0) {
            r.mean_l_per_100km_by_style[ku] =
                style_cons_sum[ku] / static_cast<double>(style_cons_n[ku]);
        }
    }
    if (r.windows_total > 0) r.dominant_route = argmax3(route_counts);
    if (r.windows_classified > 0) r.dominant_style = argmax3(style_counts);
    return r;
}

std::string report_to_json_text(const TripReport& r) {
    ordered_json j;
    j["schema"] = "ecotrip-report-1";
    j["trip"] = {{"id", r.trip_id},
                 {"date", r.date},
                 {"window_s", r.window_s},
                 {"duration_s", r.duration_s},
                 {"max_speed_kmh", r.max_speed_kmh}};
    if (r.has_fuel) {
        j["totals"] = {{"fuel_l", r.totals.liters},
                       {"distance_km", r.totals.km},
                       {"co2_kg", r.totals.co2_kg},
                       {"l_per_100km", opt_json(r.totals.l_per_100km)},
                       {"co2_kg_per_100km", opt_json(r.totals.co2_kg_per_100km)},
                       {"samples_with_fuel_path", r.totals.samples_used},
                       {"samples_total", r.totals.samples_total}};
    } else {
        j["totals"] = nullptr;
    }
    j["labels"] = {{"route", kRouteLabels}, {"style", kStyleLabels}};

    ordered_json rows = ordered_json::array();
    for (const WindowReport& w : r.windows) {
        ordered_json wj;
        wj["i"] = w.index;
        wj["start_s"] = w.start_s;
        wj["mean_speed_kmh"] = w.mean_speed_kmh;
        wj["idle"] = w.idle;
        wj["route"] = kRouteLabels[static_cast<std::size_t>(w.route_class)];
        wj["route_conf"] = w.route_conf;
        if (w.style_class) {
            wj["style"] = kStyleLabels[static_cast<std::size_t>(*w.style_class)];
            wj["style_conf"] = w.style_conf;
        } else {
            wj["style"] = nullptr;
            wj["style_conf"] = nullptr;
        }
        wj["fuel_l"] = opt_json(w.fuel_l);
        wj["l_per_100km"] = opt_json(w.l_per_100km);
        wj["co2_kg_per_100km"] = opt_json(w.co2_kg_per_100km);
        wj["fuel_method"] = w.fuel_method ? ordered_json(*w.fuel_method) : nullptr;
        rows.push_back(std::move(wj));
    }
    j["windows"] = std::move(rows);

    ordered_json agg;
    agg["windows_total"] = r.windows_total;
    agg["windows_classified"] = r.windows_classified;
    for (int k = 0; k < 3; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        agg["route_fractions"][kRouteLabels[ku]] = r.route_fractions[ku];
        agg["style_fractions"][kStyleLabels[ku]] = r.style_fractions[ku];
        agg["mean_l_per_100km_by_style"][kStyleLabels[ku]] =
            opt_json(r.mean_l_per_100km_by_style[ku]);
    }
    agg["dominant_route"] =
        r.dominant_route ? ordered_json(kRouteLabels[static_cast<std::size_t>(
                               *r.dominant_route)])
                         : nullptr;
    agg["dominant_style"] =
        r.dominant_style ? ordered_json(kStyleLabels[static_cast<std::size_t>(
                               *r.dominant_style)])
                         : nullptr;
    j["aggregates"] = std::move(agg);
    return j.dump(2) + "\n";
}

TripReport report_from_json_text(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed report JSON");
    if (!j.contains("schema") || j["schema"] != "ecotrip-report-1") {
        throw ParseError("not an ecotrip report (bad schema tag)");
    }
    TripReport r;
    const auto& t = j.at("trip");
    r.trip_id = t.at("id").get<std::string>();
    r.date = t.at("date").get<std::string>();
    r.window_s = t.at("window_s").get<int>();
    r.duration_s = t.at("duration_s").get<double>();
    r.max_speed_kmh = t.at("max_speed_kmh").get<double>();
    if (!j.at("totals").is_null()) {
        const auto& tt = j.at("totals");
        r.has_fuel = true;
        r.totals.liters = tt.at("fuel_l").get<double>();
        r.totals.km = tt.at("distance_km").get<double>();
        r.totals.co2_kg = tt.at("co2_kg").get<double>();
        r.totals.l_per_100km = opt_from(tt.at("l_per_100km"));
        r.totals.co2_kg_per_100km = opt_from(tt.at("co2_kg_per_100km"));
        r.totals.samples_used = tt.at("samples_with_fuel_path").get<std::size_t>();
        r.totals.samples_total = tt.at("samples_total").get<std::size_t>();
    }
    for (const auto& wj : j.at("windows")) {
        WindowReport w;
        w.index = wj.at("i").get<std::size_t>();
        w.start_s = wj.at("start_s").get<double>();
        w.mean_speed_kmh = wj.at("mean_speed_kmh").get<double>();
        w.idle = wj.at("idle").get<bool>();
        w.route_class = label_index(kRouteLabels, wj.at("route").get<std::string>());
        w.route_conf = wj.at("route_conf").get<std::array<double, 3>>();
        if (!wj.at("style").is_null()) {
            w.style_class = label_index(kStyleLabels, wj.at("style").get<std::string>());
            w.style_conf = wj.at("style_conf").get<std::array<double, 3>>();
        }
        w.fuel_l = opt_from(wj.at("fuel_l"));
        w.l_per_100km = opt_from(wj.at("l_per_100km"));
        w.co2_kg_per_100km = opt_from(wj.at("co2_kg_per_100km"));
        if (!wj.at("fuel_method").is_null()) {
            w.fuel_method = wj.at("fuel_method").get<std::string>();
        }
        r.windows.push_back(std::move(w));
    }
    const auto& agg = j.at("aggregates");
    r.windows_total = agg.at("windows_total").get<std::size_t>();
    r.windows_classified = agg.at("windows_classified").get<std::size_t>();
    for (int k = 0; k < 3; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        r.route_fractions[ku] =
            agg.at("route_fractions").at(kRouteLabels[ku]).get<double>();
        r.style_fractions[ku] =
            agg.at("style_fractions").at(kStyleLabels[ku]).get<double>();
        r.mean_l_per_100km_by_style[ku] =
            opt_from(agg.at("mean_l_per_100km_by_style").at(kStyleLabels[ku]));
    }
    if (!agg.at("dominant_route").is_null()) {
        r.dominant_route =
            label_index(kRouteLabels, agg.at("dominant_route").get<std::string>());
    }
    if (!agg.at("dominant_style").is_null()) {
        r.dominant_style =
            label_index(kStyleLabels, agg.at("dominant_style").get<std::string>());
    }
    return r;
}

BoxStats box_stats(std::vector<double> values) {
    if (values.empty()) throw EmptyInput("no values for box statistics");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    auto quantile = [&](double p) {
        const double h = p * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(h);
        const std::size_t hi = std::min(lo + 1, n - 1);
        const double frac = h - static_cast<double>(lo);
        return values[lo] + frac * (values[hi] - values[lo]);
    };
    BoxStats s;
    s.count = n;
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(n);
    s.min = values.front();
    s.max = values.back();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    return s;
}

StyleTable style_table(std::span<const TripReport> reports) {
    if (reports.empty()) throw EmptyInput("no reports given");
    std::array<std::vector<double>, 3> cons;
    std::array<std::vector<double>, 3> co2;
    for (const TripReport& r : reports) {
        if (!r.dominant_style || !r.has_fuel || !r.totals.l_per_100km) continue;
        const auto k = static_cast<std::size_t>(*r.dominant_style);
        cons[k].push_back(*r.totals.l_per_100km);
        if (r.totals.co2_kg_per_100km) co2[k].push_back(*r.totals.co2_kg_per_100km);
    }
    StyleTable t;
    for (std::size_t k = 0; k < 3; ++k) {
        if (cons[k].empty()) {
            throw EmptyInput("no report with dominant style '" + kStyleLabels[k] +
                             "' and defined consumption");
        }
        t.consumption[k] = box_stats(cons[k]);
        t.co2[k] = box_stats(co2[k]);
    }
    return t;
}

std::string style_table_to_json_text(const StyleTable& t) {
    ordered_json j;
    j["schema"] = "ecotrip-style-table-1";
    auto stats_json = [](const BoxStats& s) {
        return ordered_json{{"count", s.count}, {"mean", s.mean}, {"min", s.min},
                            {"q1", s.q1},       {"median", s.median},
                            {"q3", s.q3},       {"max", s.max}};
    };
    for (std::size_t k = 0; k < 3; ++k) {
        j["l_per_100km"][kStyleLabels[k]] = stats_json(t.consumption[k]);
        j["co2_kg_per_100km"][kStyleLabels[k]] = stats_json(t.co2[k]);
    }
    return j.dump(2) + "\n";
}

std::string style_table_to_text(const StyleTable& t) {
    std::ostringstream out;
    out << "style            n    mean      q1  median      q3  (l/100km)\n";
    char line[128];
    for (std::size_t k = 0; k < 3; ++k) {
        const BoxStats& s = t.consumption[k];
        std::snprintf(line, sizeof line, "%-12s %5zu %7.2f %7.2f %7.2f %7.2f\n",
                      kStyleLabels[k].c_str(), s.count, s.mean, s.q1, s.median, s.q3);
        out << line;
    }
    return out.str();
}

void append_labeled_windows(const Trip& trip, synth::Route route, synth::Style style,
                            const config::AnalysisConfig& cfg, LabeledWindows& out) {
    const auto windows = trip.windows(cfg.train_window_s);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const auto raw = features::extract(windows[i]);
        if (raw.mean_speed < cfg.idle_gate_kmh) continue;
        const auto input =
            features::project(features::normalize(raw, cfg.ranges), cfg.input_width);

        mlp::LabeledRow route_row;
        route_row.input = input;
        route_row.target[static_cast<std::size_t>(route)] = 1.0;
        out.route_set.rows.push_back(std::move(route_row));

        mlp::LabeledRow style_row;
        style_row.input = input;
        style_row.target[static_cast<std::size_t>(style)] = 1.0;
        out.style_set.rows.push_back(std::move(style_row));

        out.keys.push_back({trip.meta().id, i});
    }
}

LabeledWindows build_labeled_sets(const synth::Corpus& corpus,
                                  const config::AnalysisConfig& cfg) {
    LabeledWindows out;
    for (std::size_t t = 0; t < corpus.trips.size(); ++t) {
        append_labeled_windows(corpus.trips[t], corpus.labels[t].first,
                               corpus.labels[t].second, cfg, out);
    }
    return out;
}

} // namespace ecotrip::pipeline
