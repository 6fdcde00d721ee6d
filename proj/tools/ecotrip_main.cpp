// ecotrip — trip analytics for OBD-II logs: decode, synthesize, train,
// classify, and aggregate driving-style consumption reports.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecotrip/config.hpp"
#include "ecotrip/errors.hpp"
#include "ecotrip/features.hpp"
#include "ecotrip/fuel.hpp"
#include "ecotrip/mlp.hpp"
#include "ecotrip/obd.hpp"
#include "ecotrip/rand.hpp"
#include "ecotrip/report.hpp"
#include "ecotrip/synth.hpp"
#include "ecotrip/text.hpp"
#include "ecotrip/trace.hpp"

namespace fs = std::filesystem;
using namespace ecotrip;

namespace {

struct CommonArgs {
    std::string profile_path;
    std::string config_path;
    std::uint64_t seed = 1;
    int window_s = 0; // 0: use the config value
    bool strict = false;
    std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--profile", a.profile_path, "vehicle profile JSON");
    cmd->add_option("--config", a.config_path, "analysis config JSON");
    cmd->add_option("--seed", a.seed, "random seed");
    cmd->add_option("--window-s", a.window_s, "window length override, seconds");
    cmd->add_flag("--strict", a.strict, "treat recoverable input problems as fatal");
    cmd->add_option("--out", a.out, "output path (default: stdout or command-specific)");
}

VehicleProfile load_profile(const CommonArgs& a) {
    if (a.profile_path.empty()) return VehicleProfile::gasoline();
    return config::load_profile_file(a.profile_path);
}

config::AnalysisConfig load_config(const CommonArgs& a) {
    config::AnalysisConfig cfg;
    if (!a.config_path.empty()) cfg = config::load_config_file(a.config_path);
    cfg.validate();
    return cfg;
}

void write_text_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot open '" + out_path + "' for writing");
    f << text;
    if (!f) throw Error("write to '" + out_path + "' failed");
}

// ---------------------------------------------------------------- decode ----

// Hex log: one mode-01 response frame per line, led by its capture time:
//   <t_ms> <hex bytes>     e.g.  12000 41 0D 3C
// '#' starts a comment; blank lines are skipped. Frames sharing a timestamp
// form one sample.
int cmd_decode(const std::string& in_path, const CommonArgs& args) {
    std::ifstream in(in_path);
    if (!in) throw Error("cannot open '" + in_path + "'");

    struct Group {
        Sample sample;
        bool has_speed = false, has_rpm = false;
    };
    std::map<std::int64_t, Group> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t bad_lines = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string_view body = text::trim(line);
        if (body.empty()) continue;

        auto fail = [&](const std::string& why) -> std::optional<int> {
            std::cerr << in_path << ":" << line_no << ": " << why << "\n";
            ++bad_lines;
            if (args.strict) return 1;
            return std::nullopt;
        };

        const auto sp = body.find_first_of(" \t");
        std::int64_t t_ms = 0;
        std::vector<std::uint8_t> bytes;
        obd::FrameError err = obd::FrameError::None;
        std::optional<obd::PidFrame> frame;
        try {
            if (sp == std::string_view::npos) throw ParseError("no frame bytes after timestamp");
            if (!text::parse_int64(text::trim(body.substr(0, sp)), t_ms)) {
                throw ParseError("bad timestamp '" + std::string(body.substr(0, sp)) + "'");
            }
            bytes = obd::parse_hex(body.substr(sp + 1));
        } catch (const Error& e) {
            if (auto rc = fail(e.what())) return *rc;
            continue;
        }
        frame = obd::try_parse_frame(bytes, err);
        if (!frame) {
            const char* why = "malformed frame";
            switch (err) {
                case obd::FrameError::Truncated: why = "truncated frame"; break;
                case obd::FrameError::WrongMode: why = "not a mode-01 response"; break;
                case obd::FrameError::UnknownPid: why = "unsupported PID"; break;
                case obd::FrameError::LengthMismatch: why = "payload length mismatch"; break;
                case obd::FrameError::None: break;
            }
            if (auto rc = fail(why)) return *rc;
            continue;
        }
        const obd::ChannelReading r = obd::decode(*frame);
        Group& g = rows[t_ms];
        Sample& s = g.sample;
        s.t_ms = t_ms;
        switch (r.channel) {
            case obd::Channel::Speed: s.speed_kmh = r.value; g.has_speed = true; break;
            case obd::Channel::Rpm: s.rpm = r.value; g.has_rpm = true; break;
            case obd::Channel::Maf: s.maf_gps = r.value; break;
            case obd::Channel::Map: s.map_kpa = r.value; break;
            case obd::Channel::Iat: s.iat_c = r.value; break;
            case obd::Channel::AbsLoad: s.abs_load_pct = r.value; break;
            case obd::Channel::FuelRate: s.fuel_rate_lph = r.value; break;
        }
    }

    // A sample needs the two mandatory channels; drop timestamp groups that
    // never saw a speed or rpm frame.
    std::vector<Sample> samples;
    for (auto& [t, g] : rows) {
        if (!g.has_speed || !g.has_rpm) {
            std::cerr << in_path << ": t=" << t
                      << " ms: incomplete sample (missing speed or rpm), dropped\n";
            ++bad_lines;
            if (args.strict) return 1;
            continue;
        }
        samples.push_back(g.sample);
    }

    TripMeta meta;
    meta.id = fs::path(in_path).stem().string();
    Trip trip(std::move(samples), load_profile(args), meta);

    std::ostringstream out;
    emit_csv(trip, out);
    write_text_output(args.out, out.str());
    if (bad_lines > 0) {
        std::cerr << bad_lines << " line(s) skipped\n";
    }
    return 0;
}

// -------------------------------------------------------------- generate ----

void write_labels_sidecar(const fs::path& dir, const synth::Corpus& corpus,
                          int train_window_s) {
    std::ostringstream out;
    out << "trip_id,window_index,route_label,style_label\n";
    for (std::size_t i = 0; i < corpus.trips.size(); ++i) {
        const Trip& trip = corpus.trips[i];
        const auto n = trip.windows(train_window_s).size();
        for (std::size_t w = 0; w < n; ++w) {
            out << trip.meta().id << ',' << w << ','
                << synth::to_string(corpus.labels[i].first) << ','
                << synth::to_string(corpus.labels[i].second) << '\n';
        }
    }
    write_text_output((dir / "labels.csv").string(), out.str());
}

int cmd_generate(const std::string& route_arg, const std::string& style_arg,
                 int n_per_class, int duration_s, double noise, const std::string& out_dir,
                 const CommonArgs& args) {
    const VehicleProfile profile = load_profile(args);
    const config::AnalysisConfig cfg = load_config(args);
    const int dur = duration_s > 0 ? duration_s : cfg.synth.duration_s;
    const double nz = noise >= 0 ? noise : cfg.synth.noise_level;

    synth::Corpus corpus;
    if (route_arg == "all" && style_arg == "all") {
        corpus = synth::generate_corpus(n_per_class, args.seed, dur, nz, profile,
                                        cfg.synth.calib);
    } else if (route_arg == "all" || style_arg == "all") {
        throw BadSpec("--route and --style must both be 'all' or both be single classes");
    } else {
        const auto route = synth::route_from_string(route_arg);
        const auto style = synth::style_from_string(style_arg);
        for (int i = 0; i < n_per_class; ++i) {
            synth::ScenarioSpec spec;
            spec.route = route;
            spec.style = style;
            spec.duration_s = dur;
            spec.noise_level = nz;
            spec.seed = rng::mix(args.seed, static_cast<std::uint64_t>(i));
            Trip trip = synth::generate(spec, profile, cfg.synth.calib);
            char idbuf[16];
            std::snprintf(idbuf, sizeof(idbuf), "trip_%03d", i);
            TripMeta meta = trip.meta();
            meta.id = std::string(idbuf) + "_" + synth::to_string(route) + "_" +
                      synth::to_string(style);
            corpus.trips.emplace_back(trip.samples(), profile, meta);
            corpus.labels.emplace_back(route, style);
        }
    }

    const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    fs::create_directories(dir);
    for (const Trip& trip : corpus.trips) {
        emit_csv_file(trip, (dir / (trip.meta().id + ".csv")).string());
    }
    const int win = args.window_s > 0 ? args.window_s : cfg.train_window_s;
    write_labels_sidecar(dir, corpus, win);
    std::cerr << "wrote " << corpus.trips.size() << " trip(s) + labels.csv to "
              << dir.string() << "\n";
    return 0;
}

// ----------------------------------------------------------------- train ----

struct SidecarLabels {
    // trip_id -> window_index -> (route, style)
    std::map<std::string, std::map<std::size_t, std::pair<synth::Route, synth::Style>>> rows;
};

SidecarLabels read_sidecar(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw LabelMismatch("labels sidecar '" + path.string() + "' not found");
    SidecarLabels labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "trip_id,window_index,route_label,style_label") {
                throw LabelMismatch("unexpected sidecar header: '" + line + "'");
            }
            continue;
        }
        if (text::trim(line).empty()) continue;
        const auto cells = text::split(line, ',');
        try {
            if (cells.size() != 4) throw ParseError("expected 4 cells");
            std::int64_t idx_raw = 0;
            if (!text::parse_int64(cells[1], idx_raw) || idx_raw < 0) {
                throw ParseError("bad window index '" + std::string(cells[1]) + "'");
            }
            const auto idx = static_cast<std::size_t>(idx_raw);
            labels.rows[std::string(cells[0])][idx] = {
                synth::route_from_string(std::string(cells[2])),
                synth::style_from_string(std::string(cells[3]))};
        } catch (const Error& e) {
            throw LabelMismatch(path.string() + ":" + std::to_string(line_no) +
                                ": " + e.what());
        }
    }
    return labels;
}

std::vector<fs::path> corpus_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error("'" + dir.string() + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const fs::path& p = entry.path();
        if (p.extension() == ".csv" && p.filename() != "labels.csv") files.push_back(p);
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw EmptyInput("no trip CSVs in '" + dir.string() + "'");
    return files;
}

struct Split {
    mlp::LabeledSet train, holdout;
};

Split split_set(const mlp::LabeledSet& all, double holdout_frac, std::uint64_t seed) {
    std::vector<std::size_t> order(all.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng::Generator g(rng::mix(seed, 0x5911787eULL));
    g.shuffle(order);
    const auto n_hold = static_cast<std::size_t>(
        static_cast<double>(order.size()) * holdout_frac);
    Split s;
    for (std::size_t i = 0; i < order.size(); ++i) {
        (i < n_hold ? s.holdout : s.train).rows.push_back(all.rows[order[i]]);
    }
    return s;
}

struct Metrics {
    double accuracy = 0.0;
    std::array<std::array<std::size_t, 3>, 3> confusion{}; // [truth][predicted]
};

Metrics evaluate(const mlp::MlpModel& m, const mlp::LabeledSet& set) {
    Metrics out;
    std::size_t hits = 0;
    for (const auto& row : set.rows) {
        const int truth = static_cast<int>(
            std::max_element(row.target.begin(), row.target.end()) - row.target.begin());
        const int pred = mlp::classify(m, row.input).class_index;
        out.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(pred)]++;
        if (pred == truth) ++hits;
    }
    out.accuracy = set.rows.empty()
                       ? 0.0
                       : static_cast<double>(hits) / static_cast<double>(set.rows.size());
    return out;
}

void print_metrics(const std::string& tag, const Metrics& m,
                   const std::array<std::string, 3>& labels) {
    std::printf("accuracy (%s): %.1f%%\n", tag.c_str(), 100.0 * m.accuracy);
    std::printf("confusion (%s, rows = truth):\n", tag.c_str());
    std::printf("%12s", "");
    for (const auto& l : labels) std::printf(" %10s", l.c_str());
    std::printf("\n");
    for (std::size_t t = 0; t < 3; ++t) {
        std::printf("%12s", labels[t].c_str());
        for (std::size_t p = 0; p < 3; ++p) {
            std::printf(" %10zu", m.confusion[t][p]);
        }
        std::size_t row_n = m.confusion[t][0] + m.confusion[t][1] + m.confusion[t][2];
        if (row_n > 0) {
            std::printf("   %.1f%%", 100.0 * static_cast<double>(m.confusion[t][t]) /
                                         static_cast<double>(row_n));
        }
        std::printf("\n");
    }
}

int cmd_train(const std::string& corpus_dir, const std::string& target,
              const CommonArgs& args) {
    if (target != "route" && target != "style") {
        throw BadSpec("--target must be 'route' or 'style'");
    }
    const VehicleProfile profile = load_profile(args);
    config::AnalysisConfig cfg = load_config(args);
    if (args.window_s > 0) cfg.train_window_s = args.window_s;

    const fs::path dir(corpus_dir);
    const SidecarLabels labels = read_sidecar(dir / "labels.csv");

    mlp::LabeledSet set;
    std::size_t windows_seen = 0;
    for (const fs::path& file : corpus_files(dir)) {
        IngestOptions opts;
        opts.strict = args.strict;
        Trip trip = ingest_csv_file(file.string(), profile, opts);
        const auto it = labels.rows.find(trip.meta().id);
        if (it == labels.rows.end()) {
            throw LabelMismatch("trip '" + trip.meta().id + "' missing from labels.csv");
        }
        const auto windows = trip.windows(cfg.train_window_s);
        if (windows.size() != it->second.size()) {
            throw LabelMismatch("trip '" + trip.meta().id + "': " +
                                std::to_string(windows.size()) + " windows but " +
                                std::to_string(it->second.size()) + " label rows");
        }
        for (std::size_t w = 0; w < windows.size(); ++w) {
            const auto label_it = it->second.find(w);
            if (label_it == it->second.end()) {
                throw LabelMismatch("trip '" + trip.meta().id + "': no label for window " +
                                    std::to_string(w));
            }
            ++windows_seen;
            const auto raw = features::extract(windows[w]);
            if (raw.mean_speed < cfg.idle_gate_kmh) continue;
            mlp::LabeledRow row;
            row.input = features::project(features::normalize(raw, cfg.ranges),
                                          cfg.input_width);
            const int cls = target == "route"
                                ? static_cast<int>(label_it->second.first)
                                : static_cast<int>(label_it->second.second);
            row.target[static_cast<std::size_t>(cls)] = 1.0;
            set.rows.push_back(std::move(row));
        }
    }

    const Split split = split_set(set, cfg.train.holdout_frac, args.seed);
    std::printf("target: %s\n", target.c_str());
    std::printf("windows: %zu total, %zu usable, %zu train / %zu held out\n",
                windows_seen, set.rows.size(), split.train.rows.size(),
                split.holdout.rows.size());

    mlp::MlpModel model = mlp::init({cfg.input_width, cfg.train.hidden, 3},
                                    rng::mix(args.seed, 1), cfg.train.init_range);
    model.labels = target == "route" ? pipeline::kRouteLabels : pipeline::kStyleLabels;

    mlp::TrainConfig tc;
    tc.learning_rate = cfg.train.learning_rate;
    tc.max_cycles = cfg.train.max_cycles;
    tc.target_sse = cfg.train.target_sse;
    tc.seed = rng::mix(args.seed, 2);
    tc.shuffle = cfg.train.shuffle;
    tc.target_softening = cfg.train.target_softening;
    mlp::TrainResult result = mlp::train(model, split.train, tc);

    std::printf("cycles: %d   final SSE: %.6f   MSE: %.6f\n", result.cycles_run,
                result.sse_history.back(), result.mse_history.back());
    print_metrics("train", evaluate(result.model, split.train), result.model.labels);
    if (!split.holdout.rows.empty()) {
        print_metrics("held-out", evaluate(result.model, split.holdout),
                      result.model.labels);
    }

    const std::string out_path = args.out.empty() ? target + ".weights" : args.out;
    mlp::save_file(result.model, out_path);
    std::printf("weights written to %s\n", out_path.c_str());
    return 0;
}

// --------------------------------------------------------------- analyze ----

std::string report_to_text(const pipeline::TripReport& r) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(1);
    out << "trip " << r.trip_id;
    if (!r.date.empty()) out << "   date " << r.date;
    out << "   duration " << r.duration_s << " s   max " << r.max_speed_kmh
        << " km/h\n";
    if (r.has_fuel) {
        out.precision(3);
        out << "fuel " << r.totals.liters << " l   distance " << r.totals.km
            << " km   co2 " << r.totals.co2_kg << " kg";
        out.precision(2);
        if (r.totals.l_per_100km) out << "   " << *r.totals.l_per_100km << " l/100km";
        if (r.totals.co2_kg_per_100km) {
            out << "   " << *r.totals.co2_kg_per_100km << " kg CO2/100km";
        }
        out << "\n";
    } else {
        out << "fuel: no usable channels\n";
    }
    out << "windows (" << r.window_s << " s): " << r.windows_total << " total, "
        << r.windows_classified << " style-classified\n";
    out << "    #  start_s  km/h   route      style       l/100km\n";
    for (const auto& w : r.windows) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%5zu %8.1f %5.1f   %-10s %-10s",
                      w.index, w.start_s, w.mean_speed_kmh,
                      pipeline::kRouteLabels[static_cast<std::size_t>(w.route_class)].c_str(),
                      w.style_class
                          ? pipeline::kStyleLabels[static_cast<std::size_t>(*w.style_class)].c_str()
                          : (w.idle ? "(idle)" : "-"));
        out << buf;
        if (w.l_per_100km) {
            std::snprintf(buf, sizeof(buf), " %9.2f", *w.l_per_100km);
            out << buf;
        }
        out << "\n";
    }
    out.precision(0);
    out << "route mix:";
    for (std::size_t k = 0; k < 3; ++k) {
        out << " " << pipeline::kRouteLabels[k] << " " << 100.0 * r.route_fractions[k]
            << "%";
    }
    out << "\nstyle mix:";
    for (std::size_t k = 0; k < 3; ++k) {
        out << " " << pipeline::kStyleLabels[k] << " " << 100.0 * r.style_fractions[k]
            << "%";
    }
    out << "\ndominant: ";
    out << (r.dominant_route
                ? pipeline::kRouteLabels[static_cast<std::size_t>(*r.dominant_route)]
                : "-");
    out << " / ";
    out << (r.dominant_style
                ? pipeline::kStyleLabels[static_cast<std::size_t>(*r.dominant_style)]
                : "-");
    out << "\n";
    return out.str();
}

int cmd_analyze(const std::string& trace_path, const std::string& route_weights,
                const std::string& style_weights, const std::string& date,
                const std::string& format, const CommonArgs& args) {
    const VehicleProfile profile = load_profile(args);
    config::AnalysisConfig cfg = load_config(args);
    if (args.window_s > 0) cfg.analyze_window_s = args.window_s;

    pipeline::Models models;
    models.route = mlp::load_file(route_weights);
    models.style = mlp::load_file(style_weights);

    IngestOptions opts;
    opts.strict = args.strict;
    std::vector<RowIssue> issues;
    opts.issues = &issues;
    Trip trip = ingest_csv_file(trace_path, profile, opts);
    for (const RowIssue& issue : issues) {
        std::cerr << trace_path << ":" << issue.row << ": " << issue.reason
                  << " (row skipped)\n";
    }

    const pipeline::TripReport report = pipeline::analyze(trip, models, cfg, date);
    if (format == "text") {
        write_text_output(args.out, report_to_text(report));
    } else {
        write_text_output(args.out, pipeline::report_to_json_text(report));
    }
    return 0;
}

// ----------------------------------------------------------- style-report ----

int cmd_style_report(const std::vector<std::string>& report_paths,
                     const std::string& format, const CommonArgs& args) {
    std::vector<pipeline::TripReport> reports;
    for (const std::string& p : report_paths) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw Error("cannot open '" + p + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        reports.push_back(pipeline::report_from_json_text(buf.str()));
    }
    const pipeline::StyleTable table = pipeline::style_table(reports);
    if (format == "text") {
        write_text_output(args.out, pipeline::style_table_to_text(table));
    } else {
        write_text_output(args.out, pipeline::style_table_to_json_text(table));
    }
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"trip analytics for OBD-II drive logs"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* decode = app.add_subcommand("decode", "hex frame log -> trace CSV");
    std::string decode_in;
    decode->add_option("input", decode_in, "hex log file")->required();
    add_common(decode, args);

    auto* generate = app.add_subcommand("generate", "synthesize labeled trips");
    std::string route_arg = "all", style_arg = "all", out_dir = ".";
    int n_per_class = 1, duration_s = 0;
    double noise = -1.0;
    generate->add_option("--route", route_arg, "urban|suburban|highway|all");
    generate->add_option("--style", style_arg, "quiet|normal|aggressive|all");
    generate->add_option("--n", n_per_class, "trips per class")->check(CLI::PositiveNumber);
    generate->add_option("--duration-s", duration_s, "trip length, seconds");
    generate->add_option("--noise", noise, "noise level [0,0.5]");
    generate->add_option("--out-dir", out_dir, "output directory");
    add_common(generate, args);

    auto* train = app.add_subcommand("train", "train a classifier on a labeled corpus");
    std::string corpus_dir, target;
    train->add_option("corpus", corpus_dir, "corpus directory")->required();
    train->add_option("--target", target, "route|style")->required();
    add_common(train, args);

    auto* analyze = app.add_subcommand("analyze", "classify a trip and report");
    std::string trace_path, route_weights, style_weights, date, a_format = "json";
    analyze->add_option("trace", trace_path, "trace CSV")->required();
    analyze->add_option("--route-weights", route_weights)->required();
    analyze->add_option("--style-weights", style_weights)->required();
    analyze->add_option("--date", date, "capture date for the report header");
    analyze->add_option("--format", a_format)->check(CLI::IsMember({"json", "text"}));
    add_common(analyze, args);

    auto* style_report = app.add_subcommand("style-report",
                                            "per-style consumption table from reports");
    std::vector<std::string> report_paths;
    std::string s_format = "json";
    style_report->add_option("reports", report_paths, "report JSON files")->required();
    style_report->add_option("--format", s_format)->check(CLI::IsMember({"json", "text"}));
    add_common(style_report, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e); // prints help/message
        return rc == 0 ? 0 : 1;    // usage problems are input errors
    }

    if (decode->parsed()) return cmd_decode(decode_in, args);
    if (generate->parsed()) {
        return cmd_generate(route_arg, style_arg, n_per_class, duration_s, noise,
                            out_dir, args);
    }
    if (train->parsed()) return cmd_train(corpus_dir, target, args);
    if (analyze->parsed()) {
        return cmd_analyze(trace_path, route_weights, style_weights, date, a_format, args);
    }
    if (style_report->parsed()) return cmd_style_report(report_paths, s_format, args);
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const BadTopology& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Diverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
