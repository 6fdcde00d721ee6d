#include "ecotrip/mlp.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ecotrip/rand.hpp"
#include "ecotrip/text.hpp"

namespace ecotrip::mlp {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_topology(const std::array<int, 3>& layers) {
    if (layers[2] != kOutputs) {
        throw BadTopology("output layer must have exactly 3 nodes, got " +
                          std::to_string(layers[2]));
    }
    if (layers[0] <= 0 || layers[1] <= 0) {
        throw BadTopology("layer sizes must be positive");
    }
}

void check_input(const MlpModel& m, std::span<const double> x) {
    if (static_cast<int>(x.size()) != m.inputs()) {
        throw DimensionMismatch("input has " + std::to_string(x.size()) +
                                " components, model expects " +
                                std::to_string(m.inputs()));
    }
}

struct ForwardPass {
    std::vector<double> hidden;
    std::array<double, kOutputs> out;
};

ForwardPass run_forward(const MlpModel& m, std::span<const double> x) {
    ForwardPass fp;
    fp.hidden.resize(m.hidden());
    for (int j = 0; j < m.hidden(); ++j) {
        double z = m.b1[j];
        const double* row = &m.w1[static_cast<std::size_t>(j) * m.inputs()];
        for (int i = 0; i < m.inputs(); ++i) z += row[i] * x[i];
        fp.hidden[j] = sigmoid(z);
    }
    for (int k = 0; k < kOutputs; ++k) {
        double z = m.b2[k];
        const double* row = &m.w2[static_cast<std::size_t>(k) * m.hidden()];
        for (int j = 0; j < m.hidden(); ++j) z += row[j] * fp.hidden[j];
        fp.out[k] = sigmoid(z);
    }
    return fp;
}

// Gradient of the per-row loss sum_k (o_k - t_k)^2, accumulated into g.
void accumulate_row_gradient(const MlpModel& m, const LabeledRow& row,
                             Gradients& g) {
    const ForwardPass fp = run_forward(m, row.input);

    std::array<double, kOutputs> delta2{};
    for (int k = 0; k < kOutputs; ++k) {
        const double o = fp.out[k];
        delta2[k] = 2.0 * (o - row.target[k]) * o * (1.0 - o);
    }
    for (int k = 0; k < kOutputs; ++k) {
        double* wrow = &g.w2[static_cast<std::size_t>(k) * m.hidden()];
        for (int j = 0; j < m.hidden(); ++j) wrow[j] += delta2[k] * fp.hidden[j];
        g.b2[k] += delta2[k];
    }
    for (int j = 0; j < m.hidden(); ++j) {
        double back = 0.0;
        for (int k = 0; k < kOutputs; ++k) {
            back += delta2[k] * m.w2[static_cast<std::size_t>(k) * m.hidden() + j];
        }
        const double h = fp.hidden[j];
        const double delta1 = back * h * (1.0 - h);
        double* wrow = &g.w1[static_cast<std::size_t>(j) * m.inputs()];
        for (int i = 0; i < m.inputs(); ++i) wrow[i] += delta1 * row.input[i];
        g.b1[j] += delta1;
    }
}

Gradients zero_gradients(const MlpModel& m) {
    Gradients g;
    g.w1.assign(m.w1.size(), 0.0);
    g.b1.assign(m.b1.size(), 0.0);
    g.w2.assign(m.w2.size(), 0.0);
    g.b2.assign(m.b2.size(), 0.0);
    return g;
}

void apply_step(MlpModel& m, const Gradients& g, double lr) {
    for (std::size_t i = 0; i < m.w1.size(); ++i) m.w1[i] -= lr * g.w1[i];
    for (std::size_t i = 0; i < m.b1.size(); ++i) m.b1[i] -= lr * g.b1[i];
    for (std::size_t i = 0; i < m.w2.size(); ++i) m.w2[i] -= lr * g.w2[i];
    for (std::size_t i = 0; i < m.b2.size(); ++i) m.b2[i] -= lr * g.b2[i];
}

LabeledSet soften_targets(const LabeledSet& set, double s) {
    LabeledSet out = set;
    for (auto& row : out.rows) {
        for (double& t : row.target) t = t * (1.0 - 2.0 * s) + s;
    }
    return out;
}

} // namespace

void LabeledSet::validate(int n_in) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r].input.size()) != n_in) {
            throw DimensionMismatch("row " + std::to_string(r) + " has " +
                                    std::to_string(rows[r].input.size()) +
                                    " inputs, expected " + std::to_string(n_in));
        }
        int ones = 0;
        for (double t : rows[r].target) {
            if (t == 1.0) ++ones;
            else if (t != 0.0) throw Error("row " + std::to_string(r) + ": target not one-hot");
        }
        if (ones != 1) throw Error("row " + std::to_string(r) + ": target not one-hot");
    }
}

MlpModel init(std::array<int, 3> layers, std::uint64_t seed, double init_range) {
    check_topology(layers);
    MlpModel m;
    m.layers = layers;
    rng::Generator gen(seed);
    auto fill = [&](std::vector<double>& v, std::size_t n) {
        v.resize(n);
        for (double& x : v) x = gen.uniform(-init_range, init_range);
    };
    fill(m.w1, static_cast<std::size_t>(layers[1]) * layers[0]);
    fill(m.b1, static_cast<std::size_t>(layers[1]));
    fill(m.w2, static_cast<std::size_t>(kOutputs) * layers[1]);
    fill(m.b2, static_cast<std::size_t>(kOutputs));
    return m;
}

std::array<double, kOutputs> forward(const MlpModel& m, std::span<const double> x) {
    check_input(m, x);
    return run_forward(m, x).out;
}

double sse(const MlpModel& m, const LabeledSet& set) {
    if (set.rows.empty()) throw EmptySet("sse over an empty set");
    double total = 0.0;
    for (const auto& row : set.rows) {
        check_input(m, row.input);
        const auto out = run_forward(m, row.input).out;
        for (int k = 0; k < kOutputs; ++k) {
            const double d = out[k] - row.target[k];
            total += d * d;
        }
    }
    return total;
}

Gradients sse_gradient(const MlpModel& m, const LabeledSet& set) {
    Gradients g = zero_gradients(m);
    for (const auto& row : set.rows) {
        check_input(m, row.input);
        accumulate_row_gradient(m, row, g);
    }
    return g;
}

TrainResult train(MlpModel model, const LabeledSet& set, const TrainConfig& cfg) {
    if (set.rows.empty()) throw EmptySet("training set is empty");
    if (cfg.learning_rate < 0.0) throw Error("learning rate must be >= 0");
    if (cfg.max_cycles < 1) throw Error("max_cycles must be >= 1");
    for (const auto& row : set.rows) check_input(model, row.input);

    const LabeledSet* work = &set;
    LabeledSet softened;
    if (cfg.target_softening > 0.0) {
        softened = soften_targets(set, cfg.target_softening);
        work = &softened;
    }

    std::vector<std::size_t> order(work->rows.size());
    std::iota(order.begin(), order.end(), 0);
    rng::Generator gen(cfg.seed);

    TrainResult res;
    for (int cycle = 0; cycle < cfg.max_cycles; ++cycle) {
        if (cfg.shuffle) gen.shuffle(order);
        if (cfg.full_batch) {
            Gradients g = zero_gradients(model);
            for (std::size_t idx : order) {
                accumulate_row_gradient(model, work->rows[idx], g);
            }
            apply_step(model, g, cfg.learning_rate);
        } else {
            for (std::size_t idx : order) {
                Gradients g = zero_gradients(model);
                accumulate_row_gradient(model, work->rows[idx], g);
                apply_step(model, g, cfg.learning_rate);
            }
        }
        const double cycle_sse = sse(model, *work);
        res.sse_history.push_back(cycle_sse);
        res.mse_history.push_back(cycle_sse /
                                  (static_cast<double>(work->rows.size()) * kOutputs));
        res.cycles_run = cycle + 1;
        if (!std::isfinite(cycle_sse)) {
            throw Diverged("sse became non-finite at cycle " + std::to_string(cycle));
        }
        if (cycle_sse <= cfg.target_sse) break;
    }
    res.model = std::move(model);
    return res;
}

Classification classify(const MlpModel& m, std::span<const double> x) {
    const auto out = forward(m, x);
    int best = 0;
    for (int k = 1; k < kOutputs; ++k) {
        if (out[k] > out[best]) best = k;
    }
    return Classification{best, m.labels[best], out};
}

void save(const MlpModel& m, std::ostream& out) {
    out << "ecotrip-mlp 1\n";
    out << "layers " << m.layers[0] << ' ' << m.layers[1] << ' ' << m.layers[2]
        << '\n';
    out << "labels " << m.labels[0] << ' ' << m.labels[1] << ' ' << m.labels[2]
        << '\n';
    auto write_block = [&](const char* name, const std::vector<double>& v,
                           int per_line) {
        out << name << '\n';
        for (std::size_t i = 0; i < v.size(); ++i) {
            out << text::format_double(v[i]);
            out << (((static_cast<int>(i) % per_line) == per_line - 1) ? '\n' : ' ');
        }
        if (!v.empty() && v.size() % per_line != 0) out << '\n';
    };
    write_block("w1", m.w1, m.layers[0]);
    write_block("b1", m.b1, m.layers[1]);
    write_block("w2", m.w2, m.layers[1]);
    write_block("b2", m.b2, kOutputs);
    out << "end\n";
}

void save_file(const MlpModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write weights file " + path);
    save(m, out);
}

MlpModel load(std::istream& in) {
    std::string word;
    if (!(in >> word) || word != "ecotrip-mlp") {
        throw CorruptFile("not a weights file (bad magic)");
    }
    int version = 0;
    if (!(in >> version)) throw CorruptFile("missing format version");
    if (version != 1) {
        throw VersionMismatch("unsupported weights version " +
                              std::to_string(version));
    }
    if (!(in >> word) || word != "layers") throw CorruptFile("missing layers");
    std::array<int, 3> layers{};
    if (!(in >> layers[0] >> layers[1] >> layers[2])) {
        throw CorruptFile("unreadable layer sizes");
    }
    check_topology(layers);
    if (!(in >> word) || word != "labels") throw CorruptFile("missing labels");
    MlpModel m;
    m.layers = layers;
    for (auto& label : m.labels) {
        if (!(in >> label)) throw CorruptFile("unreadable labels");
    }
    auto read_block = [&](const char* name, std::vector<double>& v, std::size_t n) {
        if (!(in >> word) || word != name) {
            throw CorruptFile(std::string("missing block ") + name);
        }
        v.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(in >> word)) throw CorruptFile(std::string("truncated block ") + name);
            if (!text::parse_double(word, v[i])) {
                throw CorruptFile(std::string("bad number in block ") + name);
            }
        }
    };
    read_block("w1", m.w1, static_cast<std::size_t>(layers[1]) * layers[0]);
    read_block("b1", m.b1, static_cast<std::size_t>(layers[1]));
    read_block("w2", m.w2, static_cast<std::size_t>(kOutputs) * layers[1]);
    read_block("b2", m.b2, static_cast<std::size_t>(kOutputs));
    if (!(in >> word) || word != "end") throw CorruptFile("missing end marker");
    return m;
}

MlpModel load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open weights file " + path);
    return load(in);
}

} // namespace ecotrip::mlp
