#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ecotrip/errors.hpp"

namespace ecotrip::mlp {

inline constexpr int kOutputs = 3;

// Feed-forward net with one hidden layer, logistic sigmoid on hidden and
// output units, and exactly three output nodes.
struct MlpModel {
    std::array<int, 3> layers{0, 0, kOutputs}; // {n_in, n_hidden, 3}
    std::vector<double> w1; // n_hidden x n_in, row-major
    std::vector<double> b1; // n_hidden
    std::vector<double> w2; // 3 x n_hidden, row-major
    std::vector<double> b2; // 3
    std::array<std::string, kOutputs> labels{"c0", "c1", "c2"};

    int inputs() const { return layers[0]; }
    int hidden() const { return layers[1]; }
};

struct LabeledRow {
    std::vector<double> input;
    std::array<double, kOutputs> target{}; // exact one-hot
};

struct LabeledSet {
    std::vector<LabeledRow> rows;

    // Checks row widths and one-hot targets; throws DimensionMismatch/Error.
    void validate(int n_in) const;
};

struct TrainConfig {
    double learning_rate = 0.2;
    int max_cycles = 1000;
    double target_sse = 0.0;
    std::uint64_t seed = 0;       // drives shuffling only
    double init_range = 0.5;
    bool shuffle = false;         // fixed dataset order per cycle by default
    bool full_batch = false;      // one summed update per cycle instead of per-sample
    double target_softening = 0.0; // maps {0,1} targets to {s, 1-s}
};

struct TrainResult {
    MlpModel model;
    std::vector<double> sse_history; // evaluated after each cycle
    std::vector<double> mse_history; // sse / (rows * outputs)
    int cycles_run = 0;
};

struct Classification {
    int class_index = 0;
    std::string label;
    std::array<double, kOutputs> confidence{};
};

struct Gradients {
    std::vector<double> w1, b1, w2, b2;
};

// Weights and biases drawn uniformly from [-init_range, +init_range]; the
// same seed reproduces the model bitwise.
MlpModel init(std::array<int, 3> layers, std::uint64_t seed,
              double init_range = 0.5); // throws BadTopology

std::array<double, kOutputs> forward(const MlpModel& m, std::span<const double> x);

// Sum over rows and outputs of (out - target)^2.
double sse(const MlpModel& m, const LabeledSet& set); // throws EmptySet

// Analytic gradient of sse() over the whole set.
Gradients sse_gradient(const MlpModel& m, const LabeledSet& set);

// Plain stochastic backpropagation with per-sample updates (or one summed
// update per cycle when full_batch). Deterministic given config.
TrainResult train(MlpModel model, const LabeledSet& set, const TrainConfig& cfg);

// Argmax with ties broken toward the lowest class index.
Classification classify(const MlpModel& m, std::span<const double> x);

void save(const MlpModel& m, std::ostream& out);
void save_file(const MlpModel& m, const std::string& path);
MlpModel load(std::istream& in);  // CorruptFile, VersionMismatch, BadTopology
MlpModel load_file(const std::string& path);

} // namespace ecotrip::mlp
