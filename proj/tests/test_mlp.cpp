#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "ecotrip/errors.hpp"
#include "ecotrip/mlp.hpp"
#include "ecotrip/rand.hpp"

using namespace ecotrip;
using namespace ecotrip::mlp;

namespace {

MlpModel zero_model(int n_in, int n_hidden) {
    MlpModel m;
    m.layers = {n_in, n_hidden, 3};
    m.w1.assign(static_cast<std::size_t>(n_hidden) * n_in, 0.0);
    m.b1.assign(static_cast<std::size_t>(n_hidden), 0.0);
    m.w2.assign(static_cast<std::size_t>(3) * n_hidden, 0.0);
    m.b2.assign(3, 0.0);
    return m;
}

LabeledSet random_set(int n_in, std::size_t rows, std::uint64_t seed) {
    rng::Generator gen(seed);
    LabeledSet set;
    for (std::size_t r = 0; r < rows; ++r) {
        LabeledRow row;
        for (int i = 0; i < n_in; ++i) row.input.push_back(gen.uniform());
        row.target[gen.index(3)] = 1.0;
        set.rows.push_back(std::move(row));
    }
    return set;
}

// max over all parameters of |analytic - central difference| relative error
double gradient_check(MlpModel m, const LabeledSet& set, double eps) {
    const Gradients g = sse_gradient(m, set);
    double worst = 0.0;
    auto check_block = [&](std::vector<double>& params, const std::vector<double>& grad) {
        for (std::size_t i = 0; i < params.size(); ++i) {
            const double keep = params[i];
            params[i] = keep + eps;
            const double up = sse(m, set);
            params[i] = keep - eps;
            const double down = sse(m, set);
            params[i] = keep;
            const double fd = (up - down) / (2.0 * eps);
            const double rel = std::abs(grad[i] - fd) /
                               std::max(1.0, std::abs(grad[i]) + std::abs(fd));
            worst = std::max(worst, rel);
        }
    };
    check_block(m.w1, g.w1);
    check_block(m.b1, g.b1);
    check_block(m.w2, g.w2);
    check_block(m.b2, g.b2);
    return worst;
}

} // namespace

TEST_CASE("init is seeded and topology-checked") {
    const MlpModel a = init({6, 8, 3}, 1);
    const MlpModel b = init({6, 8, 3}, 1);
    CHECK(a.w1 == b.w1);
    CHECK(a.b1 == b.b1);
    CHECK(a.w2 == b.w2);
    CHECK(a.b2 == b.b2);
    const MlpModel c = init({6, 8, 3}, 2);
    CHECK(a.w1 != c.w1);
    for (double w : a.w1) CHECK(std::abs(w) <= 0.5);

    CHECK_THROWS_AS(init({6, 8, 4}, 1), BadTopology);
    CHECK_THROWS_AS(init({0, 8, 3}, 1), BadTopology);
    CHECK_THROWS_AS(init({6, 0, 3}, 1), BadTopology);
}

TEST_CASE("forward pass") {
    const MlpModel zeros = zero_model(2, 3);
    const auto out = forward(zeros, std::vector<double>{0.3, 0.8});
    CHECK(out[0] == 0.5);
    CHECK(out[1] == 0.5);
    CHECK(out[2] == 0.5);

    const MlpModel m = init({4, 5, 3}, 7);
    const auto o = forward(m, std::vector<double>{0.1, 0.9, 0.4, 0.2});
    for (double v : o) {
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
    CHECK_THROWS_AS(forward(m, std::vector<double>{1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("hand-evaluated tiny model") {
    // 1-1-3, all weights 1, biases 0, x = [1]:
    // hidden = sigma(1) = 0.7310585786300049
    // outputs = sigma(hidden) = 0.6750375273768237
    MlpModel m = zero_model(1, 1);
    m.w1 = {1.0};
    m.w2 = {1.0, 1.0, 1.0};
    const auto out = forward(m, std::vector<double>{1.0});
    for (double v : out) {
        CHECK(v == doctest::Approx(0.6750375273768237).epsilon(1e-12));
    }
}

TEST_CASE("sse") {
    const MlpModel zeros = zero_model(2, 2);
    LabeledSet one;
    one.rows.push_back({{0.0, 0.0}, {1.0, 0.0, 0.0}});
    CHECK(sse(zeros, one) == doctest::Approx(0.75).epsilon(1e-12)); // 3 x 0.25

    LabeledSet a = random_set(2, 5, 11);
    LabeledSet b = random_set(2, 7, 12);
    LabeledSet both = a;
    both.rows.insert(both.rows.end(), b.rows.begin(), b.rows.end());
    const MlpModel m = init({2, 4, 3}, 3);
    CHECK(sse(m, both) == doctest::Approx(sse(m, a) + sse(m, b)).epsilon(1e-12));

    CHECK_THROWS_AS(sse(m, LabeledSet{}), EmptySet);
}

TEST_CASE("analytic gradients match central finite differences") {
    const std::array<int, 3> shapes[] = {{1, 3, 3}, {2, 2, 3}, {4, 6, 3}, {6, 8, 3}};
    int idx = 0;
    for (const auto& shape : shapes) {
        for (int rep = 0; rep < 3; ++rep, ++idx) {
            const MlpModel m = init(shape, 100 + static_cast<std::uint64_t>(idx));
            const LabeledSet set =
                random_set(shape[0], 4, 200 + static_cast<std::uint64_t>(idx));
            const double worst = gradient_check(m, set, 1e-5);
            CHECK(worst < 1e-6);
        }
    }
}

TEST_CASE("zero learning rate leaves the model untouched") {
    const MlpModel m = init({3, 4, 3}, 5);
    const LabeledSet set = random_set(3, 6, 21);
    TrainConfig cfg;
    cfg.learning_rate = 0.0;
    cfg.max_cycles = 5;
    const TrainResult r = train(m, set, cfg);
    CHECK(r.model.w1 == m.w1);
    CHECK(r.model.b2 == m.b2);
    for (double s : r.sse_history) CHECK(s == r.sse_history.front());
}

TEST_CASE("full-batch descent at small rate never increases SSE") {
    const MlpModel m = init({4, 5, 3}, 9);
    const LabeledSet set = random_set(4, 12, 33);
    TrainConfig cfg;
    cfg.learning_rate = 1e-3;
    cfg.max_cycles = 50;
    cfg.full_batch = true;
    const TrainResult r = train(m, set, cfg);
    REQUIRE(r.sse_history.size() == 50);
    double prev = sse(m, set);
    for (double s : r.sse_history) {
        CHECK(s <= prev + 1e-12);
        prev = s;
    }
}

TEST_CASE("training is deterministic and reduces SSE on an easy set") {
    // two well-separated clusters -> classes 0 and 1
    LabeledSet set;
    rng::Generator gen(77);
    for (int i = 0; i < 30; ++i) {
        LabeledRow row;
        const bool hi = i % 2 == 0;
        row.input = {gen.uniform(hi ? 0.8 : 0.0, hi ? 1.0 : 0.2),
                     gen.uniform(hi ? 0.0 : 0.8, hi ? 0.2 : 1.0)};
        row.target[hi ? 0 : 1] = 1.0;
        set.rows.push_back(std::move(row));
    }
    set.validate(2);

    const MlpModel m = init({2, 4, 3}, 13);
    TrainConfig cfg;
    cfg.max_cycles = 200;
    const TrainResult r1 = train(m, set, cfg);
    const TrainResult r2 = train(m, set, cfg);
    CHECK(r1.sse_history == r2.sse_history);
    CHECK(r1.model.w1 == r2.model.w1);
    CHECK(r1.model.w2 == r2.model.w2);
    CHECK(r1.sse_history.back() < sse(m, set));
    CHECK(r1.sse_history.back() < 0.5 * r1.sse_history.front());

    // seeded shuffling is deterministic too
    cfg.shuffle = true;
    cfg.seed = 4242;
    const TrainResult s1 = train(m, set, cfg);
    const TrainResult s2 = train(m, set, cfg);
    CHECK(s1.model.w1 == s2.model.w1);
}

TEST_CASE("non-finite SSE raises Diverged") {
    MlpModel m = init({2, 3, 3}, 1);
    m.w1[0] = std::numeric_limits<double>::quiet_NaN();
    const LabeledSet set = random_set(2, 4, 5);
    TrainConfig cfg;
    cfg.max_cycles = 3;
    CHECK_THROWS_AS(train(m, set, cfg), Diverged);
}

TEST_CASE("classify takes the argmax with low-index tie-break") {
    MlpModel m = zero_model(2, 2);
    m.labels = {"urban", "suburban", "highway"};
    auto logit = [](double p) { return std::log(p / (1.0 - p)); };
    m.b2 = {logit(0.9), logit(0.1), logit(0.2)};
    const Classification c = classify(m, std::vector<double>{0.0, 0.0});
    CHECK(c.class_index == 0);
    CHECK(c.label == "urban");
    CHECK(c.confidence[0] == doctest::Approx(0.9).epsilon(1e-9));

    // all-equal outputs tie -> lowest index
    MlpModel tie = zero_model(2, 2);
    CHECK(classify(tie, std::vector<double>{0.4, 0.6}).class_index == 0);
}

TEST_CASE("save/load round-trips bitwise") {
    MlpModel m = init({5, 7, 3}, 99);
    m.labels = {"quiet", "normal", "aggressive"};
    std::ostringstream out;
    save(m, out);
    std::istringstream in(out.str());
    const MlpModel back = load(in);
    CHECK(back.layers == m.layers);
    CHECK(back.labels == m.labels);
    CHECK(back.w1 == m.w1);
    CHECK(back.b1 == m.b1);
    CHECK(back.w2 == m.w2);
    CHECK(back.b2 == m.b2);

    std::ostringstream out2;
    save(back, out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("weights file error taxonomy") {
    const MlpModel m = init({2, 2, 3}, 8);
    std::ostringstream out;
    save(m, out);
    const std::string text = out.str();

    {
        std::istringstream bad("not-a-weights-file 1\n");
        CHECK_THROWS_AS(load(bad), CorruptFile);
    }
    {
        std::istringstream truncated(text.substr(0, text.size() / 2));
        CHECK_THROWS_AS(load(truncated), CorruptFile);
    }
    {
        std::string wrong_version = text;
        wrong_version.replace(wrong_version.find(" 1\n"), 3, " 2\n");
        std::istringstream in(wrong_version);
        CHECK_THROWS_AS(load(in), VersionMismatch);
    }
    {
        std::string four_out = text;
        four_out.replace(four_out.find("layers 2 2 3"), 12, "layers 2 2 4");
        std::istringstream in(four_out);
        CHECK_THROWS_AS(load(in), BadTopology);
    }
}

TEST_CASE("labeled set validation") {
    LabeledSet set;
    set.rows.push_back({{0.1, 0.2}, {1.0, 0.0, 0.0}});
    set.validate(2);
    CHECK_THROWS_AS(set.validate(3), DimensionMismatch);

    LabeledSet two_hot;
    two_hot.rows.push_back({{0.1, 0.2}, {1.0, 1.0, 0.0}});
    CHECK_THROWS_AS(two_hot.validate(2), Error);

    LabeledSet soft;
    soft.rows.push_back({{0.1, 0.2}, {0.9, 0.1, 0.0}});
    CHECK_THROWS_AS(soft.validate(2), Error);
}
