#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>

#include "dwknn/dwknn.hpp"
#include "dwknn/model.hpp"
#include "dwknn/rng.hpp"

using namespace dwknn;

namespace {

const std::string kDataDir = DWKNN_DATA_DIR;

// The offset rides on every coordinate so z-score normalization inside fit()
// cannot squash the separation into one axis.
Dataset two_blobs(Rng& rng, std::size_t per_class, double separation, std::size_t d = 3) {
    Dataset ds;
    ds.n_rows = 2 * per_class;
    ds.n_cols = d;
    ds.class_count = 2;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const bool second = i >= per_class;
        for (std::size_t j = 0; j < d; ++j) {
            ds.features.push_back(rng.next_normal() * 0.5 + (second ? separation : 0.0));
        }
        ds.labels.push_back(second ? 1 : 0);
    }
    return ds;
}

}  // namespace

TEST_CASE("compute_validity hand-checked cases") {
    const Metric m = make_metric(MetricKind::euclidean);

    Dataset line;
    line.n_rows = 4;
    line.n_cols = 1;
    line.class_count = 2;
    line.features = {0.0, 1.0, 2.0, 3.0};
    line.labels = {0, 0, 1, 1};
    // Neighbors of point 1 at k_v=2 are {0, 2}: one agrees.
    CHECK(compute_validity(line, 1, 2, m) == doctest::Approx(0.5));
    CHECK(compute_validity(line, 0, 1, m) == 1.0);
    CHECK(compute_validity(line, 0, 3, m) == doctest::Approx(1.0 / 3.0));

    // A point whose whole neighborhood disagrees scores zero.
    Dataset lone;
    lone.n_rows = 6;
    lone.n_cols = 1;
    lone.class_count = 2;
    lone.features = {0.0, 0.1, -0.1, 0.2, -0.2, 0.15};
    lone.labels = {1, 0, 0, 0, 0, 0};
    CHECK(compute_validity(lone, 0, 5, m) == 0.0);

    CHECK_THROWS_AS(compute_validity(line, 0, 4, m), std::invalid_argument);
}

TEST_CASE("fit on iris produces quantized validities") {
    const Dataset iris = load_csv(kDataDir + "/iris.csv", "species");
    const FittedModel model = fit(iris, DwknnConfig{});
    REQUIRE(model.validities.size() == 150);
    for (double v : model.validities) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        const double scaled = v * 10.0;  // k_v = 10
        CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-12));
    }
}

TEST_CASE("well separated blobs give validity 1 everywhere") {
    Rng rng(51);
    const Dataset ds = two_blobs(rng, 30, 50.0);
    const FittedModel model = fit(ds, DwknnConfig{});
    for (double v : model.validities) CHECK(v == 1.0);
}

TEST_CASE("label noise lowers the validity of flipped points") {
    Rng rng(52);
    Dataset ds = two_blobs(rng, 100, 8.0);
    std::vector<bool> flipped(ds.n_rows, false);
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        if (rng.next_double() < 0.1) {
            ds.labels[i] = 1 - ds.labels[i];
            flipped[i] = true;
        }
    }
    const FittedModel model = fit(ds, DwknnConfig{});
    double flipped_mean = 0.0, clean_mean = 0.0;
    int nf = 0, nc = 0;
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        if (flipped[i]) {
            flipped_mean += model.validities[i];
            ++nf;
        } else {
            clean_mean += model.validities[i];
            ++nc;
        }
    }
    REQUIRE(nf > 0);
    flipped_mean /= nf;
    clean_mean /= nc;
    CHECK(flipped_mean < clean_mean);
}

TEST_CASE("self-exclusion keeps a duplicated minority point honest") {
    // Two copies of a class-1 point inside a class-0 cluster: each copy sees
    // the other copy plus two disagreeing points, so validity is exactly 1/3.
    Dataset ds;
    ds.n_rows = 8;
    ds.n_cols = 1;
    ds.class_count = 2;
    ds.features = {0.0, 0.0, 0.05, -0.05, 0.1, -0.1, 5.0, 5.1};
    ds.labels = {1, 1, 0, 0, 0, 0, 0, 0};
    const Metric m = make_metric(MetricKind::euclidean);
    CHECK(compute_validity(ds, 0, 3, m) == doctest::Approx(1.0 / 3.0));
    CHECK(compute_validity(ds, 1, 3, m) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("contaminating a whole neighborhood drives validity to 1") {
    Rng rng(53);
    Dataset ds = two_blobs(rng, 40, 3.0);
    const Metric m = make_metric(MetricKind::euclidean);
    const int i = 5;
    const int k_v = 10;
    const auto nb = knn_search(ds, ds.row(i), k_v, m, i);
    for (int idx : nb.indices) ds.labels[idx] = ds.labels[i];
    CHECK(compute_validity(ds, i, k_v, m) == 1.0);
}

TEST_CASE("fit validates dataset size") {
    Rng rng(54);
    const Dataset ds = two_blobs(rng, 5, 3.0);  // N = 10
    DwknnConfig cfg;
    cfg.k_v = 10;  // needs N >= 11
    CHECK_THROWS_AS(fit(ds, cfg), std::invalid_argument);
    cfg.k_v = 9;
    CHECK_NOTHROW(fit(ds, cfg));
}

TEST_CASE("model persistence round trip") {
    const Dataset iris = load_csv(kDataDir + "/iris.csv", "species");
    DwknnConfig cfg;
    cfg.gamma = 1.5;
    cfg.pooling = Pooling::median;
    cfg.metric = make_metric(MetricKind::manhattan);
    cfg.tie_seed = 1234;
    const FittedModel model = fit(iris, cfg);

    const std::string path = "/tmp/dwknn_test_model.csv";
    save_model(model, path);
    const FittedModel loaded = load_model(path);
    std::remove(path.c_str());

    CHECK(loaded.train.features == model.train.features);  // exact round trip
    CHECK(loaded.train.labels == model.train.labels);
    CHECK(loaded.validities == model.validities);
    CHECK(loaded.config.k == cfg.k);
    CHECK(loaded.config.k_v == cfg.k_v);
    CHECK(loaded.config.gamma == cfg.gamma);
    CHECK(loaded.config.pooling == cfg.pooling);
    CHECK(loaded.config.metric.kind == cfg.metric.kind);
    CHECK(loaded.config.tie_seed == cfg.tie_seed);
    CHECK(loaded.norm.means == model.norm.means);
    CHECK(loaded.norm.stddevs == model.norm.stddevs);
    CHECK(loaded.train.class_names == model.train.class_names);

    // Same predictions after reload.
    Rng rng(55);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<double> q(4);
        for (auto& x : q) x = rng.next_normal();
        CHECK(predict(model, q).first == predict(loaded, q).first);
    }

    CHECK_THROWS_AS(load_model("/nonexistent/model.csv"), std::runtime_error);
}
