#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <set>

#include "dwknn/neighbors.hpp"
#include "dwknn/rng.hpp"

using namespace dwknn;

namespace {

Dataset random_dataset(Rng& rng, std::size_t n, std::size_t d, int classes = 2) {
    Dataset ds;
    ds.n_rows = n;
    ds.n_cols = d;
    ds.class_count = classes;
    ds.features.resize(n * d);
    for (auto& x : ds.features) x = rng.next_double() * 4.0 - 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        ds.labels.push_back(i < static_cast<std::size_t>(classes)
                                ? static_cast<int>(i)
                                : static_cast<int>(rng.next_below(classes)));
    }
    return ds;
}

}  // namespace

TEST_CASE("knn_search on a tiny hand-sorted line") {
    Dataset ds;
    ds.n_rows = 3;
    ds.n_cols = 1;
    ds.class_count = 2;
    ds.features = {0.0, 1.0, 2.0};
    ds.labels = {0, 1, 0};

    const auto nb = knn_search(ds, {{0.4}}, 2, make_metric(MetricKind::euclidean));
    CHECK(nb.indices == std::vector<int>{0, 1});
    CHECK(nb.distances[0] == doctest::Approx(0.4));
    CHECK(nb.distances[1] == doctest::Approx(0.6));
    CHECK(nb.labels == std::vector<int>{0, 1});
}

TEST_CASE("knn_search with k equal to N returns everything sorted") {
    Rng rng(41);
    const Dataset ds = random_dataset(rng, 25, 3);
    const auto q = std::vector<double>{0.1, 0.2, 0.3};
    const auto nb = knn_search(ds, q, 25, make_metric(MetricKind::euclidean));
    CHECK(nb.size() == 25);
    CHECK(std::is_sorted(nb.distances.begin(), nb.distances.end()));
    const std::set<int> unique(nb.indices.begin(), nb.indices.end());
    CHECK(unique.size() == 25);
}

TEST_CASE("knn_search never returns the excluded index") {
    Rng rng(42);
    const Dataset ds = random_dataset(rng, 30, 4);
    for (int excl = 0; excl < 30; excl += 7) {
        const auto nb = knn_search(ds, ds.row(excl), 10, make_metric(MetricKind::euclidean), excl);
        for (int idx : nb.indices) CHECK(idx != excl);
    }
}

TEST_CASE("knn_search validates k") {
    Rng rng(43);
    const Dataset ds = random_dataset(rng, 10, 2);
    const std::vector<double> q{0.0, 0.0};
    CHECK_THROWS_AS(knn_search(ds, q, 0, make_metric(MetricKind::euclidean)),
                    std::invalid_argument);
    CHECK_THROWS_AS(knn_search(ds, q, 11, make_metric(MetricKind::euclidean)),
                    std::invalid_argument);
    CHECK_THROWS_AS(knn_search(ds, q, 10, make_metric(MetricKind::euclidean), 3),
                    std::invalid_argument);
    CHECK_NOTHROW(knn_search(ds, q, 10, make_metric(MetricKind::euclidean)));
}

TEST_CASE("oracle equivalence against a full sort on 200 random instances") {
    Rng rng(44);
    const Metric metrics[] = {make_metric(MetricKind::euclidean),
                              make_metric(MetricKind::manhattan),
                              make_metric(MetricKind::minkowski, 3.0),
                              make_metric(MetricKind::cosine)};
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t n = 5 + rng.next_below(100);
        const std::size_t d = 1 + rng.next_below(8);
        const Dataset ds = random_dataset(rng, n, d);
        std::vector<double> q(d);
        for (auto& x : q) x = rng.next_double() * 4.0 - 2.0;
        const int k = 1 + static_cast<int>(rng.next_below(n));
        const Metric& m = metrics[iter % 4];

        const auto nb = knn_search(ds, q, k, m);

        // Independent oracle: full distance list, fully sorted.
        std::vector<double> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = distance(m, q, ds.row(i));
        std::vector<double> sorted = all;
        std::sort(sorted.begin(), sorted.end());

        for (int i = 0; i < k; ++i) {
            CHECK(nb.distances[i] == sorted[i]);  // same backend -> exact
        }
        // No returned distance exceeds any non-returned one.
        if (static_cast<std::size_t>(k) < n) {
            double min_out = 1e300;
            const std::set<int> chosen(nb.indices.begin(), nb.indices.end());
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen.count(static_cast<int>(i))) min_out = std::min(min_out, all[i]);
            }
            CHECK(nb.distances.back() <= min_out + 1e-12);
        }
    }
}

TEST_CASE("distance ties break on the lower training index") {
    Dataset ds;
    ds.n_rows = 4;
    ds.n_cols = 1;
    ds.class_count = 2;
    ds.features = {1.0, -1.0, 1.0, 2.0};  // rows 0 and 2 tie at distance 1 from origin
    ds.labels = {0, 1, 1, 0};

    const auto nb = knn_search(ds, {{0.0}}, 2, make_metric(MetricKind::euclidean));
    CHECK(nb.indices == std::vector<int>{0, 1});  // 0 beats 2, 1 beats 2 by index at d=1

    const auto nb3 = knn_search(ds, {{0.0}}, 3, make_metric(MetricKind::euclidean));
    CHECK(nb3.indices == std::vector<int>{0, 1, 2});
}
