#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "dwknn/distance.hpp"
#include "dwknn/kernels.hpp"
#include "dwknn/rng.hpp"

using namespace dwknn;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t d, double scale = 2.0) {
    std::vector<double> v(d);
    for (auto& x : v) x = (rng.next_double() - 0.5) * scale;
    return v;
}

}  // namespace

TEST_CASE("distance closed forms") {
    const std::vector<double> o{0.0, 0.0};
    CHECK(distance(make_metric(MetricKind::euclidean), o, {{3.0, 4.0}}) == doctest::Approx(5.0));
    CHECK(distance(make_metric(MetricKind::manhattan), o, {{3.0, 4.0}}) == doctest::Approx(7.0));
    CHECK(distance(make_metric(MetricKind::minkowski, 3.0), o, {{1.0, 1.0}}) ==
          doctest::Approx(std::cbrt(2.0)));
    CHECK(distance(make_metric(MetricKind::cosine), {{1.0, 0.0}}, {{0.0, 1.0}}) ==
          doctest::Approx(1.0));
}

TEST_CASE("distance errors and corner cases") {
    CHECK_THROWS_AS(distance(make_metric(MetricKind::euclidean), {{1.0}}, {{1.0, 2.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_metric(MetricKind::minkowski, 0.5), std::invalid_argument);

    // Zero vector under cosine maps to the neutral value.
    CHECK(distance(make_metric(MetricKind::cosine), {{0.0, 0.0}}, {{1.0, 2.0}}) == 1.0);
    CHECK(distance(make_metric(MetricKind::cosine), {{1.0, 2.0}}, {{0.0, 0.0}}) == 1.0);
}

TEST_CASE("metric name round trip") {
    for (auto kind : {MetricKind::euclidean, MetricKind::manhattan, MetricKind::minkowski,
                      MetricKind::cosine}) {
        CHECK(metric_kind_from_string(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(metric_kind_from_string("chebyshev"), std::invalid_argument);
}

TEST_CASE("symmetry and identity properties") {
    Rng rng(11);
    const Metric metrics[] = {
        make_metric(MetricKind::euclidean), make_metric(MetricKind::manhattan),
        make_metric(MetricKind::minkowski, 3.0), make_metric(MetricKind::minkowski, 1.7),
        make_metric(MetricKind::cosine)};
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t d = 1 + rng.next_below(16);
        const auto a = random_vec(rng, d);
        const auto b = random_vec(rng, d);
        for (const auto& m : metrics) {
            CHECK(distance(m, a, b) == distance(m, b, a));  // exact
            CHECK(distance(m, a, b) >= 0.0);
            if (m.kind != MetricKind::cosine) {
                CHECK(distance(m, a, a) == 0.0);
            } else {
                CHECK(distance(m, a, a) == doctest::Approx(0.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("triangle inequality for euclidean and manhattan") {
    Rng rng(12);
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t d = 1 + rng.next_below(8);
        const auto a = random_vec(rng, d);
        const auto b = random_vec(rng, d);
        const auto c = random_vec(rng, d);
        for (auto kind : {MetricKind::euclidean, MetricKind::manhattan}) {
            const Metric m = make_metric(kind);
            CHECK(distance(m, a, c) <= distance(m, a, b) + distance(m, b, c) + 1e-9);
        }
    }
}

TEST_CASE("scaling behaviour") {
    Rng rng(13);
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t d = 2 + rng.next_below(8);
        const auto a = random_vec(rng, d);
        const auto b = random_vec(rng, d);
        const double lambda = 0.1 + 4.0 * rng.next_double();
        std::vector<double> sa(d), sb(d);
        for (std::size_t j = 0; j < d; ++j) {
            sa[j] = lambda * a[j];
            sb[j] = lambda * b[j];
        }
        for (auto kind : {MetricKind::euclidean, MetricKind::manhattan, MetricKind::minkowski}) {
            const Metric m = make_metric(kind);
            CHECK(distance(m, sa, sb) ==
                  doctest::Approx(lambda * distance(m, a, b)).epsilon(1e-10));
        }
        const Metric cos = make_metric(MetricKind::cosine);
        CHECK(distance(cos, sa, sb) == doctest::Approx(distance(cos, a, b)).epsilon(1e-10));
    }
}

TEST_CASE("kernel backends agree with the scalar reference") {
    const auto& scalar = kernels::scalar_backend();

    std::vector<const kernels::Backend*> others;
#if defined(__x86_64__) || defined(_M_X64)
    if (kernels::avx2_available()) others.push_back(&kernels::avx2_backend());
#endif
#if defined(__aarch64__)
    others.push_back(&kernels::neon_backend());
#endif
    if (others.empty()) return;  // nothing beyond scalar on this machine

    Rng rng(21);
    for (int iter = 0; iter < 40; ++iter) {
        const std::size_t d = 1 + rng.next_below(40);
        const std::size_t n = 1 + rng.next_below(60);
        const auto q = random_vec(rng, d);
        std::vector<double> rows(n * d);
        for (auto& x : rows) x = (rng.next_double() - 0.5) * 4.0;

        std::vector<double> ref(n), got(n);
        for (const auto* other : others) {
            scalar.euclidean(q.data(), rows.data(), n, d, ref.data());
            other->euclidean(q.data(), rows.data(), n, d, got.data());
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12));
            }
            scalar.manhattan(q.data(), rows.data(), n, d, ref.data());
            other->manhattan(q.data(), rows.data(), n, d, got.data());
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12));
            }
            for (double p : {3.0, 1.5}) {
                scalar.minkowski(q.data(), rows.data(), n, d, p, ref.data());
                other->minkowski(q.data(), rows.data(), n, d, p, got.data());
                for (std::size_t i = 0; i < n; ++i) {
                    CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12));
                }
            }
            scalar.cosine(q.data(), rows.data(), n, d, ref.data());
            other->cosine(q.data(), rows.data(), n, d, got.data());
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("batch path matches the single-pair path bit for bit") {
    // distance() routes through the same backend row kernel, so values must
    // be identical, not just close.
    Rng rng(22);
    const Metric metrics[] = {make_metric(MetricKind::euclidean),
                              make_metric(MetricKind::manhattan),
                              make_metric(MetricKind::minkowski, 3.0),
                              make_metric(MetricKind::cosine)};
    for (int iter = 0; iter < 20; ++iter) {
        const std::size_t d = 1 + rng.next_below(20);
        const std::size_t n = 1 + rng.next_below(30);
        const auto q = random_vec(rng, d);
        std::vector<double> rows(n * d);
        for (auto& x : rows) x = (rng.next_double() - 0.5) * 4.0;

        for (const auto& m : metrics) {
            std::vector<double> batch(n);
            distance_to_rows(m, q, rows.data(), n, d, batch.data());
            for (std::size_t i = 0; i < n; ++i) {
                const std::span<const double> row{rows.data() + i * d, d};
                CHECK(distance(m, q, row) == batch[i]);
            }
        }
    }
}
