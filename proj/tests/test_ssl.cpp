#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "ais/affinity.hpp"
#include "ais/bench.hpp"
#include "ais/ssl.hpp"

using namespace ais;

TEST_CASE("seeded_kmeans with everything labeled reduces to class means") {
    auto data = make_blobs({{0, 0}, {8, 8}}, 10, 0.6, 4);
    std::map<std::size_t, int> labeled;
    for (std::size_t i = 0; i < data.rows(); ++i) labeled[i] = data.labels()[i];
    RandomSource rng(0);
    auto model = seeded_kmeans(data.without_labels(), labeled, 2, 50, rng);

    for (int cls = 0; cls < 2; ++cls) {
        std::vector<double> mean(2, 0.0);
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < data.rows(); ++i)
            if (data.labels()[i] == cls) {
                mean[0] += data.row(i)[0];
                mean[1] += data.row(i)[1];
                ++cnt;
            }
        mean[0] /= cnt;
        mean[1] /= cnt;
        CHECK(model.centroids[cls][0] == doctest::Approx(mean[0]));
        CHECK(model.centroids[cls][1] == doctest::Approx(mean[1]));
    }

    // accuracy equals the nearest-class-mean classifier
    auto pred = predict(model, data.without_labels());
    std::size_t agree = 0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        double d0 = distance(data.row(i), model.centroids[0]);
        double d1 = distance(data.row(i), model.centroids[1]);
        int nearest = d0 <= d1 ? 0 : 1;
        if (pred[i] == nearest) ++agree;
    }
    CHECK(agree == data.rows());
}

TEST_CASE("seeded_kmeans with no labels behaves as plain kmeans") {
    auto data = make_blobs({{0, 0}, {10, 10}}, 12, 0.5, 8).without_labels();
    RandomSource rng(5);
    auto model = seeded_kmeans(data, {}, 2, 50, rng);
    CHECK(model.centroids.size() == 2);
    CHECK(model.cluster_to_class.empty());
    auto pred = predict(model, data);
    // two tight blobs: the partition must match blob membership
    CHECK(pred[0] != pred[12]);
    for (std::size_t i = 1; i < 12; ++i) CHECK(pred[i] == pred[0]);
    for (std::size_t i = 13; i < 24; ++i) CHECK(pred[i] == pred[12]);
}

TEST_CASE("seeded_kmeans recovers two separated triples from one seed each") {
    // all 2^6 assignments checked offline: the blob split is optimal
    Dataset data(6, 1, {0.0, 0.1, 0.2, 10.0, 10.1, 10.2});
    std::map<std::size_t, int> labeled{{0, 0}, {3, 1}};
    RandomSource rng(0);
    auto model = seeded_kmeans(data, labeled, 2, 50, rng);
    auto pred = predict(model, data);
    CHECK(pred == std::vector<int>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("seeded_kmeans preconditions") {
    Dataset data(4, 1, {0, 1, 2, 3});
    RandomSource rng(0);
    CHECK_THROWS_AS(seeded_kmeans(data, {{9, 0}}, 2, 10, rng), DataError);
    CHECK_THROWS_AS(seeded_kmeans(data, {{0, 0}, {1, 1}, {2, 2}}, 2, 10, rng), DataError);
}

TEST_CASE("seeded_kmeans objective is non-increasing and seeds stay clamped") {
    RandomSource gen(21);
    for (int trial = 0; trial < 20; ++trial) {
        auto data = make_blobs({{0, 0}, {3, 1}, {1, 4}}, 12, 1.0, 100 + trial);
        std::map<std::size_t, int> labeled;
        for (std::size_t i = 0; i < data.rows(); i += 7) labeled[i] = data.labels()[i];
        RandomSource rng(trial);
        auto model = seeded_kmeans(data.without_labels(), labeled, 3, 50, rng);
        for (std::size_t i = 1; i < model.objective_history.size(); ++i)
            CHECK(model.objective_history[i] <= model.objective_history[i - 1] + 1e-9);
        for (const auto& [idx, cls] : labeled)
            CHECK(model.cluster_to_class.at(model.assignments[idx]) == cls);
    }
}

TEST_CASE("seeded_kmeans accuracy is invariant under row permutation") {
    RandomSource gen(77);
    for (int trial = 0; trial < 20; ++trial) {
        auto data = make_blobs({{0, 0}, {4, 2}}, 10, 1.0, 200 + trial);
        std::vector<std::size_t> perm(data.rows());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[gen.below(i)]);

        std::vector<double> feats;
        std::vector<int> labels;
        for (std::size_t i : perm) {
            auto r = data.row(i);
            feats.insert(feats.end(), r.begin(), r.end());
            labels.push_back(data.labels()[i]);
        }
        Dataset shuffled(data.rows(), data.dims(), std::move(feats), labels,
                         data.class_names());

        std::map<std::size_t, int> lab1{{0, data.labels()[0]},
                                        {10, data.labels()[10]}};
        std::map<std::size_t, int> lab2;
        for (std::size_t j = 0; j < perm.size(); ++j)
            if (perm[j] == 0 || perm[j] == 10) lab2[j] = data.labels()[perm[j]];

        RandomSource r1(0), r2(0);
        auto m1 = seeded_kmeans(data.without_labels(), lab1, 2, 50, r1);
        auto m2 = seeded_kmeans(shuffled.without_labels(), lab2, 2, 50, r2);
        double a1 = clustering_accuracy(predict(m1, data.without_labels()), data.labels());
        double a2 = clustering_accuracy(predict(m2, shuffled.without_labels()), labels);
        CHECK(a1 == doctest::Approx(a2));
    }
}

TEST_CASE("predict kmeans tie goes to the lower cluster index") {
    SeededKMeansModel model;
    model.centroids = {{0.0}, {10.0}};
    model.cluster_to_class = {{0, 0}, {1, 1}};
    Dataset mid(1, 1, {5.0});
    CHECK(predict(model, mid) == std::vector<int>{0});
}

TEST_CASE("transductive_fit separates two blobs from one seed per class") {
    auto data = make_blobs({{0, 0}, {10, 10}}, 20, 0.5, 3);
    std::map<std::size_t, int> labeled{{0, 0}, {20, 1}};
    RandomSource rng(0);
    auto model = transductive_fit(data.without_labels(), labeled, 200, {}, rng);
    auto pred = predict(model, data.without_labels());
    std::size_t correct = 0, total = 0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        if (labeled.contains(i)) continue;
        ++total;
        if (pred[i] == data.labels()[i]) ++correct;
    }
    CHECK(correct == total);
}

TEST_CASE("transductive_fit fully supervised on separable data") {
    Dataset data(6, 1, {0.0, 0.5, 1.0, 5.0, 5.5, 6.0});
    std::map<std::size_t, int> labeled{{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 1}, {5, 1}};
    RandomSource rng(0);
    auto model = transductive_fit(data, labeled, 200, {}, rng);
    std::vector<int> truth{0, 0, 0, 1, 1, 1};
    CHECK(classification_accuracy(predict(model, data), truth) == 100.0);
}

TEST_CASE("transductive_fit preconditions") {
    Dataset data(4, 1, {0, 1, 2, 3});
    RandomSource rng(0);
    CHECK_THROWS_AS(transductive_fit(data, {}, 10, {}, rng), DataError);
    CHECK_THROWS_AS(transductive_fit(data, {{0, 1}, {1, 1}}, 10, {}, rng), DataError);
}

TEST_CASE("transductive_fit is deterministic") {
    auto data = make_blobs({{0, 0}, {5, 3}}, 15, 1.0, 6);
    std::map<std::size_t, int> labeled{{0, 0}, {5, 0}, {15, 1}, {20, 1}};
    RandomSource r1(9), r2(9);
    auto m1 = transductive_fit(data.without_labels(), labeled, 150, {}, r1);
    auto m2 = transductive_fit(data.without_labels(), labeled, 150, {}, r2);
    CHECK(m1.weights == m2.weights);
}
