#include <doctest.h>

#include <cmath>

#include "ais/affinity.hpp"
#include "ais/dataset.hpp"

using namespace ais;

namespace {

Dataset line3() { return Dataset(3, 2, {0, 0, 0, 1, 0, 2}); }

}  // namespace

TEST_CASE("distance basics") {
    std::vector<double> a{0, 0}, b{3, 4};
    CHECK(distance(a, b) == doctest::Approx(5.0));
    CHECK(distance(a, a) == 0.0);
    std::vector<double> c{1, 2, 3};
    CHECK_THROWS_AS(distance(a, c), DataError);
}

TEST_CASE("distance between two iris rows") {
    std::vector<double> r0{5.1, 3.5, 1.4, 0.2}, r1{4.9, 3.0, 1.4, 0.2};
    CHECK(distance(r0, r1) == doctest::Approx(std::sqrt(0.29)));
}

TEST_CASE("distance satisfies metric axioms on random triples") {
    RandomSource rng(99);
    for (int t = 0; t < 500; ++t) {
        std::vector<double> a(3), b(3), c(3);
        for (int d = 0; d < 3; ++d) {
            a[d] = rng.uniform(-10, 10);
            b[d] = rng.uniform(-10, 10);
            c[d] = rng.uniform(-10, 10);
        }
        double ab = distance(a, b), ba = distance(b, a);
        double ac = distance(a, c), cb = distance(c, b);
        CHECK(ab >= 0.0);
        CHECK(ab == ba);
        CHECK(ab <= (ac + cb) * (1.0 + 8e-16));
    }
}

TEST_CASE("compute_nat enumerates all pairs") {
    // distances {1, 2, 1}, mean 4/3
    auto nat = compute_nat(line3(), 0.5);
    CHECK(nat.value == doctest::Approx(2.0 / 3.0));
    CHECK(nat.alpha == 0.5);
}

TEST_CASE("compute_nat degenerate cases") {
    Dataset twin(2, 2, {1, 1, 1, 1});
    CHECK(compute_nat(twin, 3.0).value == 0.0);
    Dataset single(1, 2, {1, 1});
    CHECK_THROWS_AS(compute_nat(single, 1.0), DataError);
}

TEST_CASE("compute_nat is linear in alpha") {
    auto data = make_blobs({{0, 0}, {4, 1}}, 20, 1.0, 5);
    auto n1 = compute_nat(data, 0.3);
    auto n2 = compute_nat(data, 0.6);
    CHECK(n2.value == 2.0 * n1.value);
}

TEST_CASE("sampled NAT within 5 percent of exact on N=500") {
    auto data = make_blobs({{0, 0, 0}, {5, 5, 5}}, 250, 1.2, 17);
    auto exact = compute_nat(data, 1.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto sampled = compute_nat(data, 1.0, /*exact_limit=*/100, seed);
        CHECK(std::abs(sampled.value - exact.value) / exact.value < 0.05);
    }
}

TEST_CASE("recognizes uses a strict threshold") {
    Nat nat{0.6, 1.0};
    std::vector<double> origin{0, 0};
    std::vector<double> at05{0.5, 0};
    std::vector<double> at06{0.6, 0};
    std::vector<double> at07{0.7, 0};
    CHECK(recognizes(origin, at05, nat));
    CHECK_FALSE(recognizes(origin, at06, nat));  // boundary is non-recognition
    CHECK_FALSE(recognizes(origin, at07, nat));
}
