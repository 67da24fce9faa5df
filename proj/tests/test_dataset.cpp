#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ais/affinity.hpp"
#include "ais/dataset.hpp"

using namespace ais;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string(AIS_BINARY_DIR) + "/" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

const std::string kIrisPath = std::string(AIS_DATA_DIR) + "/iris.csv";

}  // namespace

TEST_CASE("load_csv maps labels in first-appearance order") {
    auto path = write_temp("t_basic.csv", "1,2,a\n3,4,b\n5,6,a\n");
    auto data = load_csv(path, /*has_header=*/false);
    CHECK(data.rows() == 3);
    CHECK(data.dims() == 2);
    CHECK(data.labels() == std::vector<int>{0, 1, 0});
    CHECK(data.class_names() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("load_csv bundled iris") {
    auto data = load_csv(kIrisPath);
    CHECK(data.rows() == 150);
    CHECK(data.dims() == 4);
    CHECK(data.class_count() == 3);
}

TEST_CASE("load_csv reports row and column of a bad cell") {
    auto path = write_temp("t_bad.csv", "1,2,x\n3,abc,y\n");
    CHECK_THROWS_WITH_AS(load_csv(path, false), doctest::Contains("row 1"), DataError);
    try {
        load_csv(path, false);
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("column 1") != std::string::npos);
    }
}

TEST_CASE("load_csv error paths") {
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), DataError);
    auto empty = write_temp("t_empty.csv", "");
    CHECK_THROWS_AS(load_csv(empty, false), DataError);
    auto ragged = write_temp("t_ragged.csv", "1,2\n3\n");
    CHECK_THROWS_WITH_AS(load_csv(ragged, false), doctest::Contains("ragged"), DataError);
}

TEST_CASE("label column selection") {
    auto all_numeric = write_temp("t_num.csv", "1,2,3\n4,5,6\n");
    CHECK_FALSE(load_csv(all_numeric, false).has_labels());
    auto forced = load_csv(all_numeric, false, LabelColumn::at(2));
    CHECK(forced.has_labels());
    CHECK(forced.dims() == 2);
}

TEST_CASE("label column none with text cell is a parse error") {
    auto path = write_temp("t_text.csv", "1,a\n2,b\n");
    CHECK_THROWS_AS(load_csv(path, false, LabelColumn::none()), DataError);
}

TEST_CASE("compute_ranges") {
    Dataset d(2, 2, {0, 0, 2, 4});
    auto r = compute_ranges(d);
    CHECK(r.min == std::vector<double>{0, 0});
    CHECK(r.max == std::vector<double>{2, 4});

    Dataset single(1, 2, {7, -1});
    auto rs = compute_ranges(single);
    CHECK(rs.min == rs.max);
    CHECK(rs.min == std::vector<double>{7, -1});
}

TEST_CASE("compute_ranges on bundled iris, dimension 0") {
    auto data = load_csv(kIrisPath);
    auto r = compute_ranges(data);
    CHECK(r.min[0] == doctest::Approx(4.3));
    CHECK(r.max[0] == doctest::Approx(7.9));
}

TEST_CASE("hide_labels") {
    auto path = write_temp("t_hide.csv", "1,2,a\n3,4,b\n5,6,a\n");
    auto data = load_csv(path, false);
    auto [unlabeled, oracle] = hide_labels(data);
    CHECK_FALSE(unlabeled.has_labels());
    CHECK(unlabeled.rows() == 3);
    CHECK(unlabeled.features() == data.features());
    CHECK(oracle.query(1) == 1);
    CHECK(oracle.query(1) == 1);
    CHECK(oracle.query_count() == 2);
    CHECK_THROWS_WITH_AS(hide_labels(unlabeled), doctest::Contains("no labels"), DataError);
}

TEST_CASE("make_blobs basics") {
    auto data = make_blobs({{0, 0}, {5, 5}}, 10, 1.0, 42);
    CHECK(data.rows() == 20);
    int counts[2] = {0, 0};
    for (int l : data.labels()) ++counts[l];
    CHECK(counts[0] == 10);
    CHECK(counts[1] == 10);

    auto again = make_blobs({{0, 0}, {5, 5}}, 10, 1.0, 42);
    CHECK(again.features() == data.features());
}

TEST_CASE("make_blobs well separated centers classify by nearest center") {
    std::vector<std::vector<double>> centers = {{0, 0}, {100, 100}};
    auto data = make_blobs(centers, 25, 1.0, 7);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        double d0 = distance(data.row(i), std::span<const double>(centers[0]));
        double d1 = distance(data.row(i), std::span<const double>(centers[1]));
        int nearest = d0 < d1 ? 0 : 1;
        CHECK(nearest == data.labels()[i]);
    }
}

TEST_CASE("make_blobs preconditions") {
    CHECK_THROWS_AS(make_blobs({}, 5, 1.0, 0), DataError);
    CHECK_THROWS_AS(make_blobs({{0, 0}}, 5, 0.0, 0), DataError);
}

TEST_CASE("csv round trip preserves features and label ids") {
    auto data = make_blobs({{0, 0}, {3, 3}}, 8, 0.5, 11);
    auto path = std::string(AIS_BINARY_DIR) + "/t_roundtrip.csv";
    save_csv(data, path);
    auto back = load_csv(path, false);
    REQUIRE(back.rows() == data.rows());
    REQUIRE(back.dims() == data.dims());
    for (std::size_t i = 0; i < data.features().size(); ++i)
        CHECK(back.features()[i] == doctest::Approx(data.features()[i]).epsilon(1e-15));
    CHECK(back.labels() == data.labels());
}

TEST_CASE("ranges bound every blob sample with equality attained") {
    auto data = make_blobs({{1, -2}, {4, 4}}, 30, 0.7, 3);
    auto r = compute_ranges(data);
    for (std::size_t d = 0; d < data.dims(); ++d) {
        bool hit_min = false, hit_max = false;
        for (std::size_t i = 0; i < data.rows(); ++i) {
            CHECK(data.row(i)[d] >= r.min[d]);
            CHECK(data.row(i)[d] <= r.max[d]);
            if (data.row(i)[d] == r.min[d]) hit_min = true;
            if (data.row(i)[d] == r.max[d]) hit_max = true;
        }
        CHECK(hit_min);
        CHECK(hit_max);
    }
}

TEST_CASE("min_max_normalize maps to the unit box") {
    auto data = make_blobs({{2, 9}}, 20, 1.5, 5);
    auto norm = min_max_normalize(data);
    auto r = compute_ranges(norm);
    for (std::size_t d = 0; d < norm.dims(); ++d) {
        CHECK(r.min[d] == doctest::Approx(0.0));
        CHECK(r.max[d] == doctest::Approx(1.0));
    }
}
