#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ais/rng.hpp"

namespace ais {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// N x D feature matrix with optional dense class labels.
// Immutable after construction by convention; row-major storage.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::size_t n, std::size_t d, std::vector<double> features,
            std::optional<std::vector<int>> labels = std::nullopt,
            std::vector<std::string> class_names = {},
            std::string name = "");

    std::size_t rows() const { return n_; }
    std::size_t dims() const { return d_; }
    const std::string& name() const { return name_; }

    std::span<const double> row(std::size_t i) const {
        return {features_.data() + i * d_, d_};
    }
    const std::vector<double>& features() const { return features_; }

    bool has_labels() const { return labels_.has_value(); }
    const std::vector<int>& labels() const;
    std::size_t class_count() const { return class_names_.size(); }
    const std::vector<std::string>& class_names() const { return class_names_; }

    Dataset without_labels() const;

private:
    std::size_t n_ = 0, d_ = 0;
    std::vector<double> features_;
    std::optional<std::vector<int>> labels_;
    std::vector<std::string> class_names_;
    std::string name_;
};

struct FeatureRanges {
    std::vector<double> min;
    std::vector<double> max;
    std::size_t dims() const { return min.size(); }
    double width(std::size_t d) const { return max[d] - min[d]; }
};

// Holds the hidden true labels after hide_labels(); stands in for the
// human expert who labels requested rows.
class LabelOracle {
public:
    LabelOracle(std::vector<int> truth, std::vector<std::string> class_names)
        : truth_(std::move(truth)), class_names_(std::move(class_names)) {}

    int query(std::size_t index) const;
    std::size_t query_count() const { return queries_; }
    std::size_t class_count() const { return class_names_.size(); }
    const std::vector<int>& truth() const { return truth_; }

private:
    std::vector<int> truth_;
    std::vector<std::string> class_names_;
    mutable std::size_t queries_ = 0;
};

// Column selector for load_csv: by default the last column is treated
// as the label iff any of its cells fails numeric parsing.
struct LabelColumn {
    enum class Mode { auto_detect, column, none };
    Mode mode = Mode::auto_detect;
    std::size_t index = 0;

    static LabelColumn auto_detect() { return {}; }
    static LabelColumn at(std::size_t i) { return {Mode::column, i}; }
    static LabelColumn none() { return {Mode::none, 0}; }
};

Dataset load_csv(const std::string& path, bool has_header = true,
                 LabelColumn label_column = LabelColumn::auto_detect());
void save_csv(const Dataset& data, const std::string& path);

FeatureRanges compute_ranges(const Dataset& data);

std::pair<Dataset, LabelOracle> hide_labels(const Dataset& data);

// Isotropic Gaussian blobs, one class per center. Deterministic per seed.
Dataset make_blobs(const std::vector<std::vector<double>>& centers,
                   std::size_t per_center_count, double spread,
                   std::uint64_t seed);

// Optional min-max normalization to [0,1] per dimension (Euclidean
// affinity is scale sensitive; off by default everywhere).
Dataset min_max_normalize(const Dataset& data);

}  // namespace ais
