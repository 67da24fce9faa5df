#include "ais/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace ais {

Dataset::Dataset(std::size_t n, std::size_t d, std::vector<double> features,
                 std::optional<std::vector<int>> labels,
                 std::vector<std::string> class_names, std::string name)
    : n_(n), d_(d), features_(std::move(features)), labels_(std::move(labels)),
      class_names_(std::move(class_names)), name_(std::move(name)) {
    if (n_ < 1 || d_ < 1) throw DataError("dataset must have at least one row and one column");
    if (features_.size() != n_ * d_) throw DataError("feature buffer size mismatch");
    for (double v : features_)
        if (!std::isfinite(v)) throw DataError("non-finite feature value");
    if (labels_) {
        if (labels_->size() != n_) throw DataError("label count does not match row count");
        for (int c : *labels_)
            if (c < 0 || static_cast<std::size_t>(c) >= class_names_.size())
                throw DataError("label id out of range");
    }
}

const std::vector<int>& Dataset::labels() const {
    if (!labels_) throw DataError("dataset '" + name_ + "' has no labels");
    return *labels_;
}

Dataset Dataset::without_labels() const {
    return Dataset(n_, d_, features_, std::nullopt, {}, name_);
}

int LabelOracle::query(std::size_t index) const {
    if (index >= truth_.size()) throw DataError("oracle index out of range");
    ++queries_;
    return truth_[index];
}

namespace {

bool parse_real(const std::string& cell, double& out) {
    const char* s = cell.c_str();
    char* end = nullptr;
    out = std::strtod(s, &end);
    while (end && *end == ' ') ++end;
    return end != s && end && *end == '\0' && std::isfinite(out);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) {
        while (!cur.empty() && (cur.back() == '\r' || cur.back() == ' ')) cur.pop_back();
        while (!cur.empty() && cur.front() == ' ') cur.erase(cur.begin());
        cells.push_back(cur);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

Dataset load_csv(const std::string& path, bool has_header, LabelColumn label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        if (first && has_header) {
            first = false;
            continue;
        }
        first = false;
        rows.push_back(split_row(line));
    }
    if (rows.empty()) throw DataError("empty file: " + path);

    const std::size_t cols = rows[0].size();
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != cols)
            throw DataError("ragged row " + std::to_string(i) + " in " + path + ": expected " +
                            std::to_string(cols) + " cells, got " + std::to_string(rows[i].size()));

    std::size_t label_idx = cols;  // cols = no label
    switch (label_column.mode) {
        case LabelColumn::Mode::none:
            break;
        case LabelColumn::Mode::column:
            if (label_column.index >= cols) throw DataError("label column out of range");
            label_idx = label_column.index;
            break;
        case LabelColumn::Mode::auto_detect: {
            double tmp;
            for (const auto& r : rows)
                if (!parse_real(r[cols - 1], tmp)) {
                    label_idx = cols - 1;
                    break;
                }
            break;
        }
    }
    const bool labeled = label_idx < cols;
    const std::size_t d = labeled ? cols - 1 : cols;
    if (d == 0) throw DataError("no feature columns in " + path);

    std::vector<double> features;
    features.reserve(rows.size() * d);
    std::vector<int> labels;
    std::vector<std::string> class_names;
    std::unordered_map<std::string, int> class_ids;  // first-appearance order

    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (labeled && j == label_idx) {
                auto [it, inserted] = class_ids.try_emplace(rows[i][j],
                                                            static_cast<int>(class_names.size()));
                if (inserted) class_names.push_back(rows[i][j]);
                labels.push_back(it->second);
                continue;
            }
            double v;
            if (!parse_real(rows[i][j], v))
                throw DataError("unparsable cell \"" + rows[i][j] + "\" at row " +
                                std::to_string(i) + ", column " + std::to_string(j) + " in " + path);
            features.push_back(v);
        }
    }

    std::string name = path;
    if (auto pos = name.find_last_of("/\\"); pos != std::string::npos) name = name.substr(pos + 1);
    if (auto pos = name.rfind('.'); pos != std::string::npos) name = name.substr(0, pos);

    if (labeled)
        return Dataset(rows.size(), d, std::move(features), std::move(labels),
                       std::move(class_names), name);
    return Dataset(rows.size(), d, std::move(features), std::nullopt, {}, name);
}

void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out.precision(17);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        auto r = data.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) out << ',';
            out << r[j];
        }
        if (data.has_labels()) out << ',' << data.class_names()[data.labels()[i]];
        out << '\n';
    }
}

FeatureRanges compute_ranges(const Dataset& data) {
    FeatureRanges r;
    r.min.assign(data.dims(), std::numeric_limits<double>::infinity());
    r.max.assign(data.dims(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        auto row = data.row(i);
        for (std::size_t d = 0; d < data.dims(); ++d) {
            r.min[d] = std::min(r.min[d], row[d]);
            r.max[d] = std::max(r.max[d], row[d]);
        }
    }
    return r;
}

std::pair<Dataset, LabelOracle> hide_labels(const Dataset& data) {
    if (!data.has_labels()) throw DataError("no labels to hide in dataset '" + data.name() + "'");
    return {data.without_labels(), LabelOracle(data.labels(), data.class_names())};
}

Dataset make_blobs(const std::vector<std::vector<double>>& centers,
                   std::size_t per_center_count, double spread, std::uint64_t seed) {
    if (centers.empty()) throw DataError("make_blobs needs at least one center");
    if (spread <= 0) throw DataError("spread must be positive");
    const std::size_t d = centers[0].size();
    for (const auto& c : centers)
        if (c.size() != d) throw DataError("centers have mixed dimensions");

    RandomSource rng(seed);
    std::vector<double> features;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    features.reserve(centers.size() * per_center_count * d);
    for (std::size_t c = 0; c < centers.size(); ++c) {
        class_names.push_back("blob_" + std::to_string(c));
        for (std::size_t i = 0; i < per_center_count; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                // Box-Muller; two fresh uniforms per gaussian keeps the
                // draw order seed-stable.
                double u1 = rng.uniform01();
                double u2 = rng.uniform01();
                while (u1 <= 0) u1 = rng.uniform01();
                double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
                features.push_back(centers[c][j] + spread * g);
            }
            labels.push_back(static_cast<int>(c));
        }
    }
    return Dataset(centers.size() * per_center_count, d, std::move(features),
                   std::move(labels), std::move(class_names), "blobs");
}

Dataset min_max_normalize(const Dataset& data) {
    auto r = compute_ranges(data);
    std::vector<double> scaled;
    scaled.reserve(data.rows() * data.dims());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        auto row = data.row(i);
        for (std::size_t d = 0; d < data.dims(); ++d) {
            double w = r.width(d);
            scaled.push_back(w > 0 ? (row[d] - r.min[d]) / w : 0.0);
        }
    }
    if (data.has_labels())
        return Dataset(data.rows(), data.dims(), std::move(scaled), data.labels(),
                       data.class_names(), data.name());
    return Dataset(data.rows(), data.dims(), std::move(scaled), std::nullopt, {}, data.name());
}

}  // namespace ais
