#pragma once

#include <optional>

#include "ais/ainetdd.hpp"
#include "ais/dataset.hpp"
#include "ais/ssl.hpp"

namespace ais {

inline constexpr const char* kToolVersion = "ais-select 1.0.0";

struct DatasetSpec {
    std::string name;
    std::string path;
    std::size_t classes = 0;  // 0 = take the oracle's class count
};

struct BenchConfig {
    std::vector<DatasetSpec> datasets;
    std::vector<std::string> learners = {"seeded-kmeans", "transductive-linear"};
    std::vector<std::string> strategies = {"random", "recommended"};
    std::vector<std::size_t> budgets = {10, 20, 30, 40};
    std::size_t repeats = 0;  // 0 = per-strategy default (random 20, recommended 10)
    std::size_t folds = 10;
    std::uint64_t master_seed = 0;
    AinetDDParams immune;
};

BenchConfig load_bench_config(const std::string& path);

struct ReportRow {
    std::string dataset;
    std::string learner;
    std::string strategy;
    std::size_t budget = 0;
    std::size_t repeat = 0;
    int fold = -1;  // -1 for clustering cells (no CV)
    double accuracy = 0.0;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;  // e.g. class-coverage redraws
    std::string config_echo;
    std::string version = kToolVersion;

    // Mean over repeats (and folds) for one aggregate cell.
    double mean(const std::string& dataset, const std::string& learner,
                const std::string& strategy, std::size_t budget) const;
    double stddev(const std::string& dataset, const std::string& learner,
                  const std::string& strategy, std::size_t budget) const;
};

// Accuracy (percent) under the best one-to-one mapping of predicted
// labels onto true labels, computed exactly. Supports up to 20 labels
// per side.
double clustering_accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

// Identity-mapping accuracy for outputs already in class space.
double classification_accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

LabelRecommendation random_selection(std::size_t n, std::size_t budget, RandomSource& rng);

ExperimentReport run_experiment(const BenchConfig& config);

std::string render_report(const ExperimentReport& report, const BenchConfig& config,
                          const std::string& format);

// SVG scatter: circle per antigen, square per memory cell, star per
// eliminated antibody.
void emit_scatter(const Dataset& data, const MemorySet& memory,
                  const std::vector<BCell>& eliminated, const std::string& path,
                  std::optional<std::pair<std::size_t, std::size_t>> dims = std::nullopt);

// Seed for one experiment cell; FNV-1a over the cell key mixed with the
// master seed.
std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& dataset,
                        const std::string& learner, const std::string& strategy,
                        std::size_t budget, std::size_t repeat);

}  // namespace ais
