#pragma once

#include <map>

#include "ais/dataset.hpp"
#include "ais/rng.hpp"

namespace ais {

struct SeededKMeansModel {
    std::vector<std::vector<double>> centroids;
    std::map<std::size_t, int> cluster_to_class;  // only seeded clusters
    std::vector<std::size_t> assignments;         // final training assignment
    std::vector<double> objective_history;        // after each assignment step
    std::size_t iterations_run = 0;
    bool converged = false;
};

// Constrained k-means: labeled points both initialize their class's
// centroid and stay clamped to it throughout.
SeededKMeansModel seeded_kmeans(const Dataset& data,
                                const std::map<std::size_t, int>& labeled, std::size_t k,
                                std::size_t max_iters, RandomSource& rng);

std::vector<int> predict(const SeededKMeansModel& model, const Dataset& data);

// Self-training confidence ramp for the transductive classifier.
struct UnlabeledSchedule {
    double max_weight = 0.1;
    double warmup_fraction = 0.3;  // epochs before pseudo-labels enter
};

struct TransductiveModel {
    std::vector<int> class_ids;
    std::vector<std::vector<double>> weights;  // per class: D weights + bias
    std::vector<double> feature_means;         // internal standardization
    std::vector<double> feature_scales;
    std::vector<double> objective_history;
};

// One-vs-rest linear hinge classifiers trained by deterministic
// subgradient descent, then self-training on pseudo-labeled unlabeled
// points with a ramped weight. Desk-scale transductive scheme.
TransductiveModel transductive_fit(const Dataset& data,
                                   const std::map<std::size_t, int>& labeled,
                                   std::size_t epochs, const UnlabeledSchedule& schedule,
                                   RandomSource& rng);

std::vector<int> predict(const TransductiveModel& model, const Dataset& data);

}  // namespace ais
