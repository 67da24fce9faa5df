#pragma once

#include <optional>

#include "ais/affinity.hpp"
#include "ais/bcell.hpp"
#include "ais/dataset.hpp"
#include "ais/rng.hpp"

namespace ais {

// Surviving antibody network plus run provenance.
struct MemorySet {
    std::vector<BCell> cells;
    Nat nat;
    std::size_t generations_run = 0;
    double coverage = 0.0;  // fraction of antigens within NAT of >= 1 cell
};

// Ordered dataset row indices recommended for expert labeling.
struct LabelRecommendation {
    std::vector<std::size_t> indices;
    std::size_t budget = 0;
    std::string source;
};

struct AinetDDParams {
    std::size_t population_size = 20;
    std::size_t max_generations = 100;
    double nat_alpha = 0.35;
    std::size_t clone_count = 5;
    // 0 means "use 1/D".
    double per_gene_rate = 0.0;
    // Empty means "use range/20 computed from the data".
    std::vector<double> mutation_delta;
    // <= 0 means "use NAT".
    double selection_threshold = 0.0;
    // <= 0 means "use 1.1 x NAT".
    double suppression_threshold = 0.0;
    bool symmetric_mutation = true;
};

// delta_d = (max_d - min_d) / 20: one twentieth of the data range, so
// an antibody can traverse the data in 20 steps.
std::vector<double> mutation_value(const FeatureRanges& ranges);

// Per dimension, with probability per_gene_rate: gene += r * delta_d,
// r ~ U[0,1] (paper-literal) or U[-1,1] (symmetric). Resets recognition
// state of the returned cell.
BCell mutate(const BCell& cell, const std::vector<double>& delta, double per_gene_rate,
             RandomSource& rng, bool symmetric = true);

// CLONALG-style expansion: parent plus C clones, each clone perturbed
// in every gene with delta scaled by distance(parent, antigen)/NAT so
// closer parents spawn tighter clones.
std::vector<BCell> clonal_expand(const BCell& parent, std::span<const double> antigen,
                                 const Nat& nat, std::size_t clone_count,
                                 const std::vector<double>& delta, RandomSource& rng,
                                 bool symmetric = true);

// Keeps cells whose nearest-antigen distance is below the threshold
// (smaller distance = higher affinity); kept cells become memory with
// recognized_count = number of antigens within NAT.
std::vector<BCell> select_high_affinity(const std::vector<BCell>& cells, const Dataset& data,
                                        double selection_threshold, const Nat& nat);

// Greedy pass in descending recognized_count order (tie: lower index):
// keep a cell iff it is at least sigma_s away from every kept cell.
std::vector<BCell> suppress_redundant(const std::vector<BCell>& cells, double sigma_s);

// Drops cells with no antigen within NAT; survivors carry the count.
std::vector<BCell> prune_uncovering(const std::vector<BCell>& cells, const Dataset& data,
                                    const Nat& nat);

// The describer loop. eliminated, when non-null, receives the cells
// dropped by the final prune/suppress pass (for plotting).
MemorySet run_ainetdd(const Dataset& data, const AinetDDParams& params, RandomSource& rng,
                      std::vector<BCell>* eliminated = nullptr);

// Maps memory cells to their nearest dataset rows, dedupes, trims or
// extends (farthest-point sampling) to the budget.
LabelRecommendation recommend_labels(const MemorySet& memory, const Dataset& data,
                                     std::size_t budget);

// Parameter defaults resolved against a concrete dataset.
struct ResolvedDDParams {
    Nat nat;
    double per_gene_rate;
    std::vector<double> delta;
    double selection_threshold;
    double suppression_threshold;
};
ResolvedDDParams resolve_params(const Dataset& data, const AinetDDParams& params);

}  // namespace ais
