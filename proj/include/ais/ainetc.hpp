#pragma once

#include <map>

#include "ais/ainetdd.hpp"

namespace ais {

struct AinetCParams {
    std::size_t population_size = 20;
    std::size_t max_generations = 100;
    double nat_alpha = 0.35;
    std::size_t target_cluster_count = 1;
    // Empty means "use range/20 computed from the data".
    std::vector<double> mutation_delta;
    bool symmetric_mutation = true;
};

std::vector<BCell> init_population(std::size_t count, const FeatureRanges& ranges,
                                   RandomSource& rng);

// For each active antigen, the closest cell with distance < NAT (tie:
// lowest cell index) recognizes it: marked memory, count incremented.
// Returns antigen index -> recognizing cell index.
std::map<std::size_t, std::size_t> recognition_pass(std::vector<BCell>& cells,
                                                    const Dataset& data,
                                                    const std::vector<std::size_t>& active,
                                                    const Nat& nat);

// Younsi's aiNetC loop: recognized antigens leave the active set, the
// recognizing cells are mutated into the next generation, an all-miss
// generation reseeds the population.
MemorySet run_ainetc(const Dataset& data, const AinetCParams& params, RandomSource& rng);

// Removes one member of the closest pair (smaller recognized_count;
// tie: higher index) until k cells remain.
MemorySet reduce_to_k(const MemorySet& memory, std::size_t k);

// Nearest memory cell per point (tie: lowest cell index).
std::vector<std::size_t> assign_clusters(const Dataset& data, const MemorySet& memory);

}  // namespace ais
