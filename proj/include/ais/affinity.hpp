#pragma once

#include <span>

#include "ais/dataset.hpp"

namespace ais {

// Network Affinity Threshold: the distance cutoff below which an
// antibody is said to recognize an antigen. Derived from the data as
// alpha x mean pairwise antigen distance.
struct Nat {
    double value = 0.0;
    double alpha = 0.0;
};

double distance(std::span<const double> a, std::span<const double> b);

inline constexpr std::size_t kNatExactLimit = 2000;
inline constexpr std::size_t kNatSamplePairs = 200000;

// Exact enumeration of all N(N-1)/2 pairs up to exact_limit rows,
// seeded uniform pair sample above that.
Nat compute_nat(const Dataset& data, double alpha,
                std::size_t exact_limit = kNatExactLimit,
                std::uint64_t sample_seed = 0);

bool recognizes(std::span<const double> cell, std::span<const double> antigen, const Nat& nat);

}  // namespace ais
