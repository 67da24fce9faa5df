#include "ais/affinity.hpp"

#include <cmath>

namespace ais {

double distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DataError("distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Nat compute_nat(const Dataset& data, double alpha, std::size_t exact_limit,
                std::uint64_t sample_seed) {
    const std::size_t n = data.rows();
    if (n < 2) throw DataError("compute_nat needs at least two rows");

    double mean;
    if (n <= exact_limit) {
        // Fixed index order so the sum is partition independent.
        double sum = 0.0;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                sum += distance(data.row(i), data.row(j));
                ++pairs;
            }
        mean = sum / static_cast<double>(pairs);
    } else {
        RandomSource rng(sample_seed);
        double sum = 0.0;
        std::size_t drawn = 0;
        while (drawn < kNatSamplePairs) {
            std::size_t i = rng.below(n);
            std::size_t j = rng.below(n);
            if (i == j) continue;
            sum += distance(data.row(i), data.row(j));
            ++drawn;
        }
        mean = sum / static_cast<double>(kNatSamplePairs);
    }
    return Nat{alpha * mean, alpha};
}

bool recognizes(std::span<const double> cell, std::span<const double> antigen, const Nat& nat) {
    return distance(cell, antigen) < nat.value;  // strictly lower than NAT
}

}  // namespace ais
