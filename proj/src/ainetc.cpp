#include "ais/ainetc.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace ais {

namespace {
constexpr double kThresholdFloor = 1e-12;  // degenerate-dataset guard, see run_ainetdd
}

std::vector<BCell> init_population(std::size_t count, const FeatureRanges& ranges,
                                   RandomSource& rng) {
    std::vector<BCell> cells;
    cells.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        BCell c;
        c.vector.resize(ranges.dims());
        for (std::size_t d = 0; d < ranges.dims(); ++d)
            c.vector[d] = rng.uniform(ranges.min[d], ranges.max[d]);
        cells.push_back(std::move(c));
    }
    return cells;
}

std::map<std::size_t, std::size_t> recognition_pass(std::vector<BCell>& cells,
                                                    const Dataset& data,
                                                    const std::vector<std::size_t>& active,
                                                    const Nat& nat) {
    if (cells.empty()) throw DataError("recognition_pass: empty cell population");
    std::map<std::size_t, std::size_t> recognized;
    for (std::size_t ag : active) {
        auto antigen = data.row(ag);
        std::size_t best = cells.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double d = distance(cells[c].vector, antigen);
            if (d < nat.value && d < best_d) {  // tie keeps the lower index
                best_d = d;
                best = c;
            }
        }
        if (best < cells.size()) {
            recognized[ag] = best;
            cells[best].state = CellState::memory;
            ++cells[best].recognized_count;
        }
    }
    return recognized;
}

MemorySet run_ainetc(const Dataset& data, const AinetCParams& params, RandomSource& rng) {
    if (data.rows() < 2) throw DataError("run_ainetc needs at least two rows");
    const auto ranges = compute_ranges(data);
    Nat nat = compute_nat(data, params.nat_alpha);
    nat.value = std::max(nat.value, kThresholdFloor);
    const auto delta = params.mutation_delta.empty() ? mutation_value(ranges)
                                                     : params.mutation_delta;
    const std::size_t n = data.rows();

    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), 0);

    std::vector<BCell> work = init_population(params.population_size, ranges, rng);
    std::vector<BCell> memory;
    std::size_t generations = 0;

    for (std::size_t g = 0; g < params.max_generations && !active.empty(); ++g) {
        generations = g + 1;
        auto recog = recognition_pass(work, data, active, nat);
        if (recog.empty()) {
            // Step 5: nobody recognized anything, reseed.
            work = init_population(params.population_size, ranges, rng);
            continue;
        }
        // Step 6: recognized antigens leave the sample.
        std::erase_if(active, [&](std::size_t ag) { return recog.contains(ag); });

        // Step 7: recognizing cells enter memory and their mutated
        // copies form the next population. Eq. 3 indexes every gene, so
        // the aiNetC mutation uses per-gene rate 1.
        std::vector<std::size_t> winners;
        for (const auto& [ag, ci] : recog) winners.push_back(ci);
        std::sort(winners.begin(), winners.end());
        winners.erase(std::unique(winners.begin(), winners.end()), winners.end());

        std::vector<BCell> next;
        for (std::size_t ci : winners) {
            BCell m = work[ci];
            m.birth_generation = g;
            memory.push_back(m);
            next.push_back(mutate(work[ci], delta, 1.0, rng, params.symmetric_mutation));
        }
        work = std::move(next);
    }

    MemorySet result;
    result.cells = std::move(memory);
    result.nat = nat;
    result.generations_run = generations;
    std::size_t cov = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& cell : result.cells)
            if (distance(cell.vector, data.row(i)) < nat.value) {
                ++cov;
                break;
            }
    result.coverage = static_cast<double>(cov) / static_cast<double>(n);
    return result;
}

MemorySet reduce_to_k(const MemorySet& memory, std::size_t k) {
    if (k < 1) throw DataError("k must be at least 1");
    if (memory.cells.empty()) throw DataError("reduce_to_k: empty memory");
    MemorySet out = memory;
    auto& cells = out.cells;
    while (cells.size() > k) {
        std::size_t pi = 0, pj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < cells.size(); ++i)
            for (std::size_t j = i + 1; j < cells.size(); ++j) {
                double d = distance(cells[i].vector, cells[j].vector);
                if (d < best) {
                    best = d;
                    pi = i;
                    pj = j;
                }
            }
        // Drop the pair member with smaller recognized_count; on a tie
        // the higher index goes.
        std::size_t victim =
            cells[pi].recognized_count < cells[pj].recognized_count ? pi : pj;
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    return out;
}

std::vector<std::size_t> assign_clusters(const Dataset& data, const MemorySet& memory) {
    if (memory.cells.empty()) throw DataError("assign_clusters: empty memory");
    std::vector<std::size_t> assignment(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < memory.cells.size(); ++c) {
            double d = distance(memory.cells[c].vector, data.row(i));
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        assignment[i] = best;
    }
    return assignment;
}

}  // namespace ais
