#include "ais/ainetdd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ais/ainetc.hpp"

namespace ais {

namespace {
// Floor for data-derived thresholds so degenerate datasets (all points
// identical, NAT = 0) can still be recognized and suppressed under the
// strict "<" rule.
constexpr double kThresholdFloor = 1e-12;
}  // namespace

std::vector<double> mutation_value(const FeatureRanges& ranges) {
    std::vector<double> delta(ranges.dims());
    for (std::size_t d = 0; d < ranges.dims(); ++d) delta[d] = ranges.width(d) / 20.0;
    return delta;
}

BCell mutate(const BCell& cell, const std::vector<double>& delta, double per_gene_rate,
             RandomSource& rng, bool symmetric) {
    if (delta.size() != cell.vector.size()) throw DataError("mutate: delta dimension mismatch");
    BCell out = cell;
    out.recognized_count = 0;
    out.state = CellState::active;
    for (std::size_t d = 0; d < out.vector.size(); ++d) {
        if (rng.uniform01() < per_gene_rate) {
            double r = symmetric ? rng.uniform_signed() : rng.uniform01();
            out.vector[d] += r * delta[d];
        }
    }
    return out;
}

std::vector<BCell> clonal_expand(const BCell& parent, std::span<const double> antigen,
                                 const Nat& nat, std::size_t clone_count,
                                 const std::vector<double>& delta, RandomSource& rng,
                                 bool symmetric) {
    const double scale = nat.value > 0 ? distance(parent.vector, antigen) / nat.value : 0.0;
    std::vector<double> scaled(delta.size());
    for (std::size_t d = 0; d < delta.size(); ++d) scaled[d] = delta[d] * scale;

    std::vector<BCell> out;
    out.reserve(clone_count + 1);
    out.push_back(parent);
    for (std::size_t c = 0; c < clone_count; ++c)
        out.push_back(mutate(parent, scaled, 1.0, rng, symmetric));
    return out;
}

namespace {

struct AntigenStats {
    double nearest = 0.0;
    std::size_t within_nat = 0;
};

AntigenStats antigen_stats(const BCell& cell, const Dataset& data, double nat_value) {
    AntigenStats s;
    s.nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < data.rows(); ++i) {
        double d = distance(cell.vector, data.row(i));
        s.nearest = std::min(s.nearest, d);
        if (d < nat_value) ++s.within_nat;
    }
    return s;
}

}  // namespace

std::vector<BCell> select_high_affinity(const std::vector<BCell>& cells, const Dataset& data,
                                        double selection_threshold, const Nat& nat) {
    if (selection_threshold <= 0) throw DataError("selection threshold must be positive");
    std::vector<BCell> kept;
    for (const auto& cell : cells) {
        auto s = antigen_stats(cell, data, nat.value);
        if (s.nearest < selection_threshold) {
            BCell m = cell;
            m.state = CellState::memory;
            m.recognized_count = s.within_nat;
            kept.push_back(std::move(m));
        }
    }
    return kept;
}

std::vector<BCell> suppress_redundant(const std::vector<BCell>& cells, double sigma_s) {
    if (sigma_s <= 0) throw DataError("suppression threshold must be positive");
    std::vector<std::size_t> order(cells.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cells[a].recognized_count > cells[b].recognized_count;
    });
    std::vector<std::size_t> kept_idx;
    for (std::size_t i : order) {
        bool ok = true;
        for (std::size_t j : kept_idx)
            if (distance(cells[i].vector, cells[j].vector) < sigma_s) {
                ok = false;
                break;
            }
        if (ok) kept_idx.push_back(i);
    }
    std::sort(kept_idx.begin(), kept_idx.end());
    std::vector<BCell> kept;
    kept.reserve(kept_idx.size());
    for (std::size_t i : kept_idx) kept.push_back(cells[i]);
    return kept;
}

std::vector<BCell> prune_uncovering(const std::vector<BCell>& cells, const Dataset& data,
                                    const Nat& nat) {
    std::vector<BCell> kept;
    for (const auto& cell : cells) {
        auto s = antigen_stats(cell, data, nat.value);
        if (s.within_nat > 0) {
            BCell m = cell;
            m.recognized_count = s.within_nat;
            kept.push_back(std::move(m));
        }
    }
    return kept;
}

ResolvedDDParams resolve_params(const Dataset& data, const AinetDDParams& params) {
    ResolvedDDParams r;
    r.nat = compute_nat(data, params.nat_alpha);
    r.nat.value = std::max(r.nat.value, kThresholdFloor);
    r.per_gene_rate =
        params.per_gene_rate > 0 ? params.per_gene_rate : 1.0 / static_cast<double>(data.dims());
    r.delta = params.mutation_delta.empty() ? mutation_value(compute_ranges(data))
                                            : params.mutation_delta;
    if (r.delta.size() != data.dims()) throw DataError("mutation delta dimension mismatch");
    r.selection_threshold =
        params.selection_threshold > 0 ? params.selection_threshold : r.nat.value;
    r.suppression_threshold = std::max(
        params.suppression_threshold > 0 ? params.suppression_threshold : 1.1 * r.nat.value,
        kThresholdFloor);
    return r;
}

MemorySet run_ainetdd(const Dataset& data, const AinetDDParams& params, RandomSource& rng,
                      std::vector<BCell>* eliminated) {
    if (data.rows() < 2) throw DataError("run_ainetdd needs at least two rows");
    const auto rp = resolve_params(data, params);
    const auto ranges = compute_ranges(data);
    const std::size_t n = data.rows();

    std::vector<std::size_t> all_antigens(n);
    std::iota(all_antigens.begin(), all_antigens.end(), 0);

    std::vector<BCell> work = init_population(params.population_size, ranges, rng);
    std::vector<BCell> memory;
    std::vector<bool> covered(n, false);
    std::size_t covered_count = 0;
    std::size_t generations = 0;

    for (std::size_t g = 0; g < params.max_generations; ++g) {
        generations = g + 1;
        auto recog = recognition_pass(work, data, all_antigens, rp.nat);
        if (recog.empty()) {
            work = init_population(params.population_size, ranges, rng);
            continue;
        }

        // Pool: each recognizing parent once, then clones per antigen.
        // Clones get the post-clone mutation sweep (the 1/l rule) to
        // probe for nearby antigens the parent missed.
        std::vector<std::size_t> parents;
        for (const auto& [ag, ci] : recog) parents.push_back(ci);
        std::sort(parents.begin(), parents.end());
        parents.erase(std::unique(parents.begin(), parents.end()), parents.end());

        std::vector<BCell> pool;
        for (std::size_t ci : parents) {
            BCell p = work[ci];
            p.birth_generation = g;
            pool.push_back(std::move(p));
        }
        for (const auto& [ag, ci] : recog) {
            auto expanded = clonal_expand(work[ci], data.row(ag), rp.nat, params.clone_count,
                                          rp.delta, rng, params.symmetric_mutation);
            for (std::size_t c = 1; c < expanded.size(); ++c) {
                BCell clone = mutate(expanded[c], rp.delta, rp.per_gene_rate, rng,
                                     params.symmetric_mutation);
                clone.birth_generation = g;
                pool.push_back(std::move(clone));
            }
        }

        auto selected = select_high_affinity(pool, data, rp.selection_threshold, rp.nat);
        auto survivors = suppress_redundant(selected, rp.suppression_threshold);

        for (const auto& cell : survivors) {
            for (std::size_t i = 0; i < n; ++i)
                if (!covered[i] && distance(cell.vector, data.row(i)) < rp.nat.value) {
                    covered[i] = true;
                    ++covered_count;
                }
            memory.push_back(cell);
        }
        if (covered_count == n) break;

        // Next generation: mutated survivors (at most half the
        // population) plus fresh random cells for exploration.
        std::vector<BCell> next;
        for (const auto& cell : survivors) {
            if (next.size() >= params.population_size / 2) break;
            next.push_back(mutate(cell, rp.delta, rp.per_gene_rate, rng,
                                  params.symmetric_mutation));
        }
        auto fill = init_population(params.population_size - next.size(), ranges, rng);
        for (auto& cell : fill) next.push_back(std::move(cell));
        work = std::move(next);
    }

    auto pruned = prune_uncovering(memory, data, rp.nat);
    auto final_cells = suppress_redundant(pruned, rp.suppression_threshold);

    if (eliminated) {
        // Everything accumulated but not in the final set.
        auto in_final = [&](const BCell& c) {
            for (const auto& f : final_cells)
                if (f.vector == c.vector) return true;
            return false;
        };
        for (const auto& c : memory)
            if (!in_final(c)) {
                BCell e = c;
                e.state = CellState::eliminated;
                eliminated->push_back(std::move(e));
            }
    }

    MemorySet result;
    result.cells = std::move(final_cells);
    result.nat = rp.nat;
    result.generations_run = generations;
    std::size_t cov = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& cell : result.cells)
            if (distance(cell.vector, data.row(i)) < rp.nat.value) {
                ++cov;
                break;
            }
    }
    result.coverage = static_cast<double>(cov) / static_cast<double>(n);
    return result;
}

LabelRecommendation recommend_labels(const MemorySet& memory, const Dataset& data,
                                     std::size_t budget) {
    if (budget < 1) throw DataError("budget must be at least 1");
    if (memory.cells.empty()) throw DataError("empty memory set");
    const std::size_t n = data.rows();

    // Each memory cell votes for its nearest real row; a row keeps the
    // highest recognized_count among the cells that map to it.
    std::vector<std::pair<std::size_t, std::size_t>> candidates;  // (row, count)
    for (const auto& cell : memory.cells) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double d = distance(cell.vector, data.row(i));
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        bool merged = false;
        for (auto& [row, cnt] : candidates)
            if (row == best) {
                cnt = std::max(cnt, cell.recognized_count);
                merged = true;
                break;
            }
        if (!merged) candidates.emplace_back(best, cell.recognized_count);
    }

    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (candidates.size() > budget) candidates.resize(budget);

    LabelRecommendation rec;
    rec.budget = budget;
    rec.source = "recommended";
    for (const auto& [row, cnt] : candidates) rec.indices.push_back(row);

    // Short of budget: farthest-point sampling over the leftover rows.
    std::vector<bool> taken(n, false);
    for (std::size_t i : rec.indices) taken[i] = true;
    while (rec.indices.size() < std::min(budget, n)) {
        std::size_t best = n;
        double best_score = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (taken[i]) continue;
            double score = std::numeric_limits<double>::infinity();
            for (std::size_t j : rec.indices)
                score = std::min(score, distance(data.row(i), data.row(j)));
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        taken[best] = true;
        rec.indices.push_back(best);
    }
    return rec;
}

}  // namespace ais
