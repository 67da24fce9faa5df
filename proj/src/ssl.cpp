#include "ais/ssl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ais/affinity.hpp"

namespace ais {

namespace {

std::vector<double> row_copy(const Dataset& data, std::size_t i) {
    auto r = data.row(i);
    return {r.begin(), r.end()};
}

// Lexicographic coordinate comparison; used for farthest-point ties so
// init is independent of row order.
bool coord_less(std::span<const double> a, std::span<const double> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

SeededKMeansModel seeded_kmeans(const Dataset& data,
                                const std::map<std::size_t, int>& labeled, std::size_t k,
                                std::size_t max_iters, RandomSource& rng) {
    const std::size_t n = data.rows();
    const std::size_t dims = data.dims();
    for (const auto& [idx, cls] : labeled)
        if (idx >= n) throw DataError("labeled index out of range");

    std::vector<int> seed_classes;
    for (const auto& [idx, cls] : labeled) seed_classes.push_back(cls);
    std::sort(seed_classes.begin(), seed_classes.end());
    seed_classes.erase(std::unique(seed_classes.begin(), seed_classes.end()),
                       seed_classes.end());
    if (k < seed_classes.size())
        throw DataError("k smaller than the number of seeded classes");
    if (k < 1) throw DataError("k must be at least 1");
    if (k > n) throw DataError("k exceeds the number of rows");

    SeededKMeansModel model;
    // Seeded centroids: class means, in ascending class-id order.
    for (std::size_t c = 0; c < seed_classes.size(); ++c) {
        std::vector<double> mean(dims, 0.0);
        std::size_t cnt = 0;
        for (const auto& [idx, cls] : labeled)
            if (cls == seed_classes[c]) {
                auto r = data.row(idx);
                for (std::size_t d = 0; d < dims; ++d) mean[d] += r[d];
                ++cnt;
            }
        for (double& v : mean) v /= static_cast<double>(cnt);
        model.centroids.push_back(std::move(mean));
        model.cluster_to_class[c] = seed_classes[c];
    }
    if (labeled.empty()) {
        // Plain k-means degenerate: k distinct random rows.
        std::set<std::size_t> picked;
        while (picked.size() < std::min(k, n)) picked.insert(rng.below(n));
        for (std::size_t i : picked) model.centroids.push_back(row_copy(data, i));
    }
    // Remaining centroids by farthest-point sampling from the seeds.
    while (model.centroids.size() < k) {
        std::size_t best = n;
        double best_score = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double score = std::numeric_limits<double>::infinity();
            for (const auto& c : model.centroids)
                score = std::min(score, distance(data.row(i), c));
            if (score > best_score ||
                (score == best_score && best < n && coord_less(data.row(i), data.row(best)))) {
                best_score = score;
                best = i;
            }
        }
        model.centroids.push_back(row_copy(data, best));
    }

    // Per-point clamp target (cluster index), or -1.
    std::vector<int> clamp(n, -1);
    for (const auto& [idx, cls] : labeled) {
        auto it = std::find(seed_classes.begin(), seed_classes.end(), cls);
        clamp[idx] = static_cast<int>(it - seed_classes.begin());
    }

    std::vector<std::size_t> assign(n, k);
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        model.iterations_run = iter + 1;
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t target;
            if (clamp[i] >= 0) {
                target = static_cast<std::size_t>(clamp[i]);
            } else {
                target = 0;
                double best_d = std::numeric_limits<double>::infinity();
                for (std::size_t c = 0; c < model.centroids.size(); ++c) {
                    double d = distance(data.row(i), model.centroids[c]);
                    if (d < best_d) {
                        best_d = d;
                        target = c;
                    }
                }
            }
            if (assign[i] != target) {
                assign[i] = target;
                changed = true;
            }
        }
        {
            double obj = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double d = distance(data.row(i), model.centroids[assign[i]]);
                obj += d * d;
            }
            model.objective_history.push_back(obj);
        }
        if (!changed) {
            model.converged = true;
            break;
        }
        // Mean update; an emptied centroid respawns at the point
        // farthest from its nearest centroid.
        for (std::size_t c = 0; c < model.centroids.size(); ++c) {
            std::vector<double> mean(dims, 0.0);
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (assign[i] == c) {
                    auto r = data.row(i);
                    for (std::size_t d = 0; d < dims; ++d) mean[d] += r[d];
                    ++cnt;
                }
            if (cnt > 0) {
                for (double& v : mean) v /= static_cast<double>(cnt);
                model.centroids[c] = std::move(mean);
            } else {
                std::size_t far = 0;
                double far_score = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    double score = std::numeric_limits<double>::infinity();
                    for (const auto& cc : model.centroids)
                        score = std::min(score, distance(data.row(i), cc));
                    if (score > far_score ||
                        (score == far_score && coord_less(data.row(i), data.row(far)))) {
                        far_score = score;
                        far = i;
                    }
                }
                model.centroids[c] = row_copy(data, far);
            }
        }
    }
    model.assignments = std::move(assign);
    return model;
}

std::vector<int> predict(const SeededKMeansModel& model, const Dataset& data) {
    if (!model.centroids.empty() && model.centroids[0].size() != data.dims())
        throw DataError("predict: dimension mismatch");
    std::vector<int> out;
    out.reserve(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < model.centroids.size(); ++c) {
            double d = distance(data.row(i), model.centroids[c]);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        auto it = model.cluster_to_class.find(best);
        if (model.cluster_to_class.empty()) {
            // Unseeded model: plain clustering, ids are cluster indices.
            out.push_back(static_cast<int>(best));
        } else if (it != model.cluster_to_class.end()) {
            out.push_back(it->second);
        } else {
            // Unmapped cluster: class of the nearest mapped centroid.
            int cls = 0;
            double cd = std::numeric_limits<double>::infinity();
            for (const auto& [c, mapped] : model.cluster_to_class) {
                double d = distance(data.row(i), model.centroids[c]);
                if (d < cd) {
                    cd = d;
                    cls = mapped;
                }
            }
            out.push_back(cls);
        }
    }
    return out;
}

namespace {

double score_standardized(const std::vector<double>& w, const double* z, std::size_t dims) {
    double s = w[dims];
    for (std::size_t d = 0; d < dims; ++d) s += w[d] * z[d];
    return s;
}

}  // namespace

TransductiveModel transductive_fit(const Dataset& data,
                                   const std::map<std::size_t, int>& labeled,
                                   std::size_t epochs, const UnlabeledSchedule& schedule,
                                   RandomSource& /*rng*/) {
    const std::size_t n = data.rows();
    const std::size_t dims = data.dims();
    if (labeled.empty()) throw DataError("transductive_fit: empty label map");
    for (const auto& [idx, cls] : labeled)
        if (idx >= n) throw DataError("labeled index out of range");

    TransductiveModel model;
    for (const auto& [idx, cls] : labeled)
        if (std::find(model.class_ids.begin(), model.class_ids.end(), cls) ==
            model.class_ids.end())
            model.class_ids.push_back(cls);
    std::sort(model.class_ids.begin(), model.class_ids.end());
    if (model.class_ids.size() < 2)
        throw DataError("transductive_fit needs at least two labeled classes");

    const std::size_t nc = model.class_ids.size();
    model.weights.assign(nc, std::vector<double>(dims + 1, 0.0));

    // Standardize internally so the hinge margins are scale-free; the
    // model keeps the transform for prediction time.
    model.feature_means.assign(dims, 0.0);
    model.feature_scales.assign(dims, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = data.row(i);
        for (std::size_t d = 0; d < dims; ++d) model.feature_means[d] += r[d];
    }
    for (double& m : model.feature_means) m /= static_cast<double>(n);
    std::vector<double> var(dims, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = data.row(i);
        for (std::size_t d = 0; d < dims; ++d) {
            const double diff = r[d] - model.feature_means[d];
            var[d] += diff * diff;
        }
    }
    for (std::size_t d = 0; d < dims; ++d) {
        const double s = std::sqrt(var[d] / static_cast<double>(n));
        model.feature_scales[d] = s > 0.0 ? s : 1.0;
    }
    std::vector<double> z(n * dims);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = data.row(i);
        for (std::size_t d = 0; d < dims; ++d)
            z[i * dims + d] = (r[d] - model.feature_means[d]) / model.feature_scales[d];
    }

    std::vector<std::size_t> unlabeled;
    for (std::size_t i = 0; i < n; ++i)
        if (!labeled.contains(i)) unlabeled.push_back(i);

    const double lambda = 1e-3;
    const std::size_t warmup =
        static_cast<std::size_t>(schedule.warmup_fraction * static_cast<double>(epochs));

    std::vector<int> pseudo(n, -1);
    for (std::size_t e = 0; e < epochs; ++e) {
        const double ramp =
            e < warmup ? 0.0
                       : schedule.max_weight *
                             std::min(1.0, static_cast<double>(e - warmup + 1) /
                                               std::max(1.0, 0.5 * static_cast<double>(epochs)));
        if (ramp > 0.0) {
            for (std::size_t i : unlabeled) {
                double best = -std::numeric_limits<double>::infinity();
                int cls = model.class_ids[0];
                for (std::size_t c = 0; c < nc; ++c) {
                    double s = score_standardized(model.weights[c], &z[i * dims], dims);
                    if (s > best) {
                        best = s;
                        cls = model.class_ids[c];
                    }
                }
                pseudo[i] = cls;
            }
        }

        const double lr = 1.0 / (1.0 + 0.01 * static_cast<double>(e));
        double objective = 0.0;
        for (std::size_t c = 0; c < nc; ++c) {
            auto& w = model.weights[c];
            std::vector<double> grad(dims + 1, 0.0);
            for (std::size_t d = 0; d < dims; ++d) grad[d] = lambda * w[d];
            double weight_total = 0.0;

            auto accumulate = [&](std::size_t i, int cls, double weight) {
                const double y = cls == model.class_ids[c] ? 1.0 : -1.0;
                const double* x = &z[i * dims];
                const double m = y * score_standardized(w, x, dims);
                weight_total += weight;
                if (m < 1.0) {
                    objective += weight * (1.0 - m);
                    for (std::size_t d = 0; d < dims; ++d) grad[d] -= weight * y * x[d];
                    grad[dims] -= weight * y;
                }
            };
            for (const auto& [i, cls] : labeled) accumulate(i, cls, 1.0);
            if (ramp > 0.0)
                for (std::size_t i : unlabeled) accumulate(i, pseudo[i], ramp);

            if (weight_total > 0.0)
                for (std::size_t d = 0; d <= dims; ++d)
                    w[d] -= lr * grad[d] / weight_total;
            for (std::size_t d = 0; d < dims; ++d)
                objective += 0.5 * lambda * w[d] * w[d];
        }
        model.objective_history.push_back(objective);
    }
    return model;
}

std::vector<int> predict(const TransductiveModel& model, const Dataset& data) {
    if (!model.weights.empty() && model.weights[0].size() != data.dims() + 1)
        throw DataError("predict: dimension mismatch");
    const std::size_t dims = data.dims();
    std::vector<double> zi(dims);
    std::vector<int> out;
    out.reserve(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        auto r = data.row(i);
        for (std::size_t d = 0; d < dims; ++d)
            zi[d] = (r[d] - model.feature_means[d]) / model.feature_scales[d];
        double best = -std::numeric_limits<double>::infinity();
        int cls = model.class_ids[0];
        for (std::size_t c = 0; c < model.weights.size(); ++c) {
            double s = score_standardized(model.weights[c], zi.data(), dims);
            if (s > best) {  // tie keeps the lower class id
                best = s;
                cls = model.class_ids[c];
            }
        }
        out.push_back(cls);
    }
    return out;
}

}  // namespace ais
