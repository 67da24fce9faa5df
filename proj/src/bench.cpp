#include "ais/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ais/affinity.hpp"

namespace ais {

using nlohmann::json;

BenchConfig load_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DataError("config parse error in " + path + ": " + e.what());
    }

    BenchConfig c;
    if (!j.contains("datasets")) throw DataError("config missing key: datasets");
    for (const auto& d : j.at("datasets")) {
        DatasetSpec spec;
        spec.name = d.at("name").get<std::string>();
        spec.path = d.at("path").get<std::string>();
        spec.classes = d.value("classes", 0);
        c.datasets.push_back(std::move(spec));
    }
    if (j.contains("learners")) c.learners = j.at("learners").get<std::vector<std::string>>();
    if (j.contains("strategies"))
        c.strategies = j.at("strategies").get<std::vector<std::string>>();
    if (j.contains("budgets")) c.budgets = j.at("budgets").get<std::vector<std::size_t>>();
    for (std::size_t i = 1; i < c.budgets.size(); ++i)
        if (c.budgets[i] <= c.budgets[i - 1])
            throw DataError("budgets must be strictly increasing");
    c.repeats = j.value("repeats", 0);
    c.folds = j.value("folds", 10);
    if (c.folds < 2) throw DataError("folds must be at least 2");
    c.master_seed = j.value("master_seed", 0);
    if (j.contains("immune")) {
        const auto& im = j.at("immune");
        c.immune.population_size = im.value("population_size", c.immune.population_size);
        c.immune.max_generations = im.value("max_generations", c.immune.max_generations);
        c.immune.nat_alpha = im.value("nat_alpha", c.immune.nat_alpha);
        c.immune.clone_count = im.value("clones", c.immune.clone_count);
        c.immune.per_gene_rate = im.value("per_gene_rate", c.immune.per_gene_rate);
        c.immune.selection_threshold =
            im.value("selection_threshold", c.immune.selection_threshold);
        c.immune.suppression_threshold =
            im.value("suppression_threshold", c.immune.suppression_threshold);
        c.immune.symmetric_mutation =
            im.value("symmetric_mutation", c.immune.symmetric_mutation);
    }
    for (const auto& l : c.learners)
        if (l != "seeded-kmeans" && l != "transductive-linear")
            throw DataError("unknown learner: " + l);
    for (const auto& s : c.strategies)
        if (s != "random" && s != "recommended") throw DataError("unknown strategy: " + s);
    return c;
}

namespace {

std::map<int, std::size_t> dense_ids(const std::vector<int>& labels,
                                     std::size_t* count_out) {
    std::map<int, std::size_t> ids;
    for (int l : labels) ids.try_emplace(l, ids.size());
    if (count_out) *count_out = ids.size();
    return ids;
}

}  // namespace

double clustering_accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size()) throw DataError("accuracy: length mismatch");
    if (predicted.empty()) throw DataError("accuracy: empty input");

    std::size_t np = 0, nt = 0;
    auto pid = dense_ids(predicted, &np);
    auto tid = dense_ids(truth, &nt);
    if (np > 20 || nt > 20) throw DataError("accuracy: more than 20 labels");

    std::vector<std::vector<std::size_t>> conf(np, std::vector<std::size_t>(nt, 0));
    for (std::size_t i = 0; i < predicted.size(); ++i)
        ++conf[pid[predicted[i]]][tid[truth[i]]];

    // Exact optimal one-to-one matching: DP over subsets of truth
    // labels, one predicted label at a time (a label may stay
    // unmatched when counts differ).
    const std::size_t masks = std::size_t{1} << nt;
    std::vector<std::size_t> dp(masks, 0);
    for (std::size_t p = 0; p < np; ++p) {
        std::vector<std::size_t> next = dp;  // p stays unmatched
        for (std::size_t mask = 0; mask < masks; ++mask)
            for (std::size_t t = 0; t < nt; ++t)
                if (!(mask & (std::size_t{1} << t))) {
                    std::size_t v = dp[mask] + conf[p][t];
                    std::size_t& slot = next[mask | (std::size_t{1} << t)];
                    slot = std::max(slot, v);
                }
        dp = std::move(next);
    }
    std::size_t best = *std::max_element(dp.begin(), dp.end());
    return 100.0 * static_cast<double>(best) / static_cast<double>(predicted.size());
}

double classification_accuracy(const std::vector<int>& predicted,
                               const std::vector<int>& truth) {
    if (predicted.size() != truth.size()) throw DataError("accuracy: length mismatch");
    if (predicted.empty()) throw DataError("accuracy: empty input");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++hits;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(predicted.size());
}

LabelRecommendation random_selection(std::size_t n, std::size_t budget, RandomSource& rng) {
    if (budget < 1 || budget > n) throw DataError("budget out of range");
    LabelRecommendation rec;
    rec.budget = budget;
    rec.source = "random";
    std::set<std::size_t> seen;
    while (rec.indices.size() < budget) {
        std::size_t i = rng.below(n);
        if (seen.insert(i).second) rec.indices.push_back(i);
    }
    return rec;
}

std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& dataset,
                        const std::string& learner, const std::string& strategy,
                        std::size_t budget, std::size_t repeat) {
    std::string key = dataset + "|" + learner + "|" + strategy + "|" +
                      std::to_string(budget) + "|" + std::to_string(repeat);
    return fnv1a64(key) ^ (master_seed * 0x9e3779b97f4a7c15ULL + 0x1234567ULL);
}

double ExperimentReport::mean(const std::string& dataset, const std::string& learner,
                              const std::string& strategy, std::size_t budget) const {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows)
        if (r.dataset == dataset && r.learner == learner && r.strategy == strategy &&
            r.budget == budget) {
            sum += r.accuracy;
            ++n;
        }
    if (n == 0) throw DataError("no rows for requested aggregate cell");
    return sum / static_cast<double>(n);
}

double ExperimentReport::stddev(const std::string& dataset, const std::string& learner,
                                const std::string& strategy, std::size_t budget) const {
    const double m = mean(dataset, learner, strategy, budget);
    double ss = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows)
        if (r.dataset == dataset && r.learner == learner && r.strategy == strategy &&
            r.budget == budget) {
            ss += (r.accuracy - m) * (r.accuracy - m);
            ++n;
        }
    return n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
}

namespace {

struct LoadedDataset {
    Dataset unlabeled;
    std::vector<int> truth;
    std::size_t classes;
};

// Stratified partition of `pool` into `folds` folds by true label,
// deterministic given the rng.
std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<std::size_t>& pool,
                                                       const std::vector<int>& truth,
                                                       std::size_t folds, RandomSource& rng) {
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i : pool) by_class[truth[i]].push_back(i);
    std::vector<std::vector<std::size_t>> out(folds);
    std::size_t next = 0;
    for (auto& [cls, members] : by_class) {
        // Fisher-Yates with our own rng.
        for (std::size_t i = members.size(); i > 1; --i)
            std::swap(members[i - 1], members[rng.below(i)]);
        for (std::size_t m : members) {
            out[next % folds].push_back(m);
            ++next;
        }
    }
    for (auto& f : out) std::sort(f.begin(), f.end());
    return out;
}

double run_kmeans_cell(const LoadedDataset& ds, const std::map<std::size_t, int>& labeled,
                       RandomSource& rng) {
    auto model = seeded_kmeans(ds.unlabeled, labeled, ds.classes, 100, rng);
    auto pred = predict(model, ds.unlabeled);
    return clustering_accuracy(pred, ds.truth);
}

Dataset subset_rows(const Dataset& data, const std::vector<std::size_t>& rows) {
    std::vector<double> feats;
    feats.reserve(rows.size() * data.dims());
    for (std::size_t i : rows) {
        auto r = data.row(i);
        feats.insert(feats.end(), r.begin(), r.end());
    }
    return Dataset(rows.size(), data.dims(), std::move(feats), std::nullopt, {}, data.name());
}

}  // namespace

ExperimentReport run_experiment(const BenchConfig& config) {
    ExperimentReport report;
    {
        std::ostringstream echo;
        echo << "datasets=";
        for (const auto& d : config.datasets) echo << d.name << ";";
        echo << " budgets=";
        for (auto b : config.budgets) echo << b << ";";
        echo << " folds=" << config.folds << " master_seed=" << config.master_seed;
        report.config_echo = echo.str();
    }

    for (const auto& spec : config.datasets) {
        auto labeled_data = load_csv(spec.path);
        if (!labeled_data.has_labels())
            throw DataError("dataset " + spec.name + " has no label column");
        auto [unlabeled, oracle] = hide_labels(labeled_data);
        LoadedDataset ds{std::move(unlabeled), oracle.truth(),
                         spec.classes ? spec.classes : oracle.class_count()};

        for (const auto& learner : config.learners)
            for (const auto& strategy : config.strategies)
                for (std::size_t budget : config.budgets) {
                    if (learner != "seeded-kmeans" && learner != "transductive-linear")
                        throw DataError("unknown learner: " + learner);
                    if (strategy != "random" && strategy != "recommended")
                        throw DataError("unknown strategy: " + strategy);
                    if (budget > ds.unlabeled.rows())
                        throw DataError("budget " + std::to_string(budget) +
                                        " exceeds rows of " + spec.name);
                    const std::size_t repeats =
                        config.repeats ? config.repeats : (strategy == "random" ? 20 : 10);
                    for (std::size_t rep = 0; rep < repeats; ++rep) {
                        RandomSource base(cell_seed(config.master_seed, spec.name, learner,
                                                    strategy, budget, rep));
                        const bool need_two_classes = learner == "transductive-linear";

                        // Class-coverage guard: redraw with the next
                        // derived stream until the seeds span >= 2
                        // classes (classifier precondition).
                        LabelRecommendation sel;
                        std::map<std::size_t, int> labeled;
                        for (std::size_t attempt = 0; attempt < 32; ++attempt) {
                            RandomSource rng = base.derive(attempt);
                            if (strategy == "random") {
                                sel = random_selection(ds.unlabeled.rows(), budget, rng);
                            } else {
                                auto memory = run_ainetdd(ds.unlabeled, config.immune, rng);
                                sel = recommend_labels(memory, ds.unlabeled, budget);
                            }
                            labeled.clear();
                            std::set<int> classes_seen;
                            for (std::size_t i : sel.indices) {
                                labeled[i] = ds.truth[i];
                                classes_seen.insert(ds.truth[i]);
                            }
                            if (!need_two_classes || classes_seen.size() >= 2) break;
                            report.notes.push_back("redraw: " + spec.name + "/" + learner +
                                                   "/" + strategy + "/b" +
                                                   std::to_string(budget) + "/r" +
                                                   std::to_string(rep));
                        }

                        RandomSource run_rng = base.derive(1000);
                        if (learner == "seeded-kmeans") {
                            double acc = run_kmeans_cell(ds, labeled, run_rng);
                            report.rows.push_back(
                                {spec.name, learner, strategy, budget, rep, -1, acc});
                        } else {
                            // Stratified CV over the unselected rows;
                            // purchased labels stay in every training
                            // fold.
                            std::vector<std::size_t> pool;
                            for (std::size_t i = 0; i < ds.unlabeled.rows(); ++i)
                                if (!labeled.contains(i)) pool.push_back(i);
                            auto folds = stratified_folds(pool, ds.truth, config.folds,
                                                          run_rng);
                            for (std::size_t f = 0; f < folds.size(); ++f) {
                                std::vector<std::size_t> train_rows;
                                std::map<std::size_t, int> train_labels;
                                for (const auto& [i, cls] : labeled) {
                                    train_labels[train_rows.size()] = cls;
                                    train_rows.push_back(i);
                                }
                                for (std::size_t g = 0; g < folds.size(); ++g)
                                    if (g != f)
                                        train_rows.insert(train_rows.end(),
                                                          folds[g].begin(), folds[g].end());
                                auto train_data = subset_rows(ds.unlabeled, train_rows);
                                RandomSource fit_rng = run_rng.derive(f);
                                auto model = transductive_fit(train_data, train_labels, 1500,
                                                              UnlabeledSchedule{}, fit_rng);
                                if (folds[f].empty()) continue;
                                auto test_data = subset_rows(ds.unlabeled, folds[f]);
                                auto pred = predict(model, test_data);
                                std::vector<int> truth_f;
                                for (std::size_t i : folds[f]) truth_f.push_back(ds.truth[i]);
                                double acc = classification_accuracy(pred, truth_f);
                                report.rows.push_back({spec.name, learner, strategy, budget,
                                                       rep, static_cast<int>(f), acc});
                            }
                        }
                    }
                }
    }
    return report;
}

namespace {

std::string format2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_report(const ExperimentReport& report, const BenchConfig& config,
                          const std::string& format) {
    if (report.rows.empty()) throw DataError("empty report");
    std::ostringstream out;
    if (format == "tsv") {
        out << "dataset\tlearner\tstrategy\tbudget\trepeat\tfold\taccuracy\n";
        for (const auto& r : report.rows) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", r.accuracy);
            out << r.dataset << '\t' << r.learner << '\t' << r.strategy << '\t' << r.budget
                << '\t' << r.repeat << '\t' << r.fold << '\t' << buf << '\n';
        }
        for (const auto& n : report.notes) out << "# " << n << '\n';
        return out.str();
    }
    if (format != "markdown") throw DataError("unknown report format: " + format);

    out << "# Experiment report\n\n" << report.version << "\n\n"
        << "Config: " << report.config_echo << "\n";
    for (const auto& learner : config.learners)
        for (const auto& strategy : config.strategies) {
            out << "\n## " << learner << " / " << strategy << " labels\n\n";
            out << "| Dataset |";
            for (auto b : config.budgets) out << " " << b << " |";
            out << "\n|---|";
            for (std::size_t i = 0; i < config.budgets.size(); ++i) out << "---|";
            out << "\n";
            for (const auto& spec : config.datasets) {
                out << "| " << spec.name << " |";
                for (auto b : config.budgets)
                    out << " " << format2(report.mean(spec.name, learner, strategy, b))
                        << " |";
                out << "\n";
            }
        }
    if (!report.notes.empty()) {
        out << "\nNotes:\n";
        for (const auto& n : report.notes) out << "- " << n << "\n";
    }
    return out.str();
}

void emit_scatter(const Dataset& data, const MemorySet& memory,
                  const std::vector<BCell>& eliminated, const std::string& path,
                  std::optional<std::pair<std::size_t, std::size_t>> dims) {
    std::size_t dx, dy;
    if (dims) {
        dx = dims->first;
        dy = dims->second;
        if (dx >= data.dims() || dy >= data.dims())
            throw DataError("plot dimensions out of range");
    } else if (data.dims() == 2) {
        dx = 0;
        dy = 1;
    } else {
        throw DataError("dataset is not 2-D; pass --dims i,j to pick a dimension pair");
    }

    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = hi_x;
    auto widen = [&](double x, double y) {
        lo_x = std::min(lo_x, x);
        hi_x = std::max(hi_x, x);
        lo_y = std::min(lo_y, y);
        hi_y = std::max(hi_y, y);
    };
    for (std::size_t i = 0; i < data.rows(); ++i) widen(data.row(i)[dx], data.row(i)[dy]);
    for (const auto& c : memory.cells) widen(c.vector[dx], c.vector[dy]);
    for (const auto& c : eliminated) widen(c.vector[dx], c.vector[dy]);
    if (hi_x <= lo_x) hi_x = lo_x + 1;
    if (hi_y <= lo_y) hi_y = lo_y + 1;

    const double W = 640, H = 640, M = 40;
    auto px = [&](double x) { return M + (x - lo_x) / (hi_x - lo_x) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - (y - lo_y) / (hi_y - lo_y) * (H - 2 * M); };

    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    std::ofstream out(path);
    if (!out) throw DataError("cannot write plot file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    out << "<g>\n";
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const char* color =
            data.has_labels() ? palette[data.labels()[i] % 8] : "#999999";
        out << "<circle cx=\"" << px(data.row(i)[dx]) << "\" cy=\"" << py(data.row(i)[dy])
            << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.6\"/>\n";
    }
    for (const auto& c : eliminated) {
        double x = px(c.vector[dx]), y = py(c.vector[dy]);
        // Four-line asterisk star.
        out << "<path d=\"M" << x - 5 << ' ' << y << " L" << x + 5 << ' ' << y << " M" << x
            << ' ' << y - 5 << " L" << x << ' ' << y + 5 << " M" << x - 3.5 << ' ' << y - 3.5
            << " L" << x + 3.5 << ' ' << y + 3.5 << " M" << x - 3.5 << ' ' << y + 3.5 << " L"
            << x + 3.5 << ' ' << y - 3.5 << "\" stroke=\"#2ca02c\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& c : memory.cells) {
        double x = px(c.vector[dx]), y = py(c.vector[dy]);
        out << "<rect x=\"" << x - 4 << "\" y=\"" << y - 4
            << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"#000000\" "
               "stroke-width=\"1.5\"/>\n";
    }
    out << "</g>\n";
    // Text-only legend so marker counts stay exact.
    out << "<text x=\"10\" y=\"16\" font-size=\"12\">o antigen   [] memory cell   * "
           "eliminated antibody</text>\n";
    out << "</svg>\n";
}

}  // namespace ais
