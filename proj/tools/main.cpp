#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ais/ainetc.hpp"
#include "ais/ainetdd.hpp"
#include "ais/bench.hpp"

using nlohmann::json;

namespace {

std::optional<std::pair<std::size_t, std::size_t>> parse_dims(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ais::DataError("--dims expects i,j");
    return std::make_pair(std::stoul(s.substr(0, comma)), std::stoul(s.substr(comma + 1)));
}

int cmd_select(const std::string& data_path, std::size_t budget, std::uint64_t seed,
               const ais::AinetDDParams& params, const std::string& out_path) {
    auto data = ais::load_csv(data_path);
    auto work = data.has_labels() ? data.without_labels() : data;
    ais::RandomSource rng(seed);
    auto memory = ais::run_ainetdd(work, params, rng);
    auto rec = ais::recommend_labels(memory, work, budget);

    json out;
    out["indices"] = rec.indices;
    out["coverage"] = memory.coverage;
    out["memory_size"] = memory.cells.size();
    out["params"] = {{"population_size", params.population_size},
                     {"max_generations", params.max_generations},
                     {"nat_alpha", params.nat_alpha},
                     {"clones", params.clone_count},
                     {"selection_threshold", params.selection_threshold},
                     {"suppression_threshold", params.suppression_threshold},
                     {"symmetric_mutation", params.symmetric_mutation},
                     {"seed", seed},
                     {"budget", budget}};
    if (out_path.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw ais::DataError("cannot write " + out_path);
        f << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_cluster(const std::string& data_path, std::size_t k, std::uint64_t seed,
                double nat_alpha, const std::string& plot_path, const std::string& dims_str) {
    auto data = ais::load_csv(data_path);
    auto work = data.has_labels() ? data.without_labels() : data;
    ais::AinetCParams params;
    params.nat_alpha = nat_alpha;
    params.target_cluster_count = k;
    ais::RandomSource rng(seed);
    auto memory = ais::run_ainetc(work, params, rng);
    auto reduced = ais::reduce_to_k(memory, k);
    auto assignment = ais::assign_clusters(work, reduced);

    std::cout << "memory cells: " << memory.cells.size() << " (reduced to "
              << reduced.cells.size() << ")\n"
              << "generations: " << memory.generations_run << "\n"
              << "coverage: " << memory.coverage << "\n";
    if (data.has_labels()) {
        std::vector<int> pred(assignment.begin(), assignment.end());
        std::cout << "clustering accuracy: "
                  << ais::clustering_accuracy(pred, data.labels()) << "\n";
    }
    if (!plot_path.empty()) {
        ais::emit_scatter(data, reduced, {}, plot_path, parse_dims(dims_str));
        std::cout << "plot written to " << plot_path << "\n";
    }
    return 0;
}

int cmd_describe(const std::string& data_path, std::uint64_t seed,
                 const ais::AinetDDParams& params, const std::string& plot_path,
                 const std::string& dims_str) {
    auto data = ais::load_csv(data_path);
    auto work = data.has_labels() ? data.without_labels() : data;
    ais::RandomSource rng(seed);
    std::vector<ais::BCell> eliminated;
    auto memory = ais::run_ainetdd(work, params, rng, &eliminated);

    std::cout << "memory cells: " << memory.cells.size() << "\n"
              << "eliminated antibodies: " << eliminated.size() << "\n"
              << "generations: " << memory.generations_run << "\n"
              << "coverage: " << memory.coverage << "\n"
              << "NAT: " << memory.nat.value << " (alpha " << memory.nat.alpha << ")\n";
    if (!plot_path.empty()) {
        ais::emit_scatter(data, memory, eliminated, plot_path, parse_dims(dims_str));
        std::cout << "plot written to " << plot_path << "\n";
    }
    return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_prefix,
              const std::string& format) {
    auto config = ais::load_bench_config(config_path);
    auto report = ais::run_experiment(config);
    auto text = ais::render_report(report, config, format);
    const std::string ext = format == "tsv" ? ".tsv" : ".md";
    const std::string out_path = out_prefix.ends_with(ext) ? out_prefix : out_prefix + ext;
    std::ofstream f(out_path);
    if (!f) throw ais::DataError("cannot write " + out_path);
    f << text;
    std::cout << "report written to " << out_path << " (" << report.rows.size()
              << " rows)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Immune-inspired data selection for semi-supervised learning"};
    app.require_subcommand(1);

    std::string data_path, out_path, plot_path, dims_str, config_path, out_prefix;
    std::string format = "markdown";
    std::size_t budget = 10, k = 2;
    std::uint64_t seed = 0;
    ais::AinetDDParams dd;

    auto add_immune_flags = [&](CLI::App* cmd) {
        cmd->add_option("--nat-alpha", dd.nat_alpha, "NAT scaling coefficient");
        cmd->add_option("--clones", dd.clone_count, "clones per recognition");
        cmd->add_option("--suppress", dd.suppression_threshold,
                        "suppression threshold (default 1.1 x NAT)");
        cmd->add_option("--population", dd.population_size, "working population size");
        cmd->add_option("--generations", dd.max_generations, "generation cap");
    };

    auto* sel = app.add_subcommand("select", "recommend rows worth labeling");
    sel->add_option("--data", data_path, "input CSV")->required();
    sel->add_option("--budget", budget, "label budget")->required();
    sel->add_option("--seed", seed, "RNG seed");
    sel->add_option("--out", out_path, "output JSON file (stdout if omitted)");
    add_immune_flags(sel);

    auto* clu = app.add_subcommand("cluster", "aiNetC clustering");
    clu->add_option("--data", data_path, "input CSV")->required();
    clu->add_option("--k", k, "target cluster count")->required();
    clu->add_option("--seed", seed, "RNG seed");
    clu->add_option("--nat-alpha", dd.nat_alpha, "NAT scaling coefficient");
    clu->add_option("--plot", plot_path, "SVG scatter output");
    clu->add_option("--dims", dims_str, "dimension pair i,j for the plot");

    auto* des = app.add_subcommand("describe", "aiNetDD dataset description");
    des->add_option("--data", data_path, "input CSV")->required();
    des->add_option("--seed", seed, "RNG seed");
    des->add_option("--plot", plot_path, "SVG scatter output");
    des->add_option("--dims", dims_str, "dimension pair i,j for the plot");
    add_immune_flags(des);

    auto* ben = app.add_subcommand("bench", "run the experiment grid");
    ben->add_option("--config", config_path, "JSON config")->required();
    ben->add_option("--out", out_prefix, "output path prefix")->required();
    ben->add_option("--format", format, "tsv | markdown")
        ->check(CLI::IsMember({"tsv", "markdown"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sel->parsed()) return cmd_select(data_path, budget, seed, dd, out_path);
        if (clu->parsed())
            return cmd_cluster(data_path, k, seed, dd.nat_alpha, plot_path, dims_str);
        if (des->parsed()) return cmd_describe(data_path, seed, dd, plot_path, dims_str);
        if (ben->parsed()) return cmd_bench(config_path, out_prefix, format);
    } catch (const ais::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
