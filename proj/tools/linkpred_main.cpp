// Command-line driver: evaluate, correlate, sweep, toy, split, score.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linkpred/linkpred.hpp"

namespace fs = std::filesystem;
using namespace linkpred;

namespace {

std::string iso_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string default_outdir() {
    const char* env = std::getenv("LINKPRED_OUTDIR");
    return env && *env ? env : ".";
}

struct CommonOptions {
    std::string config_path;
    std::string corpus_path;
    std::string out_dir = default_outdir();
    // flag overrides; negative/zero sentinel = not set
    double ratio = -1.0;
    std::int64_t seed = -1;
    int jobs = 0;
    int method = 0;
    std::string coefficient;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_corpus) {
    cmd->add_option("--config", opt.config_path, "experiment config (JSON)")
        ->check(CLI::ExistingFile);
    auto* corpus = cmd->add_option("--corpus", opt.corpus_path,
                                   "corpus manifest: one edge-list path per line");
    if (needs_corpus) corpus->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out_dir, "output directory (default $LINKPRED_OUTDIR or .)");
    cmd->add_option("--ratio", opt.ratio, "probe fraction, e.g. 0.1 for a 9:1 split");
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--jobs", opt.jobs, "parallel workers");
    cmd->add_option("--method", opt.method, "aggregation method: 1 or 2")
        ->check(CLI::Range(1, 2));
    cmd->add_option("--coefficient", opt.coefficient, "spearman or kendall")
        ->check(CLI::IsMember({"spearman", "kendall"}));
}

ExperimentConfig resolve_config(const CommonOptions& opt) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) cfg = load_config(opt.config_path);
    if (opt.ratio > 0.0) cfg.probe_fraction = opt.ratio;
    if (opt.seed >= 0) cfg.master_seed = std::uint64_t(opt.seed);
    if (opt.jobs > 0) cfg.jobs = std::size_t(opt.jobs);
    if (opt.method != 0)
        cfg.aggregation =
            opt.method == 1 ? Aggregation::PerNetworkAverage : Aggregation::MeanRank;
    if (!opt.coefficient.empty())
        cfg.coefficient =
            opt.coefficient == "spearman" ? Coefficient::Spearman : Coefficient::Kendall;
    return cfg;
}

struct LoadedCorpus {
    Corpus corpus;
    std::vector<std::string> paths;
};

LoadedCorpus load_corpus_from(const std::string& manifest_path) {
    LoadedCorpus out;
    auto entries = load_corpus_manifest(manifest_path);
    if (entries.empty()) throw domain_error("corpus manifest lists no networks");
    for (const auto& e : entries) {
        out.corpus.push_back({e.name, load_edge_list(e.path)});
        out.paths.push_back(e.path);
    }
    return out;
}

int report_notes(const ScoreTable& table) {
    bool any = false;
    for (std::size_t n = 0; n < table.networks(); ++n) {
        if (table.notes[n].empty()) continue;
        any = true;
        std::cerr << "network '" << table.network_names[n] << "':\n" << table.notes[n];
    }
    return any ? 3 : 0;
}

std::string out_path(const std::string& dir, const std::string& file) {
    fs::create_directories(dir);
    return (fs::path(dir) / file).string();
}

int cmd_evaluate(const CommonOptions& opt) {
    ExperimentConfig cfg = resolve_config(opt);
    LoadedCorpus loaded = load_corpus_from(opt.corpus_path);
    std::string id = compute_manifest_id(config_to_json(cfg), loaded.corpus);

    ScoreTable table = evaluate_corpus(loaded.corpus, cfg);
    write_scores_raw_csv(out_path(opt.out_dir, "scores_raw.csv"), table, id);
    write_scores_mean_csv(out_path(opt.out_dir, "scores_mean.csv"), table, id);
    write_manifest(out_path(opt.out_dir, "manifest.json"), id, config_to_json(cfg),
                   loaded.corpus, loaded.paths, {"scores_raw.csv", "scores_mean.csv"},
                   iso_timestamp());
    return report_notes(table);
}

int cmd_correlate(const CommonOptions& opt, const std::string& scores_path) {
    ExperimentConfig cfg = resolve_config(opt);
    ScoreTable table;
    std::string id;
    if (!scores_path.empty()) {
        table = read_scores_mean_csv(scores_path);
    } else {
        if (opt.corpus_path.empty())
            throw domain_error("correlate needs --corpus or --scores");
        LoadedCorpus loaded = load_corpus_from(opt.corpus_path);
        id = compute_manifest_id(config_to_json(cfg), loaded.corpus);
        table = evaluate_corpus(loaded.corpus, cfg);
        write_scores_raw_csv(out_path(opt.out_dir, "scores_raw.csv"), table, id);
        write_scores_mean_csv(out_path(opt.out_dir, "scores_mean.csv"), table, id);
        write_manifest(out_path(opt.out_dir, "manifest.json"), id, config_to_json(cfg),
                       loaded.corpus, loaded.paths,
                       {"scores_raw.csv", "scores_mean.csv", "correlation_matrix.csv",
                        "correlation_matrix.json", "correlation_pairs.csv",
                        "correlation_graph.csv"},
                       iso_timestamp());
    }

    CorrelationMatrix matrix = metric_correlations(table, cfg);
    write_correlation_matrix_csv(out_path(opt.out_dir, "correlation_matrix.csv"), matrix, id);
    write_correlation_matrix_json(out_path(opt.out_dir, "correlation_matrix.json"), matrix, id);
    write_correlation_pairs_csv(out_path(opt.out_dir, "correlation_pairs.csv"), matrix, id);
    write_correlation_graph_csv(out_path(opt.out_dir, "correlation_graph.csv"), matrix, id);

    int missing = 0;
    for (std::size_t i = 0; i < matrix.size(); ++i)
        for (std::size_t j = i + 1; j < matrix.size(); ++j)
            if (!matrix.at(i, j)) {
                std::cerr << "missing entry: no defined correlation for ("
                          << matrix.metric_names[i] << ", " << matrix.metric_names[j] << ")\n";
                ++missing;
            }
    int notes = report_notes(table);
    return notes != 0 ? notes : (missing > 0 ? 4 : 0);
}

int cmd_sweep(const CommonOptions& opt, const std::string& kind) {
    ExperimentConfig cfg = resolve_config(opt);
    LoadedCorpus loaded = load_corpus_from(opt.corpus_path);
    std::string id = compute_manifest_id(config_to_json(cfg), loaded.corpus);

    if (kind == "q") {
        ScoreTable table = evaluate_corpus(loaded.corpus, cfg);
        QSweepResult result = q_convergence_sweep(table, cfg, cfg.q_values, cfg.q_runs);
        write_q_sweep_csv(out_path(opt.out_dir, "sweep_q.csv"), result, id);
        write_q_sweep_summary_csv(out_path(opt.out_dir, "sweep_q_summary.csv"), result, id);
        write_manifest(out_path(opt.out_dir, "manifest.json"), id, config_to_json(cfg),
                       loaded.corpus, loaded.paths, {"sweep_q.csv", "sweep_q_summary.csv"},
                       iso_timestamp());
        return report_notes(table);
    }
    auto rows = threshold_sweep(loaded.corpus, cfg, cfg.rho_values, cfg.gamma_values);
    write_threshold_sweep_csv(out_path(opt.out_dir, "sweep_threshold.csv"), rows, id);
    write_manifest(out_path(opt.out_dir, "manifest.json"), id, config_to_json(cfg),
                   loaded.corpus, loaded.paths, {"sweep_threshold.csv"}, iso_timestamp());
    return 0;
}

int cmd_toy(const CommonOptions& opt, std::size_t p, std::size_t q, std::size_t seeds,
            const std::string& method) {
    ExperimentConfig cfg = resolve_config(opt);
    std::vector<Aggregation> methods;
    if (method == "1" || method == "both") methods.push_back(Aggregation::PerNetworkAverage);
    if (method == "2" || method == "both") methods.push_back(Aggregation::MeanRank);

    std::vector<ToyTraceRow> rows;
    // per (method, q): running sums for the seed-averaged trace
    std::vector<std::vector<double>> sums(methods.size(), std::vector<double>(q, 0.0));
    std::vector<std::vector<std::size_t>> defined(methods.size(),
                                                  std::vector<std::size_t>(q, 0));
    for (std::size_t s = 0; s < seeds; ++s) {
        ToyConfig toy;
        toy.algorithms_p = p;
        toy.networks_q = q;
        toy.seed = mix_seed(cfg.master_seed, s);
        ToyScores scores = generate_toy_scores(toy);
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            auto trace = toy_trace(scores, methods[mi], cfg.coefficient);
            int method_no = methods[mi] == Aggregation::PerNetworkAverage ? 1 : 2;
            for (std::size_t i = 0; i < trace.size(); ++i) {
                rows.push_back({method_no, cfg.coefficient, toy.seed, i + 1, trace[i]});
                if (trace[i]) {
                    sums[mi][i] += *trace[i];
                    ++defined[mi][i];
                }
            }
        }
    }
    write_toy_trace_csv(out_path(opt.out_dir, "toy_trace.csv"), rows);

    auto out = std::ofstream(out_path(opt.out_dir, "toy_trace_mean.csv"));
    out << "# linkpred-csv v1 kind=toy_trace_mean\n";
    out << "method,coefficient,q,mean_value,seeds\n";
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        int method_no = methods[mi] == Aggregation::PerNetworkAverage ? 1 : 2;
        for (std::size_t i = 0; i < q; ++i)
            out << method_no << ',' << coefficient_name(cfg.coefficient) << ',' << (i + 1) << ','
                << (defined[mi][i] ? format_value(sums[mi][i] / double(defined[mi][i]))
                                   : std::string())
                << ',' << defined[mi][i] << '\n';
    }
    return 0;
}

int cmd_split(const std::string& input, const std::string& out_train,
              const std::string& out_probe, double ratio, std::uint64_t seed) {
    LoadStats stats;
    Graph g = load_edge_list(input, {}, &stats);
    TrainProbeSplit split = split_train_probe(g, ratio, seed);
    Graph train = training_graph(g, split);
    write_edge_list(train, out_train);
    Graph probe = Graph::from_edges(g.node_count(), split.probe_edges, g.labels());
    write_edge_list(probe, out_probe);

    std::cout << "nodes " << g.node_count() << ", edges " << g.edge_count()
              << " (self-loops skipped " << stats.self_loops_skipped << ", duplicates "
              << stats.duplicate_edges << ")\n"
              << "train " << split.train_edges.size() << ", probe " << split.probe_edges.size()
              << ", training components " << split.train_components << ", probe-only nodes "
              << split.probe_only_nodes << '\n';
    return 0;
}

int cmd_score(const std::string& input, const std::string& algorithm, const std::string& out,
              double ratio, std::uint64_t seed, const std::vector<std::string>& params) {
    Graph g = load_edge_list(input);
    Algorithm alg = parse_algorithm(algorithm);
    AlgorithmParams ap;
    for (const auto& kv : params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw domain_error("expected key=value, got '" + kv + "'");
        set_param(ap, alg, kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
    }
    TrainProbeSplit split = split_train_probe(g, ratio, seed);
    Graph train = training_graph(g, split);
    CandidateSet cand = candidate_set(g, split);
    RankedCandidates ranked =
        score_candidates(train, cand, alg, ap, mix_seed(seed, std::uint64_t(alg)));
    write_candidate_scores_csv(out, g, ranked);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"link prediction evaluation toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;

    auto* evaluate = app.add_subcommand("evaluate", "score all algorithms/metrics on a corpus");
    add_common(evaluate, opt, true);
    evaluate->get_option("--corpus")->required();

    std::string scores_path;
    auto* correlate =
        app.add_subcommand("correlate", "pairwise metric correlations over a corpus");
    add_common(correlate, opt, false);
    correlate->add_option("--scores", scores_path, "scores_mean.csv from a previous evaluate")
        ->check(CLI::ExistingFile);

    std::string sweep_kind;
    auto* sweep = app.add_subcommand("sweep", "Q-convergence or threshold sweep");
    add_common(sweep, opt, true);
    sweep->get_option("--corpus")->required();
    sweep->add_option("--kind", sweep_kind, "q or threshold")
        ->required()
        ->check(CLI::IsMember({"q", "threshold"}));

    std::size_t toy_p = 100, toy_q = 500, toy_seeds = 1;
    std::string toy_method = "both";
    auto* toy = app.add_subcommand("toy", "synthetic consistent-metrics noise model");
    add_common(toy, opt, false);
    toy->add_option("--p", toy_p, "number of algorithms");
    toy->add_option("--q", toy_q, "number of networks");
    toy->add_option("--seeds", toy_seeds, "independent repetitions");
    toy->add_option("--toy-method", toy_method, "1, 2 or both")
        ->check(CLI::IsMember({"1", "2", "both"}));

    std::string split_input, split_train, split_probe;
    double split_ratio = 0.1;
    std::int64_t split_seed = 1;
    auto* split = app.add_subcommand("split", "write train/probe edge lists");
    split->add_option("--input", split_input, "edge list")->required()->check(CLI::ExistingFile);
    split->add_option("--out-train", split_train, "training edge list")->required();
    split->add_option("--out-probe", split_probe, "probe edge list")->required();
    split->add_option("--ratio", split_ratio, "probe fraction");
    split->add_option("--seed", split_seed, "split seed");

    std::string score_input, score_alg, score_out;
    double score_ratio = 0.1;
    std::int64_t score_seed = 1;
    std::vector<std::string> score_params;
    auto* score = app.add_subcommand("score", "rank candidates of one algorithm");
    score->add_option("--input", score_input, "edge list")->required()->check(CLI::ExistingFile);
    score->add_option("--algorithm", score_alg, "algorithm name")->required();
    score->add_option("--out", score_out, "output CSV")->required();
    score->add_option("--ratio", score_ratio, "probe fraction");
    score->add_option("--seed", score_seed, "split seed");
    score->add_option("--param", score_params, "algorithm parameter key=value");

    CLI11_PARSE(app, argc, argv);

    try {
        if (evaluate->parsed()) return cmd_evaluate(opt);
        if (correlate->parsed()) return cmd_correlate(opt, scores_path);
        if (sweep->parsed()) return cmd_sweep(opt, sweep_kind);
        if (toy->parsed()) return cmd_toy(opt, toy_p, toy_q, toy_seeds, toy_method);
        if (split->parsed())
            return cmd_split(split_input, split_train, split_probe, split_ratio,
                             std::uint64_t(split_seed));
        if (score->parsed())
            return cmd_score(score_input, score_alg, score_out, score_ratio,
                             std::uint64_t(score_seed), score_params);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
