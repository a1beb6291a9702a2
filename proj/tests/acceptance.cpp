// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with its headline numbers.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "linkpred/linkpred.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace linkpred;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("criterion %d [%s]: %s\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::size_t jobs() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : hw;
}

// ---- desk corpus shared by criteria 4-6 ----

Corpus desk_corpus() {
    Corpus corpus;
    std::uint64_t s = 9000;
    corpus.push_back({"ba_120_2", gen::barabasi_albert(120, 2, ++s)});
    corpus.push_back({"ba_160_3", gen::barabasi_albert(160, 3, ++s)});
    corpus.push_back({"ba_90_4", gen::barabasi_albert(90, 4, ++s)});
    corpus.push_back({"ba_140_2", gen::barabasi_albert(140, 2, ++s)});
    corpus.push_back({"ws_100_6", gen::watts_strogatz(100, 6, 0.1, ++s)});
    corpus.push_back({"ws_150_6", gen::watts_strogatz(150, 6, 0.3, ++s)});
    corpus.push_back({"ws_160_4", gen::watts_strogatz(160, 4, 0.1, ++s)});
    corpus.push_back({"ws_120_8", gen::watts_strogatz(120, 8, 0.2, ++s)});
    corpus.push_back({"ws_130_6", gen::watts_strogatz(130, 6, 0.05, ++s)});
    corpus.push_back({"gnp_100_06", gen::gnp(100, 0.06, ++s)});
    corpus.push_back({"gnp_140_04", gen::gnp(140, 0.04, ++s)});
    corpus.push_back({"gnp_160_03", gen::gnp(160, 0.03, ++s)});
    corpus.push_back({"gnp_90_10", gen::gnp(90, 0.10, ++s)});
    corpus.push_back({"gnp_120_05", gen::gnp(120, 0.05, ++s)});
    corpus.push_back({"pp_120_3", gen::planted_partition(120, 3, 0.15, 0.01, ++s)});
    corpus.push_back({"pp_160_4", gen::planted_partition(160, 4, 0.12, 0.008, ++s)});
    corpus.push_back({"pp_100_2", gen::planted_partition(100, 2, 0.2, 0.02, ++s)});
    corpus.push_back({"pp_140_3", gen::planted_partition(140, 3, 0.1, 0.01, ++s)});
    corpus.push_back({"geo_100", gen::random_geometric(100, 0.18, ++s)});
    corpus.push_back({"geo_150", gen::random_geometric(150, 0.14, ++s)});
    corpus.push_back({"geo_160", gen::random_geometric(160, 0.12, ++s)});
    corpus.push_back({"geo_120", gen::random_geometric(120, 0.16, ++s)});
    corpus.push_back({"geo_90", gen::random_geometric(90, 0.2, ++s)});
    corpus.push_back({"ba_110_3", gen::barabasi_albert(110, 3, ++s)});
    return corpus;
}

ExperimentConfig desk_config(double probe_fraction, const std::vector<double>& rhos) {
    ExperimentConfig cfg;
    cfg.probe_fraction = probe_fraction;
    cfg.repeats = 10;
    cfg.master_seed = 20240817;
    cfg.jobs = jobs();
    cfg.metrics.clear();
    for (double rho : rhos)
        cfg.metrics.push_back({MetricKind::Precision, {ThresholdRule::Type::RhoFraction, rho}});
    for (MetricKind m : {MetricKind::AUC, MetricKind::AUPR, MetricKind::AUCPrecision,
                         MetricKind::NDCG, MetricKind::AUCmROC})
        cfg.metrics.push_back({m, {}});
    return cfg;
}

ScoreTable select_metrics(const ScoreTable& table, const std::vector<std::size_t>& keep) {
    ScoreTable out;
    out.network_names = table.network_names;
    out.algorithm_names = table.algorithm_names;
    for (std::size_t m : keep) out.metric_names.push_back(table.metric_names[m]);
    out.repeats = table.repeats;
    out.raw.assign(out.networks() * out.algorithms() * keep.size() * out.repeats, std::nullopt);
    out.mean.assign(out.networks() * out.algorithms() * keep.size(), std::nullopt);
    out.notes = table.notes;
    for (std::size_t n = 0; n < out.networks(); ++n)
        for (std::size_t a = 0; a < out.algorithms(); ++a)
            for (std::size_t mi = 0; mi < keep.size(); ++mi) {
                out.mean_cell(n, a, mi) = table.mean_cell(n, a, keep[mi]);
                for (std::size_t r = 0; r < out.repeats; ++r)
                    out.raw_cell(n, a, mi, r) = table.raw_cell(n, a, keep[mi], r);
            }
    return out;
}

struct DeskEval {
    Corpus corpus;
    ScoreTable table;  // metrics: Precision@{.01,.05,.1,.2,.4} then the 5 threshold-free
    double build_seconds = 0.0;
};

const DeskEval& desk_eval() {
    static DeskEval d = [] {
        auto start = std::chrono::steady_clock::now();
        DeskEval d;
        d.corpus = desk_corpus();
        ExperimentConfig cfg = desk_config(0.1, {0.01, 0.05, 0.1, 0.2, 0.4});
        d.table = evaluate_corpus(d.corpus, cfg);
        d.build_seconds = seconds_since(start);
        return d;
    }();
    return d;
}

// indices into the desk table
constexpr std::size_t kPrec001 = 0, kPrec040 = 4, kPrec010 = 2;
constexpr std::size_t kAUC = 5, kAUPR = 6, kAUCPrec = 7, kNDCG = 8, kMROC = 9;

std::vector<std::pair<std::size_t, std::size_t>> pair_order(const CorrelationMatrix& m) {
    struct P {
        std::size_t i, j;
        double v;
    };
    std::vector<P> pairs;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            REQUIRE(m.at(i, j).has_value());
            pairs.push_back({i, j, *m.at(i, j)});
        }
    std::stable_sort(pairs.begin(), pairs.end(), [](const P& a, const P& b) { return a.v > b.v; });
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (const P& p : pairs) order.emplace_back(p.i, p.j);
    return order;
}

bool within_one_adjacent_swap(const std::vector<std::pair<std::size_t, std::size_t>>& a,
                              const std::vector<std::pair<std::size_t, std::size_t>>& b) {
    if (a == b) return true;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        auto swapped = b;
        std::swap(swapped[i], swapped[i + 1]);
        if (a == swapped) return true;
    }
    return false;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("criterion 1: threshold-dependent metrics rank identically at fixed k") {
    auto start = std::chrono::steady_clock::now();
    const std::size_t instances = 10000, lists = 10, k_draws = 5;
    const MetricKind metrics[] = {MetricKind::Precision, MetricKind::Recall,
                                  MetricKind::Accuracy,  MetricKind::Specificity,
                                  MetricKind::F1,        MetricKind::Youden,
                                  MetricKind::MCC};
    Rng rng(169);
    std::size_t violations = 0, comparisons = 0;
    double spearman_check = 1.0;

    for (std::size_t inst = 0; inst < instances; ++inst) {
        std::size_t n_cand = 20 + rng.bounded(481);
        std::size_t max_pos = std::min<std::size_t>(50, n_cand - 1);
        std::size_t n_pos = 2 + rng.bounded(max_pos - 1);

        CandidateSet cand;
        cand.pairs.resize(n_cand);
        for (std::size_t i = 0; i < n_cand; ++i) cand.pairs[i] = Edge(0, NodeId(i + 1));
        cand.positive.assign(n_cand, 0);
        for (std::size_t i : sample_indices(n_cand, n_pos, rng)) cand.positive[i] = 1;
        cand.positive_count = n_pos;

        int levels = inst % 3 == 0 ? 0 : (inst % 3 == 1 ? 12 : 4);
        std::vector<std::vector<std::size_t>> prefix_pos(lists);
        for (std::size_t l = 0; l < lists; ++l) {
            std::vector<double> scores(n_cand);
            for (auto& s : scores) {
                double u = rng.uniform();
                s = levels > 0 ? std::floor(u * levels) : u;
            }
            auto ranked = rank_candidates(cand, scores, rng.next());
            auto& prefix = prefix_pos[l];
            prefix.assign(n_cand + 1, 0);
            for (std::size_t i = 0; i < n_cand; ++i)
                prefix[i + 1] = prefix[i] + (ranked.entries[i].is_positive ? 1 : 0);
        }

        for (std::size_t kd = 0; kd < k_draws; ++kd) {
            std::size_t k = 1 + rng.bounded(n_cand);
            std::vector<std::vector<double>> values(7, std::vector<double>(lists));
            for (std::size_t l = 0; l < lists; ++l) {
                ConfusionCounts c;
                c.k = k;
                c.n_pos = n_pos;
                c.n_neg = n_cand - n_pos;
                c.n_cand = n_cand;
                c.tp = prefix_pos[l][k];
                c.fp = k - c.tp;
                c.fn = n_pos - c.tp;
                c.tn = c.n_neg - c.fp;
                for (std::size_t m = 0; m < 7; ++m)
                    values[m][l] = threshold_metric(c, metrics[m]);
            }
            auto reference = ranks_from_scores(values[0]);
            for (std::size_t m = 1; m < 7; ++m) {
                ++comparisons;
                if (ranks_from_scores(values[m]) != reference) ++violations;
            }
            if (inst % 997 == 0) {
                if (auto r = correlate(reference, ranks_from_scores(values[6]),
                                       Coefficient::Spearman))
                    spearman_check = std::min(spearman_check, *r);
            }
        }
    }

    double elapsed = seconds_since(start);
    bool ok = violations == 0 && elapsed < 60.0 && spearman_check > 1.0 - 1e-12;
    report(1, ok,
           std::to_string(comparisons) + " ranking comparisons, " + std::to_string(violations) +
               " violations, " + std::to_string(elapsed) + " s");
    CHECK(violations == 0);
    CHECK(elapsed < 60.0);
    REQUIRE(ok);
}

TEST_CASE("criterion 2: threshold-free metrics match their oracles") {
    const std::size_t instances = 500;
    Rng rng(7);
    std::size_t aupr_fail = 0, auc_fail = 0, sampled_fail = 0, ndcg_fail = 0, mroc_fail = 0;
    const double sampled_tol = 3.0 * std::sqrt(0.25 / 100000.0);

    for (std::size_t inst = 0; inst < instances; ++inst) {
        std::size_t n_cand = 30 + rng.bounded(271);
        std::size_t n_pos = 2 + rng.bounded(std::min<std::size_t>(50, n_cand / 3));
        int levels = inst % 4 == 0 ? 6 : 0;
        auto ranked = gen::random_instance(n_cand, n_pos, rng.next(), levels);

        if (std::abs(aupr(ranked) - oracle::aupr_pr_sweep(ranked)) > 1e-9) ++aupr_fail;
        if (auc_exact(ranked) != oracle::auc_all_pairs(ranked)) ++auc_fail;
        if (std::abs(auc_sampled(ranked, 100000, rng.next()) - auc_exact(ranked)) > sampled_tol)
            ++sampled_fail;

        std::vector<std::size_t> ideal_ranks(n_pos);
        for (std::size_t i = 0; i < n_pos; ++i) ideal_ranks[i] = i + 1;
        auto ideal = gen::instance_with_positive_ranks(n_cand, ideal_ranks);
        if (ndcg(ideal) != 1.0) ++ndcg_fail;
        if (std::abs(auc_mroc(ideal) - 1.0) > 1e-9) ++mroc_fail;
    }

    bool ok = aupr_fail + auc_fail + sampled_fail + ndcg_fail + mroc_fail == 0;
    report(2, ok,
           "500 instances; failures: AUPR=" + std::to_string(aupr_fail) +
               " AUC=" + std::to_string(auc_fail) + " sampledAUC=" + std::to_string(sampled_fail) +
               " NDCG(ideal)=" + std::to_string(ndcg_fail) +
               " mROC(perfect)=" + std::to_string(mroc_fail));
    CHECK(aupr_fail == 0);
    CHECK(auc_fail == 0);
    CHECK(sampled_fail == 0);
    CHECK(ndcg_fail == 0);
    CHECK(mroc_fail == 0);
    REQUIRE(ok);
}

TEST_CASE("criterion 3: toy model reproduces both aggregation regimes") {
    auto start = std::chrono::steady_clock::now();
    const std::size_t seeds = 20;
    double method1_sum = 0.0;
    double method2_min_tail = 1.0;
    for (std::size_t s = 0; s < seeds; ++s) {
        ToyConfig cfg{100, 500, -1.0, 31400 + s};
        ToyScores scores = generate_toy_scores(cfg);
        auto m1 = toy_trace(scores, Aggregation::PerNetworkAverage);
        auto m2 = toy_trace(scores, Aggregation::MeanRank);
        REQUIRE(m1.back().has_value());
        method1_sum += *m1.back();
        for (std::size_t q = 300; q <= 500; ++q) {
            REQUIRE(m2[q - 1].has_value());
            method2_min_tail = std::min(method2_min_tail, *m2[q - 1]);
        }
    }
    double method1_mean = method1_sum / double(seeds);
    double elapsed = seconds_since(start);
    bool ok = method1_mean >= 0.46 && method1_mean <= 0.52 && method2_min_tail >= 0.99 &&
              elapsed < 60.0;
    report(3, ok,
           "method1 mean=" + std::to_string(method1_mean) +
               " (want [0.46,0.52]), method2 min over Q>=300 = " +
               std::to_string(method2_min_tail) + " (want >=0.99), " + std::to_string(elapsed) +
               " s");
    CHECK(method1_mean >= 0.46);
    CHECK(method1_mean <= 0.52);
    CHECK(method2_min_tail >= 0.99);
    CHECK(elapsed < 60.0);
    REQUIRE(ok);
}

TEST_CASE("criterion 4: the AUPR/AUC-Precision/NDCG triangle dominates AUC-mROC pairs") {
    auto start = std::chrono::steady_clock::now();
    const DeskEval& d = desk_eval();
    REQUIRE(d.corpus.size() >= 20);
    for (const auto& net : d.corpus) CHECK(net.graph.node_count() <= 2000);

    ScoreTable six = select_metrics(d.table, {kPrec010, kAUC, kAUPR, kAUCPrec, kNDCG, kMROC});
    ExperimentConfig corr_cfg;
    corr_cfg.coefficient = Coefficient::Spearman;
    corr_cfg.aggregation = Aggregation::PerNetworkAverage;
    corr_cfg.algorithms = default_algorithms();
    auto matrix = metric_correlations(six, corr_cfg);

    // in the six-metric table: 0=Precision 1=AUC 2=AUPR 3=AUC-Precision 4=NDCG 5=mROC
    auto entry = [&](std::size_t i, std::size_t j) {
        REQUIRE(matrix.at(i, j).has_value());
        return *matrix.at(i, j);
    };
    double triangle =
        (entry(2, 3) + entry(2, 4) + entry(3, 4)) / 3.0;
    double worst_margin = 2.0;
    double max_mroc = -2.0;
    for (std::size_t other : {0ul, 1ul, 2ul, 3ul, 4ul}) {
        max_mroc = std::max(max_mroc, entry(other, 5));
        worst_margin = std::min(worst_margin, triangle - entry(other, 5));
    }

    double elapsed = d.build_seconds + seconds_since(start);
    bool ok = triangle >= 0.8 && max_mroc < triangle && elapsed < 1800.0;
    report(4, ok,
           "triangle mean=" + std::to_string(triangle) + " (want >=0.8), max mROC pair=" +
               std::to_string(max_mroc) + ", margin=" + std::to_string(worst_margin) + ", " +
               std::to_string(elapsed) + " s incl. evaluation");
    CHECK(triangle >= 0.8);
    CHECK(max_mroc < triangle);
    CHECK(elapsed < 1800.0);
    REQUIRE(ok);
}

TEST_CASE("criterion 5: Precision-AUC decays more slowly than Precision-AUCmROC") {
    const DeskEval& d = desk_eval();
    ExperimentConfig corr_cfg;
    corr_cfg.coefficient = Coefficient::Spearman;
    corr_cfg.aggregation = Aggregation::PerNetworkAverage;
    auto matrix = metric_correlations(d.table, corr_cfg);

    auto entry = [&](std::size_t i, std::size_t j) {
        REQUIRE(matrix.at(i, j).has_value());
        return *matrix.at(i, j);
    };
    double auc_delta = entry(kPrec040, kAUC) - entry(kPrec001, kAUC);
    double mroc_delta = entry(kPrec040, kMROC) - entry(kPrec001, kMROC);
    bool ok = auc_delta > mroc_delta;
    report(5, ok,
           "Precision-AUC delta(rho 0.4 - 0.01)=" + std::to_string(auc_delta) +
               ", Precision-mROC delta=" + std::to_string(mroc_delta));
    REQUIRE(ok);
}

TEST_CASE("criterion 6: pair ordering is robust to the coefficient and the split ratio") {
    const DeskEval& d = desk_eval();
    ScoreTable six = select_metrics(d.table, {kPrec010, kAUC, kAUPR, kAUCPrec, kNDCG, kMROC});

    ExperimentConfig spearman_cfg;
    spearman_cfg.coefficient = Coefficient::Spearman;
    ExperimentConfig kendall_cfg;
    kendall_cfg.coefficient = Coefficient::Kendall;

    auto spearman_order = pair_order(metric_correlations(six, spearman_cfg));
    auto kendall_order = pair_order(metric_correlations(six, kendall_cfg));
    bool coefficients_agree = spearman_order == kendall_order;

    // ratios 8:2, 7:3, 6:4 against the 9:1 baseline
    bool ratios_agree = true;
    std::string ratio_note;
    for (double probe : {0.2, 0.3, 0.4}) {
        ExperimentConfig cfg = desk_config(probe, {0.1});
        ScoreTable table = evaluate_corpus(d.corpus, cfg);
        auto order = pair_order(metric_correlations(table, spearman_cfg));
        bool match = within_one_adjacent_swap(spearman_order, order);
        if (!match) {
            ratios_agree = false;
            ratio_note += " ratio " + std::to_string(probe) + " reorders pairs;";
        }
    }

    bool ok = coefficients_agree && ratios_agree;
    report(6, ok,
           std::string("Spearman/Kendall orders ") +
               (coefficients_agree ? "identical" : "DIFFER") + "; split ratios " +
               (ratios_agree ? "stable within one adjacent swap" : ratio_note));
    CHECK(coefficients_agree);
    CHECK(ratios_agree);
    REQUIRE(ok);
}

TEST_CASE("criterion 7: end-to-end runs are byte-identical regardless of --jobs") {
    fs::path work = fs::temp_directory_path() / "linkpred_acceptance_cli";
    fs::remove_all(work);
    fs::create_directories(work);

    // three small networks on disk
    std::vector<std::string> net_paths;
    Corpus nets = {{"n1", gen::gnp(40, 0.12, 71)},
                   {"n2", gen::barabasi_albert(45, 2, 72)},
                   {"n3", gen::watts_strogatz(40, 4, 0.2, 73)}};
    for (const auto& net : nets) {
        std::string p = (work / (net.name + ".edges")).string();
        write_edge_list(net.graph, p);
        net_paths.push_back(p);
    }
    std::string corpus_path = (work / "corpus.txt").string();
    {
        std::ofstream out(corpus_path);
        for (std::size_t i = 0; i < nets.size(); ++i)
            out << net_paths[i] << ' ' << nets[i].name << '\n';
    }
    std::string config_path = (work / "config.json").string();
    {
        std::ofstream out(config_path);
        out << R"({"repeats": 2, "master_seed": 4242,
                   "algorithms": ["CN", "RA", "PA", "Katz", "LRW"],
                   "metrics": ["Precision", "AUC", "AUPR", "NDCG"],
                   "threshold": {"rule": "rho", "value": 0.1}})";
    }

    auto run = [&](const std::string& outdir, int jobs_flag) {
        std::string cmd = std::string(LINKPRED_CLI_PATH) + " correlate --corpus " + corpus_path +
                          " --config " + config_path + " --out " + (work / outdir).string() +
                          " --jobs " + std::to_string(jobs_flag) + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    REQUIRE(run("out_a", 1) == 0);
    REQUIRE(run("out_b", 4) == 0);
    REQUIRE(run("out_c", 2) == 0);

    const char* files[] = {"scores_raw.csv", "scores_mean.csv", "correlation_matrix.csv",
                           "correlation_pairs.csv", "correlation_graph.csv"};
    bool identical = true;
    for (const char* f : files) {
        std::string a = slurp((work / "out_a" / f).string());
        std::string b = slurp((work / "out_b" / f).string());
        std::string c = slurp((work / "out_c" / f).string());
        if (a != b || a != c) identical = false;
        CHECK(a == b);
        CHECK(a == c);
    }
    report(7, identical, std::string("5 output files compared across --jobs {1,4,2}: ") +
                             (identical ? "byte-identical" : "MISMATCH"));
    REQUIRE(identical);
}

TEST_CASE("cli rejects bad inputs without partial outputs") {
    fs::path work = fs::temp_directory_path() / "linkpred_cli_errors";
    fs::remove_all(work);
    fs::create_directories(work);

    std::string out_dir = (work / "out").string();
    std::string cmd = std::string(LINKPRED_CLI_PATH) + " evaluate --corpus " +
                      (work / "missing.txt").string() + " --out " + out_dir +
                      " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) != 0);
    CHECK(!fs::exists(fs::path(out_dir) / "scores_raw.csv"));

    // corpus manifest pointing at a nonexistent edge list
    std::string corpus_path = (work / "corpus.txt").string();
    {
        std::ofstream out(corpus_path);
        out << (work / "ghost.edges").string() << '\n';
    }
    cmd = std::string(LINKPRED_CLI_PATH) + " evaluate --corpus " + corpus_path + " --out " +
          out_dir + " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) != 0);
    CHECK(!fs::exists(fs::path(out_dir) / "scores_raw.csv"));

    // config with an unknown field
    std::string config_path = (work / "bad.json").string();
    {
        std::ofstream out(config_path);
        out << R"({"not_a_field": true})";
    }
    Graph g = gen::gnp(20, 0.3, 5);
    write_edge_list(g, (work / "g.edges").string());
    {
        std::ofstream out(corpus_path);
        out << (work / "g.edges").string() << '\n';
    }
    cmd = std::string(LINKPRED_CLI_PATH) + " evaluate --corpus " + corpus_path + " --config " +
          config_path + " --out " + out_dir + " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) != 0);
    CHECK(!fs::exists(fs::path(out_dir) / "scores_raw.csv"));
}
