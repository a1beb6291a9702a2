#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "linkpred/errors.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/metrics.hpp"
#include "linkpred/predictors.hpp"
#include "linkpred/rank_correlation.hpp"
#include "linkpred/rng.hpp"
#include "linkpred/toy_model.hpp"

namespace linkpred {

struct AlgorithmRun {
    Algorithm id = Algorithm::CN;
    AlgorithmParams params;
};

inline std::vector<AlgorithmRun> default_algorithms() {
    std::vector<AlgorithmRun> runs;
    for (Algorithm a : all_algorithms()) runs.push_back({a, {}});
    return runs;
}

// Precision at rho = 0.1 plus the five threshold-free metrics.
inline std::vector<MetricSpec> default_metrics() {
    std::vector<MetricSpec> metrics;
    metrics.push_back({MetricKind::Precision, {ThresholdRule::Type::RhoFraction, 0.1}});
    for (MetricKind m : {MetricKind::AUC, MetricKind::AUPR, MetricKind::AUCPrecision,
                         MetricKind::NDCG, MetricKind::AUCmROC})
        metrics.push_back({m, {}});
    return metrics;
}

struct ExperimentConfig {
    double probe_fraction = 0.1;  // |E^T|:|E^P| = 9:1
    std::size_t repeats = 10;
    std::vector<AlgorithmRun> algorithms = default_algorithms();
    std::vector<MetricSpec> metrics = default_metrics();
    Coefficient coefficient = Coefficient::Spearman;
    Aggregation aggregation = Aggregation::PerNetworkAverage;
    std::uint64_t master_seed = 1;
    std::vector<std::size_t> q_values = {10, 50, 100, 150, 200, 250, 300};
    std::size_t q_runs = 10;
    std::vector<double> rho_values = {0.01, 0.05, 0.1, 0.2, 0.4};
    std::vector<double> gamma_values = {0.5, 1.0, 2.0, 5.0, 10.0};
    std::size_t jobs = 1;
};

struct NamedGraph {
    std::string name;
    Graph graph;
};
using Corpus = std::vector<NamedGraph>;

namespace detail {

inline std::uint64_t hash_name(const std::string& name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Seeds are derived from (master, network name, repeat, algorithm) so that
// editing the algorithm or metric list never perturbs other cells. The split
// is shared by all algorithms of a repeat; the tie shuffle is not.
inline std::uint64_t split_seed(std::uint64_t master, const std::string& network,
                                std::size_t repeat) {
    return mix_seed(mix_seed(mix_seed(master, 0x511fULL), hash_name(network)), repeat);
}

inline std::uint64_t tie_seed(std::uint64_t split_seed_value, Algorithm alg) {
    return mix_seed(mix_seed(split_seed_value, 0x71eULL), std::uint64_t(alg));
}

}  // namespace detail

// Raw and averaged metric values for one corpus evaluation. A mean cell is
// defined only when all of its repeats are; partial averages would not be
// comparable across algorithms.
struct ScoreTable {
    std::vector<std::string> network_names;
    std::vector<std::string> algorithm_names;
    std::vector<std::string> metric_names;
    std::size_t repeats = 0;
    std::vector<std::optional<double>> raw;   // [((net*A + alg)*M + met)*R + run]
    std::vector<std::optional<double>> mean;  // [(net*A + alg)*M + met]
    std::vector<std::string> notes;           // per-network warnings, network order

    std::size_t networks() const { return network_names.size(); }
    std::size_t algorithms() const { return algorithm_names.size(); }
    std::size_t metrics() const { return metric_names.size(); }

    std::optional<double>& raw_cell(std::size_t n, std::size_t a, std::size_t m, std::size_t r) {
        return raw[((n * algorithms() + a) * metrics() + m) * repeats + r];
    }
    const std::optional<double>& raw_cell(std::size_t n, std::size_t a, std::size_t m,
                                          std::size_t r) const {
        return raw[((n * algorithms() + a) * metrics() + m) * repeats + r];
    }
    std::optional<double>& mean_cell(std::size_t n, std::size_t a, std::size_t m) {
        return mean[(n * algorithms() + a) * metrics() + m];
    }
    const std::optional<double>& mean_cell(std::size_t n, std::size_t a, std::size_t m) const {
        return mean[(n * algorithms() + a) * metrics() + m];
    }
};

// Evaluate every (network, repeat, algorithm, metric) cell. Cells are
// independent pure functions of their derived seeds, so the worker schedule
// cannot change any value.
inline ScoreTable evaluate_corpus(const Corpus& corpus, const ExperimentConfig& cfg) {
    if (cfg.repeats < 1) throw domain_error("repeats must be >= 1");
    if (cfg.algorithms.empty() || cfg.metrics.empty())
        throw domain_error("need at least one algorithm and one metric");

    ScoreTable table;
    for (const auto& g : corpus) table.network_names.push_back(g.name);
    for (const auto& a : cfg.algorithms) table.algorithm_names.push_back(algorithm_name(a.id));
    for (const auto& m : cfg.metrics) table.metric_names.push_back(m.column_name());
    table.repeats = cfg.repeats;
    table.raw.assign(corpus.size() * cfg.algorithms.size() * cfg.metrics.size() * cfg.repeats,
                     std::nullopt);
    table.mean.assign(corpus.size() * cfg.algorithms.size() * cfg.metrics.size(), std::nullopt);
    table.notes.assign(corpus.size(), "");

    struct Task {
        std::size_t net, repeat, alg;
    };
    std::vector<Task> tasks;
    tasks.reserve(corpus.size() * cfg.repeats * cfg.algorithms.size());
    for (std::size_t n = 0; n < corpus.size(); ++n)
        for (std::size_t r = 0; r < cfg.repeats; ++r)
            for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) tasks.push_back({n, r, a});

    // per-(network, repeat, algorithm) error messages, merged afterwards
    std::vector<std::string> task_errors(tasks.size());

    auto run_task = [&](std::size_t t) {
        const Task& task = tasks[t];
        const NamedGraph& net = corpus[task.net];
        try {
            std::uint64_t sseed =
                detail::split_seed(cfg.master_seed, net.name, task.repeat);
            TrainProbeSplit split = split_train_probe(net.graph, cfg.probe_fraction, sseed);
            Graph train = training_graph(net.graph, split);
            CandidateSet cand = candidate_set(net.graph, split);
            const AlgorithmRun& alg = cfg.algorithms[task.alg];
            RankedCandidates ranked = score_candidates(
                train, cand, alg.id, alg.params, detail::tie_seed(sseed, alg.id));
            for (std::size_t m = 0; m < cfg.metrics.size(); ++m) {
                try {
                    table.raw_cell(task.net, task.alg, m, task.repeat) =
                        evaluate_metric(ranked, cfg.metrics[m]);
                } catch (const undefined_value&) {
                    // stays missing
                }
            }
        } catch (const std::exception& e) {
            task_errors[t] = e.what();
        }
    };

    std::size_t jobs = std::max<std::size_t>(1, cfg.jobs);
    if (jobs == 1 || tasks.size() <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < std::min(jobs, tasks.size()); ++w)
            workers.emplace_back([&] {
                for (;;) {
                    std::size_t t = next.fetch_add(1);
                    if (t >= tasks.size()) return;
                    run_task(t);
                }
            });
        for (auto& w : workers) w.join();
    }

    for (std::size_t t = 0; t < tasks.size(); ++t)
        if (!task_errors[t].empty())
            table.notes[tasks[t].net] +=
                table.algorithm_names[tasks[t].alg] + " repeat " +
                std::to_string(tasks[t].repeat) + ": " + task_errors[t] + "\n";

    // deterministic sequential reduce over sorted keys
    for (std::size_t n = 0; n < table.networks(); ++n)
        for (std::size_t a = 0; a < table.algorithms(); ++a)
            for (std::size_t m = 0; m < table.metrics(); ++m) {
                double sum = 0.0;
                bool complete = true;
                for (std::size_t r = 0; r < cfg.repeats; ++r) {
                    const auto& cell = table.raw_cell(n, a, m, r);
                    if (!cell) {
                        complete = false;
                        break;
                    }
                    sum += *cell;
                }
                if (complete) table.mean_cell(n, a, m) = sum / double(cfg.repeats);
            }
    return table;
}

inline ScoreTable evaluate_network(const NamedGraph& network, const ExperimentConfig& cfg) {
    return evaluate_corpus({network}, cfg);
}

// Pairwise metric correlation matrix, unit diagonal, entries possibly missing.
struct CorrelationMatrix {
    std::vector<std::string> metric_names;
    Coefficient coefficient = Coefficient::Spearman;
    Aggregation aggregation = Aggregation::PerNetworkAverage;
    std::vector<std::optional<double>> values;  // m x m, row-major
    std::vector<std::size_t> counts;            // defined samples behind each entry

    std::size_t size() const { return metric_names.size(); }
    std::optional<double> at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
    std::size_t count_at(std::size_t i, std::size_t j) const { return counts[i * size() + j]; }
};

namespace detail {

// Per (network, metric): the algorithm rank vector, defined only when every
// algorithm has a mean value for that metric on that network.
inline std::vector<std::vector<std::optional<std::vector<double>>>> rank_vectors(
    const ScoreTable& table) {
    std::vector<std::vector<std::optional<std::vector<double>>>> ranks(
        table.networks(), std::vector<std::optional<std::vector<double>>>(table.metrics()));
    for (std::size_t n = 0; n < table.networks(); ++n) {
        for (std::size_t m = 0; m < table.metrics(); ++m) {
            std::vector<double> scores(table.algorithms());
            bool complete = true;
            for (std::size_t a = 0; a < table.algorithms() && complete; ++a) {
                const auto& cell = table.mean_cell(n, a, m);
                if (cell)
                    scores[a] = *cell;
                else
                    complete = false;
            }
            if (complete && scores.size() >= 2) ranks[n][m] = ranks_from_scores(scores);
        }
    }
    return ranks;
}

inline CorrelationMatrix correlations_from_ranks(
    const std::vector<std::vector<std::optional<std::vector<double>>>>& ranks,
    const std::vector<std::size_t>& network_subset, const std::vector<std::string>& metric_names,
    std::size_t algorithm_count, Coefficient coefficient, Aggregation aggregation) {
    const std::size_t m_count = metric_names.size();
    CorrelationMatrix matrix;
    matrix.metric_names = metric_names;
    matrix.coefficient = coefficient;
    matrix.aggregation = aggregation;
    matrix.values.assign(m_count * m_count, std::nullopt);
    matrix.counts.assign(m_count * m_count, 0);

    for (std::size_t i = 0; i < m_count; ++i) {
        matrix.values[i * m_count + i] = 1.0;
        matrix.counts[i * m_count + i] = network_subset.size();
    }

    for (std::size_t i = 0; i < m_count; ++i) {
        for (std::size_t j = i + 1; j < m_count; ++j) {
            std::optional<double> entry;
            std::size_t count = 0;
            if (aggregation == Aggregation::PerNetworkAverage) {
                double sum = 0.0;
                for (std::size_t n : network_subset) {
                    if (!ranks[n][i] || !ranks[n][j]) continue;
                    if (auto r = correlate(*ranks[n][i], *ranks[n][j], coefficient)) {
                        sum += *r;
                        ++count;
                    }
                }
                if (count > 0) entry = sum / double(count);
            } else {
                // mean ranks per metric over the networks where both metrics
                // of the pair are defined, then one correlation
                std::vector<double> mean_i(algorithm_count, 0.0), mean_j(algorithm_count, 0.0);
                for (std::size_t n : network_subset) {
                    if (!ranks[n][i] || !ranks[n][j]) continue;
                    for (std::size_t a = 0; a < algorithm_count; ++a) {
                        mean_i[a] += (*ranks[n][i])[a];
                        mean_j[a] += (*ranks[n][j])[a];
                    }
                    ++count;
                }
                if (count > 0)
                    entry = correlate(ranks_from_scores(mean_i, /*higher_is_better=*/false),
                                      ranks_from_scores(mean_j, false), coefficient);
            }
            matrix.values[i * m_count + j] = entry;
            matrix.values[j * m_count + i] = entry;
            matrix.counts[i * m_count + j] = count;
            matrix.counts[j * m_count + i] = count;
        }
    }
    return matrix;
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
}

}  // namespace detail

// Correlation matrix over the whole corpus under cfg.aggregation (method 1 =
// per-network average, method 2 = mean ranks).
inline CorrelationMatrix metric_correlations(const ScoreTable& table,
                                             const ExperimentConfig& cfg) {
    if (table.algorithms() < 3)
        throw domain_error("metric correlations need at least 3 algorithms");
    auto ranks = detail::rank_vectors(table);
    return detail::correlations_from_ranks(ranks, detail::all_indices(table.networks()),
                                           table.metric_names, table.algorithms(),
                                           cfg.coefficient, cfg.aggregation);
}

struct QSweepRow {
    std::size_t metric_a = 0, metric_b = 0;
    std::size_t q = 0;
    std::size_t run = 0;
    std::optional<double> value;
};

struct QSweepSummary {
    std::size_t metric_a = 0, metric_b = 0;
    std::size_t q = 0;
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t defined_runs = 0;
};

struct QSweepResult {
    std::vector<std::string> metric_names;
    std::vector<QSweepRow> rows;
    std::vector<QSweepSummary> summary;
};

// For each Q and each run, sample Q networks without replacement and compute
// the pairwise correlation matrix on the sample.
inline QSweepResult q_convergence_sweep(const ScoreTable& table, const ExperimentConfig& cfg,
                                        const std::vector<std::size_t>& q_values,
                                        std::size_t runs) {
    if (runs < 1) throw domain_error("q sweep needs runs >= 1");
    for (std::size_t q : q_values)
        if (q < 1 || q > table.networks())
            throw domain_error("Q value " + std::to_string(q) + " exceeds corpus size");

    auto ranks = detail::rank_vectors(table);
    QSweepResult result;
    result.metric_names = table.metric_names;
    const std::size_t m_count = table.metrics();

    for (std::size_t q : q_values) {
        std::vector<std::vector<double>> defined(m_count * m_count);
        for (std::size_t run = 0; run < runs; ++run) {
            Rng rng(mix_seed(mix_seed(mix_seed(cfg.master_seed, 0x9577EEbULL), q), run));
            auto subset = sample_indices(table.networks(), q, rng);
            std::sort(subset.begin(), subset.end());
            auto matrix = detail::correlations_from_ranks(ranks, subset, table.metric_names,
                                                          table.algorithms(), cfg.coefficient,
                                                          cfg.aggregation);
            for (std::size_t i = 0; i < m_count; ++i) {
                for (std::size_t j = i + 1; j < m_count; ++j) {
                    auto v = matrix.at(i, j);
                    result.rows.push_back({i, j, q, run, v});
                    if (v) defined[i * m_count + j].push_back(*v);
                }
            }
        }
        for (std::size_t i = 0; i < m_count; ++i) {
            for (std::size_t j = i + 1; j < m_count; ++j) {
                const auto& vals = defined[i * m_count + j];
                QSweepSummary s;
                s.metric_a = i;
                s.metric_b = j;
                s.q = q;
                s.defined_runs = vals.size();
                if (!vals.empty()) {
                    double sum = 0.0;
                    for (double v : vals) sum += v;
                    s.mean = sum / double(vals.size());
                    double ss = 0.0;
                    for (double v : vals) ss += (v - s.mean) * (v - s.mean);
                    s.stddev = vals.size() > 1 ? std::sqrt(ss / double(vals.size() - 1)) : 0.0;
                }
                result.summary.push_back(s);
            }
        }
    }
    return result;
}

struct ThresholdSweepRow {
    char axis = 'r';  // 'r' = rho (fraction of candidates), 'g' = gamma (multiple of |E^P|)
    double param = 0.0;
    std::string threshold_metric;  // e.g. "Precision@rho=0.1"
    std::string free_metric;
    std::optional<double> value;
    std::size_t networks = 0;
};

// Correlation of Precision@k with each threshold-free metric as the threshold
// moves. One corpus evaluation with the union of all thresholds.
inline std::vector<ThresholdSweepRow> threshold_sweep(const Corpus& corpus,
                                                      const ExperimentConfig& cfg,
                                                      const std::vector<double>& rho_values,
                                                      const std::vector<double>& gamma_values) {
    ExperimentConfig extended = cfg;
    extended.metrics.clear();
    std::vector<std::pair<char, double>> axes;
    for (double rho : rho_values) {
        extended.metrics.push_back(
            {MetricKind::Precision, {ThresholdRule::Type::RhoFraction, rho}});
        axes.emplace_back('r', rho);
    }
    for (double gamma : gamma_values) {
        extended.metrics.push_back(
            {MetricKind::Precision, {ThresholdRule::Type::GammaMultiple, gamma}});
        axes.emplace_back('g', gamma);
    }
    const std::size_t threshold_count = extended.metrics.size();
    const std::vector<MetricKind> free_kinds = {MetricKind::AUC, MetricKind::AUPR,
                                                MetricKind::AUCPrecision, MetricKind::NDCG,
                                                MetricKind::AUCmROC};
    for (MetricKind m : free_kinds) extended.metrics.push_back({m, {}});

    ScoreTable table = evaluate_corpus(corpus, extended);
    CorrelationMatrix matrix = metric_correlations(table, extended);

    std::vector<ThresholdSweepRow> rows;
    for (std::size_t t = 0; t < threshold_count; ++t) {
        for (std::size_t f = 0; f < free_kinds.size(); ++f) {
            std::size_t fi = threshold_count + f;
            ThresholdSweepRow row;
            row.axis = axes[t].first;
            row.param = axes[t].second;
            row.threshold_metric = table.metric_names[t];
            row.free_metric = table.metric_names[fi];
            row.value = matrix.at(t, fi);
            row.networks = matrix.count_at(t, fi);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace linkpred
