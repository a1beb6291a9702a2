#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "linkpred/errors.hpp"
#include "linkpred/pipeline.hpp"
#include "linkpred/version.hpp"

namespace linkpred {

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string format_optional(const std::optional<double>& v) {
    return v ? format_value(*v) : std::string();
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::ofstream open_csv(const std::string& path, const std::string& kind,
                              const std::string& manifest_id) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << "# linkpred-csv v1 kind=" << kind;
    if (!manifest_id.empty()) out << " manifest=" << manifest_id;
    out << '\n';
    return out;
}

}  // namespace detail

// -------- score tables --------

// Metric columns carry the threshold rule separately: "Precision@rho=0.1"
// splits into metric "Precision" and kspec "rho=0.1" (kspec empty for
// threshold-free metrics).
inline std::pair<std::string, std::string> split_metric_column(const std::string& column) {
    auto at = column.find('@');
    if (at == std::string::npos) return {column, ""};
    return {column.substr(0, at), column.substr(at + 1)};
}

inline std::string join_metric_column(const std::string& metric, const std::string& kspec) {
    return kspec.empty() ? metric : metric + "@" + kspec;
}

inline void write_scores_raw_csv(const std::string& path, const ScoreTable& table,
                                 const std::string& manifest_id = {}) {
    auto out = detail::open_csv(path, "scores_raw", manifest_id);
    out << "network,algorithm,metric,kspec,run,value\n";
    for (std::size_t n = 0; n < table.networks(); ++n)
        for (std::size_t a = 0; a < table.algorithms(); ++a)
            for (std::size_t m = 0; m < table.metrics(); ++m) {
                auto [metric, kspec] = split_metric_column(table.metric_names[m]);
                for (std::size_t r = 0; r < table.repeats; ++r)
                    out << detail::csv_field(table.network_names[n]) << ','
                        << table.algorithm_names[a] << ',' << metric << ',' << kspec << ',' << r
                        << ',' << format_optional(table.raw_cell(n, a, m, r)) << '\n';
            }
    if (!out) throw io_error("write failure on: " + path);
}

inline void write_scores_mean_csv(const std::string& path, const ScoreTable& table,
                                  const std::string& manifest_id = {}) {
    auto out = detail::open_csv(path, "scores_mean", manifest_id);
    out << "network,algorithm,metric,kspec,value\n";
    for (std::size_t n = 0; n < table.networks(); ++n)
        for (std::size_t a = 0; a < table.algorithms(); ++a)
            for (std::size_t m = 0; m < table.metrics(); ++m) {
                auto [metric, kspec] = split_metric_column(table.metric_names[m]);
                out << detail::csv_field(table.network_names[n]) << ','
                    << table.algorithm_names[a] << ',' << metric << ',' << kspec << ','
                    << format_optional(table.mean_cell(n, a, m)) << '\n';
            }
    if (!out) throw io_error("write failure on: " + path);
}

namespace detail {

inline std::vector<std::string> parse_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace detail

// Rebuild an averaged score table from scores_mean.csv. Every network must
// carry the same (algorithm, metric) grid; a mismatch is an input error, not
// something to paper over.
inline ScoreTable read_scores_mean_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open score table: " + path);

    struct Row {
        std::string network, algorithm, metric;
        std::optional<double> value;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::parse_csv_line(line);
        if (!header_seen) {
            if (fields !=
                std::vector<std::string>{"network", "algorithm", "metric", "kspec", "value"})
                throw parse_error("unexpected scores_mean header", line_no);
            header_seen = true;
            continue;
        }
        if (fields.size() != 5) throw parse_error("expected 5 fields", line_no);
        Row row{fields[0], fields[1], join_metric_column(fields[2], fields[3]), std::nullopt};
        if (!fields[4].empty()) row.value = std::stod(fields[4]);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("empty score table", line_no);

    ScoreTable table;
    std::map<std::string, std::size_t> net_ids, alg_ids, met_ids;
    auto intern = [](std::map<std::string, std::size_t>& ids, std::vector<std::string>& names,
                     const std::string& name) {
        auto [it, inserted] = ids.emplace(name, names.size());
        if (inserted) names.push_back(name);
        return it->second;
    };
    for (const Row& row : rows) {
        intern(net_ids, table.network_names, row.network);
        intern(alg_ids, table.algorithm_names, row.algorithm);
        intern(met_ids, table.metric_names, row.metric);
    }
    table.repeats = 1;
    table.raw.assign(table.networks() * table.algorithms() * table.metrics(), std::nullopt);
    table.mean.assign(table.networks() * table.algorithms() * table.metrics(), std::nullopt);
    table.notes.assign(table.networks(), "");

    std::vector<std::set<std::pair<std::string, std::string>>> seen(table.networks());
    for (const Row& row : rows) {
        std::size_t n = net_ids[row.network], a = alg_ids[row.algorithm], m = met_ids[row.metric];
        table.mean_cell(n, a, m) = row.value;
        table.raw_cell(n, a, m, 0) = row.value;
        seen[n].insert({row.algorithm, row.metric});
    }
    for (std::size_t n = 1; n < table.networks(); ++n)
        if (seen[n] != seen[0])
            throw domain_error("incompatible score tables: network '" + table.network_names[n] +
                               "' has a different algorithm/metric grid than '" +
                               table.network_names[0] + "'");
    return table;
}

// -------- correlation outputs --------

inline void write_correlation_matrix_csv(const std::string& path, const CorrelationMatrix& m,
                                         const std::string& manifest_id = {}) {
    auto out = detail::open_csv(path, "correlation_matrix", manifest_id);
    out << "metric";
    for (const auto& name : m.metric_names) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.metric_names[i];
        for (std::size_t j = 0; j < m.size(); ++j) out << ',' << format_optional(m.at(i, j));
        out << '\n';
    }
    if (!out) throw io_error("write failure on: " + path);
}

inline void write_correlation_matrix_json(const std::string& path, const CorrelationMatrix& m,
                                          const std::string& manifest_id = {}) {
    nlohmann::json j;
    j["schema"] = "linkpred-correlation-matrix v1";
    if (!manifest_id.empty()) j["manifest"] = manifest_id;
    j["coefficient"] = coefficient_name(m.coefficient);
    j["method"] = m.aggregation == Aggregation::PerNetworkAverage ? 1 : 2;
    j["metrics"] = m.metric_names;
    auto values = nlohmann::json::array();
    auto counts = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto vrow = nlohmann::json::array();
        auto crow = nlohmann::json::array();
        for (std::size_t j2 = 0; j2 < m.size(); ++j2) {
            auto v = m.at(i, j2);
            if (v)
                vrow.push_back(*v);
            else
                vrow.push_back(nullptr);
            crow.push_back(m.count_at(i, j2));
        }
        values.push_back(vrow);
        counts.push_back(crow);
    }
    j["values"] = values;
    j["defined_networks"] = counts;
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw io_error("write failure on: " + path);
}

// Metric pairs ranked by correlation strength, strongest first; undefined
// entries sort last.
inline void write_correlation_pairs_csv(const std::string& path, const CorrelationMatrix& m,
                                        const std::string& manifest_id = {}) {
    struct Pair {
        std::size_t i, j;
        std::optional<double> value;
        std::size_t count;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            pairs.push_back({i, j, m.at(i, j), m.count_at(i, j)});
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.value.has_value() != b.value.has_value()) return a.value.has_value();
        if (a.value && b.value && *a.value != *b.value) return *a.value > *b.value;
        return false;
    });

    auto out = detail::open_csv(path, "correlation_pairs", manifest_id);
    out << "rank,metric_a,metric_b,value,defined_networks\n";
    for (std::size_t r = 0; r < pairs.size(); ++r)
        out << (r + 1) << ',' << m.metric_names[pairs[r].i] << ',' << m.metric_names[pairs[r].j]
            << ',' << format_optional(pairs[r].value) << ',' << pairs[r].count << '\n';
    if (!out) throw io_error("write failure on: " + path);
}

// Complete correlation graph: metrics are nodes, correlations are weights.
inline void write_correlation_graph_csv(const std::string& path, const CorrelationMatrix& m,
                                        const std::string& manifest_id = {}) {
    auto out = detail::open_csv(path, "correlation_graph", manifest_id);
    out << "metric_a,metric_b,weight\n";
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            out << m.metric_names[i] << ',' << m.metric_names[j] << ','
                << format_optional(m.at(i, j)) << '\n';
    if (!out) throw io_error("write failure on: " + path);
}

// -------- sweeps and toy traces --------

inline void write_q_sweep_csv(const std::string& path, const QSweepResult& result,
                              const std::string& manifest_id = {}) {
    auto out = detail::open_csv(path, "sweep_q", manifest_id);
    out << "metric_a,metric_b,q,run,value\n";
    for (const auto& row : result.rows)
        out << result.metric_names[row.metric_a] << ',' << result.metric_names[row.metric_b]
            << ',' << row.q << ',' << row.run << ',' << format_optional(row.value) << '\n';
    if (!out) throw io_error("write failure on: " + path);
}

inline void write_q_sweep_summary_csv(const std::string& path, const QSweepResult& result,
                                      const std::string& manifest_id = {}) {
    auto out = detail::open_csv(path, "sweep_q_summary", manifest_id);
    out << "metric_a,metric_b,q,mean,stddev,defined_runs\n";
    for (const auto& s : result.summary)
        out << result.metric_names[s.metric_a] << ',' << result.metric_names[s.metric_b] << ','
            << s.q << ',' << (s.defined_runs ? format_value(s.mean) : std::string()) << ','
            << (s.defined_runs ? format_value(s.stddev) : std::string()) << ',' << s.defined_runs
            << '\n';
    if (!out) throw io_error("write failure on: " + path);
}

inline void write_threshold_sweep_csv(const std::string& path,
                                      const std::vector<ThresholdSweepRow>& rows,
                                      const std::string& manifest_id = {}) {
    auto out = detail::open_csv(path, "sweep_threshold", manifest_id);
    out << "axis,param,threshold_metric,free_metric,value,defined_networks\n";
    for (const auto& row : rows)
        out << (row.axis == 'r' ? "rho" : "gamma") << ',' << format_value(row.param) << ','
            << row.threshold_metric << ',' << row.free_metric << ','
            << format_optional(row.value) << ',' << row.networks << '\n';
    if (!out) throw io_error("write failure on: " + path);
}

struct ToyTraceRow {
    int method = 1;
    Coefficient coefficient = Coefficient::Spearman;
    std::uint64_t seed = 0;
    std::size_t q = 0;
    std::optional<double> value;
};

inline void write_toy_trace_csv(const std::string& path, const std::vector<ToyTraceRow>& rows,
                                const std::string& manifest_id = {}) {
    auto out = detail::open_csv(path, "toy_trace", manifest_id);
    out << "method,coefficient,seed,q,value\n";
    for (const auto& row : rows)
        out << row.method << ',' << coefficient_name(row.coefficient) << ',' << row.seed << ','
            << row.q << ',' << format_optional(row.value) << '\n';
    if (!out) throw io_error("write failure on: " + path);
}

// -------- configuration --------

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["probe_fraction"] = cfg.probe_fraction;
    j["repeats"] = cfg.repeats;
    j["master_seed"] = cfg.master_seed;
    j["coefficient"] = coefficient_name(cfg.coefficient);
    j["method"] = cfg.aggregation == Aggregation::PerNetworkAverage ? 1 : 2;
    j["jobs"] = cfg.jobs;
    j["q_values"] = cfg.q_values;
    j["q_runs"] = cfg.q_runs;
    j["rho_values"] = cfg.rho_values;
    j["gamma_values"] = cfg.gamma_values;

    auto algs = nlohmann::json::array();
    for (const auto& run : cfg.algorithms) algs.push_back(algorithm_name(run.id));
    j["algorithms"] = algs;

    auto params = nlohmann::json::object();
    for (const auto& run : cfg.algorithms) {
        AlgorithmParams defaults;
        nlohmann::json p = nlohmann::json::object();
        switch (run.id) {
            case Algorithm::LP: p["epsilon"] = run.params.lp_epsilon; break;
            case Algorithm::Katz:
                if (run.params.katz_beta != defaults.katz_beta) p["beta"] = run.params.katz_beta;
                break;
            case Algorithm::LRW:
            case Algorithm::SRW: p["t"] = run.params.walk_steps; break;
            case Algorithm::LO: p["alpha"] = run.params.lo_alpha; break;
            case Algorithm::CCPA: p["alpha"] = run.params.ccpa_alpha; break;
            default: break;
        }
        if (!p.empty()) params[algorithm_name(run.id)] = p;
    }
    j["algorithm_params"] = params;

    auto metrics = nlohmann::json::array();
    for (const auto& m : cfg.metrics) metrics.push_back(metric_name(m.kind));
    j["metrics"] = metrics;
    if (!cfg.metrics.empty()) {
        for (const auto& m : cfg.metrics)
            if (is_threshold_dependent(m.kind)) {
                const char* rule = m.threshold.type == ThresholdRule::Type::RhoFraction ? "rho"
                                   : m.threshold.type == ThresholdRule::Type::GammaMultiple
                                       ? "gamma"
                                       : "k";
                j["threshold"] = {{"rule", rule}, {"value", m.threshold.value}};
                break;
            }
    }
    return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {
        "probe_fraction", "repeats",    "master_seed",  "coefficient", "method",
        "jobs",           "q_values",   "q_runs",       "rho_values",  "gamma_values",
        "algorithms",     "algorithm_params", "metrics", "threshold"};
    std::string bad;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) bad += (bad.empty() ? "" : ", ") + it.key();
    if (!bad.empty()) throw domain_error("unknown config fields: " + bad);

    ExperimentConfig cfg;
    if (j.contains("probe_fraction")) cfg.probe_fraction = j["probe_fraction"].get<double>();
    if (j.contains("repeats")) cfg.repeats = j["repeats"].get<std::size_t>();
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<std::size_t>();
    if (j.contains("q_values")) cfg.q_values = j["q_values"].get<std::vector<std::size_t>>();
    if (j.contains("q_runs")) cfg.q_runs = j["q_runs"].get<std::size_t>();
    if (j.contains("rho_values")) cfg.rho_values = j["rho_values"].get<std::vector<double>>();
    if (j.contains("gamma_values"))
        cfg.gamma_values = j["gamma_values"].get<std::vector<double>>();

    if (j.contains("coefficient")) {
        std::string c = j["coefficient"].get<std::string>();
        if (c == "spearman")
            cfg.coefficient = Coefficient::Spearman;
        else if (c == "kendall")
            cfg.coefficient = Coefficient::Kendall;
        else
            throw domain_error("coefficient must be 'spearman' or 'kendall', got '" + c + "'");
    }
    if (j.contains("method")) {
        int m = j["method"].get<int>();
        if (m != 1 && m != 2) throw domain_error("method must be 1 or 2");
        cfg.aggregation = m == 1 ? Aggregation::PerNetworkAverage : Aggregation::MeanRank;
    }

    if (j.contains("algorithms")) {
        cfg.algorithms.clear();
        if (j["algorithms"].is_string() && j["algorithms"] == "all") {
            cfg.algorithms = default_algorithms();
        } else {
            for (const auto& name : j["algorithms"])
                cfg.algorithms.push_back({parse_algorithm(name.get<std::string>()), {}});
        }
    }
    if (j.contains("algorithm_params")) {
        for (auto it = j["algorithm_params"].begin(); it != j["algorithm_params"].end(); ++it) {
            Algorithm alg = parse_algorithm(it.key());
            bool any = false;
            for (auto& run : cfg.algorithms) {
                if (run.id != alg) continue;
                for (auto p = it.value().begin(); p != it.value().end(); ++p)
                    set_param(run.params, alg, p.key(), p.value().get<double>());
                any = true;
            }
            if (!any)
                throw domain_error("algorithm_params for '" + it.key() +
                                   "' but it is not in the algorithm list");
        }
    }

    ThresholdRule rule;  // rho = 0.1 default
    if (j.contains("threshold")) {
        const auto& t = j["threshold"];
        std::string kind = t.at("rule").get<std::string>();
        if (kind == "rho")
            rule.type = ThresholdRule::Type::RhoFraction;
        else if (kind == "gamma")
            rule.type = ThresholdRule::Type::GammaMultiple;
        else if (kind == "k")
            rule.type = ThresholdRule::Type::Absolute;
        else
            throw domain_error("threshold rule must be rho, gamma or k");
        rule.value = t.at("value").get<double>();
    }
    if (j.contains("metrics")) {
        cfg.metrics.clear();
        for (const auto& name : j["metrics"]) {
            MetricSpec spec;
            spec.kind = parse_metric(name.get<std::string>());
            spec.threshold = rule;
            cfg.metrics.push_back(spec);
        }
    } else if (j.contains("threshold")) {
        for (auto& m : cfg.metrics)
            if (is_threshold_dependent(m.kind)) m.threshold = rule;
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("config is not valid JSON: ") + e.what(), 0);
    }
    return config_from_json(j);
}

// -------- corpus --------

struct CorpusEntry {
    std::string path;
    std::string name;
};

// One edge-list path per line, optional second token naming the network;
// defaults to the file stem.
inline std::vector<CorpusEntry> load_corpus_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open corpus manifest: " + path);
    std::vector<CorpusEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        CorpusEntry entry;
        ss >> entry.path >> entry.name;
        if (entry.name.empty()) {
            auto slash = entry.path.find_last_of('/');
            entry.name = slash == std::string::npos ? entry.path : entry.path.substr(slash + 1);
            auto dot = entry.name.find_last_of('.');
            if (dot != std::string::npos && dot > 0) entry.name = entry.name.substr(0, dot);
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

inline Corpus load_corpus(const std::vector<CorpusEntry>& entries) {
    Corpus corpus;
    for (const auto& entry : entries) corpus.push_back({entry.name, load_edge_list(entry.path)});
    return corpus;
}

// -------- run manifest --------

inline std::string compute_manifest_id(const nlohmann::json& config, const Corpus& corpus) {
    // same experiment, same id: the worker count affects scheduling only
    nlohmann::json identity = config;
    identity.erase("jobs");
    std::string blob = identity.dump();
    for (const auto& net : corpus) {
        blob += '|' + net.name + ':' + std::to_string(net.graph.node_count()) + ':' +
                std::to_string(net.graph.edge_count());
    }
    std::uint64_t h = detail::hash_name(blob);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline void write_manifest(const std::string& path, const std::string& manifest_id,
                           const nlohmann::json& config, const Corpus& corpus,
                           const std::vector<std::string>& corpus_paths,
                           const std::vector<std::string>& outputs,
                           const std::string& timestamp) {
    nlohmann::json j;
    j["schema"] = "linkpred-manifest v1";
    j["manifest_id"] = manifest_id;
    j["tool"] = std::string("linkpred ") + kVersion;
    j["created"] = timestamp;
    j["config"] = config;
    auto nets = nlohmann::json::array();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        nlohmann::json n;
        n["name"] = corpus[i].name;
        if (i < corpus_paths.size()) n["path"] = corpus_paths[i];
        n["nodes"] = corpus[i].graph.node_count();
        n["edges"] = corpus[i].graph.edge_count();
        n["components"] = corpus[i].graph.component_count();
        nets.push_back(n);
    }
    j["corpus"] = nets;
    j["outputs"] = outputs;
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw io_error("write failure on: " + path);
}

// Scores of one algorithm on one split, one row per candidate pair.
inline void write_candidate_scores_csv(const std::string& path, const Graph& g,
                                       const RankedCandidates& ranked,
                                       const std::string& manifest_id = {}) {
    auto out = detail::open_csv(path, "candidate_scores", manifest_id);
    out << "source,target,score,is_positive\n";
    for (const auto& e : ranked.entries)
        out << detail::csv_field(g.label(e.pair.u)) << ',' << detail::csv_field(g.label(e.pair.v))
            << ',' << format_value(e.score) << ',' << (e.is_positive ? 1 : 0) << '\n';
    if (!out) throw io_error("write failure on: " + path);
}

}  // namespace linkpred
