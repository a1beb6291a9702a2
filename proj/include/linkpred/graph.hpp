#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linkpred/errors.hpp"
#include "linkpred/rng.hpp"

namespace linkpred {

using NodeId = std::int32_t;

// Unordered node pair, normalized so u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    Edge() = default;
    Edge(NodeId a, NodeId b) : u(std::min(a, b)), v(std::max(a, b)) {}

    friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
};

// Undirected simple graph over dense node ids 0..n-1. Immutable once built;
// adjacency lists are sorted. Original input labels are kept for reporting.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(std::size_t node_count, std::vector<Edge> edges,
                            std::vector<std::string> labels = {}) {
        Graph g;
        g.adj_.resize(node_count);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (const Edge& e : edges) {
            if (e.u == e.v) throw domain_error("self-loop in edge set");
            if (e.u < 0 || std::size_t(e.v) >= node_count)
                throw domain_error("edge endpoint out of range");
            g.adj_[e.u].push_back(e.v);
            g.adj_[e.v].push_back(e.u);
        }
        for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
        g.edges_ = std::move(edges);
        if (labels.empty()) {
            g.labels_.reserve(node_count);
            for (std::size_t i = 0; i < node_count; ++i) g.labels_.push_back(std::to_string(i));
        } else {
            if (labels.size() != node_count) throw domain_error("label count mismatch");
            g.labels_ = std::move(labels);
        }
        return g;
    }

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t pair_count() const { return node_count() * (node_count() - 1) / 2; }

    const std::vector<NodeId>& neighbors(NodeId i) const { return adj_[std::size_t(i)]; }
    std::size_t degree(NodeId i) const { return adj_[std::size_t(i)].size(); }

    bool has_edge(NodeId i, NodeId j) const {
        const auto& nbrs = adj_[std::size_t(i)];
        return std::binary_search(nbrs.begin(), nbrs.end(), j);
    }

    // lexicographically sorted
    const std::vector<Edge>& edges() const { return edges_; }

    const std::string& label(NodeId i) const { return labels_[std::size_t(i)]; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::size_t component_count() const {
        std::size_t n = node_count(), count = 0;
        std::vector<char> seen(n, 0);
        std::vector<NodeId> stack;
        for (std::size_t s = 0; s < n; ++s) {
            if (seen[s]) continue;
            ++count;
            seen[s] = 1;
            stack.push_back(NodeId(s));
            while (!stack.empty()) {
                NodeId x = stack.back();
                stack.pop_back();
                for (NodeId y : adj_[std::size_t(x)])
                    if (!seen[y]) {
                        seen[y] = 1;
                        stack.push_back(y);
                    }
            }
        }
        return count;
    }

private:
    std::vector<std::vector<NodeId>> adj_;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
};

struct LoadOptions {
    std::string comment_prefixes = "#%";
};

struct LoadStats {
    std::size_t self_loops_skipped = 0;
    std::size_t duplicate_edges = 0;
    std::size_t comment_lines = 0;
};

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
            if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

}  // namespace detail

// One edge per line: "source target [weight]", whitespace- or comma-separated.
// Weights are discarded. Node labels may be arbitrary strings and are remapped
// to dense ids in first-seen order.
inline Graph load_edge_list(const std::string& path, const LoadOptions& options = {},
                            LoadStats* stats = nullptr) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open edge list: " + path);

    LoadStats local;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    std::vector<Edge> edges;

    auto intern = [&](const std::string& tok) {
        auto [it, inserted] = ids.emplace(tok, NodeId(labels.size()));
        if (inserted) labels.push_back(tok);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (options.comment_prefixes.find(line[first]) != std::string::npos) {
            ++local.comment_lines;
            continue;
        }
        auto tokens = detail::split_tokens(line);
        if (tokens.size() < 2 || tokens.size() > 3)
            throw parse_error("expected 'source target [weight]', got " +
                                  std::to_string(tokens.size()) + " tokens",
                              line_no);
        NodeId a = intern(tokens[0]);
        NodeId b = intern(tokens[1]);
        if (a == b) {
            ++local.self_loops_skipped;
            continue;
        }
        edges.emplace_back(a, b);
    }
    if (in.bad()) throw io_error("read failure on: " + path);

    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    local.duplicate_edges = std::size_t(edges.end() - last);
    edges.erase(last, edges.end());

    if (stats) *stats = local;
    std::size_t n = labels.size();
    return Graph::from_edges(n, std::move(edges), std::move(labels));
}

inline void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    for (const Edge& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
    if (!out) throw io_error("write failure on: " + path);
}

// Partition of E into train and probe sets. Edge vectors are sorted.
struct TrainProbeSplit {
    std::vector<Edge> train_edges;
    std::vector<Edge> probe_edges;
    double probe_fraction = 0.0;
    std::uint64_t seed = 0;
    // diagnostics, recorded but never enforced
    std::size_t train_components = 0;
    std::size_t probe_only_nodes = 0;
};

// round-half-up; the probe size rule is |E^P| = round(probe_fraction * |E|)
inline std::size_t probe_size(std::size_t edge_count, double probe_fraction) {
    return std::size_t(std::floor(probe_fraction * double(edge_count) + 0.5));
}

inline Graph training_graph(const Graph& g, const TrainProbeSplit& split) {
    return Graph::from_edges(g.node_count(), split.train_edges, g.labels());
}

inline TrainProbeSplit split_train_probe(const Graph& g, double probe_fraction,
                                         std::uint64_t seed) {
    if (!(probe_fraction > 0.0 && probe_fraction < 1.0))
        throw domain_error("probe_fraction must lie in (0,1)");
    std::size_t m = probe_size(g.edge_count(), probe_fraction);
    if (m == 0) throw domain_error("degenerate split: probe set would be empty");

    Rng rng(seed);
    auto probe_idx = sample_indices(g.edge_count(), m, rng);
    std::vector<char> is_probe(g.edge_count(), 0);
    for (std::size_t i : probe_idx) is_probe[i] = 1;

    TrainProbeSplit split;
    split.probe_fraction = probe_fraction;
    split.seed = seed;
    split.train_edges.reserve(g.edge_count() - m);
    split.probe_edges.reserve(m);
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        (is_probe[i] ? split.probe_edges : split.train_edges).push_back(g.edges()[i]);

    Graph train = training_graph(g, split);
    split.train_components = train.component_count();
    for (std::size_t v = 0; v < g.node_count(); ++v)
        if (train.degree(NodeId(v)) == 0 && g.degree(NodeId(v)) > 0) ++split.probe_only_nodes;
    return split;
}

// All unordered pairs outside E^T, in lexicographic order; positives are the
// probe edges.
struct CandidateSet {
    std::vector<Edge> pairs;
    std::vector<std::uint8_t> positive;  // parallel to pairs
    std::size_t positive_count = 0;
};

inline CandidateSet candidate_set(const Graph& g, const TrainProbeSplit& split) {
    CandidateSet cand;
    std::size_t n = g.node_count();
    cand.pairs.reserve(g.pair_count() - split.train_edges.size());

    std::size_t next_train = 0;  // train_edges sorted lexicographically
    for (NodeId u = 0; u + 1 < NodeId(n); ++u) {
        for (NodeId v = u + 1; v < NodeId(n); ++v) {
            if (next_train < split.train_edges.size() &&
                split.train_edges[next_train] == Edge(u, v)) {
                ++next_train;
                continue;
            }
            cand.pairs.emplace_back(u, v);
        }
    }

    cand.positive.assign(cand.pairs.size(), 0);
    std::size_t next_probe = 0;  // probe_edges sorted as well
    for (std::size_t i = 0; i < cand.pairs.size() && next_probe < split.probe_edges.size(); ++i) {
        if (cand.pairs[i] == split.probe_edges[next_probe]) {
            cand.positive[i] = 1;
            ++next_probe;
        }
    }
    cand.positive_count = split.probe_edges.size();
    return cand;
}

}  // namespace linkpred
