#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "linkpred/errors.hpp"
#include "linkpred/graph.hpp"

namespace linkpred {

enum class LocalRule {
    CN,
    RA,
    AA,
    PA,
    Jaccard,
    Salton,
    S1,
    Sorensen,
    HPI,
    HDI,
    LHN1,
    Sim,
    CCPA,
    LNBAA,
    LNBRA,
};

struct LocalParams {
    double ccpa_alpha = 0.8;
};

namespace detail {

// Per-node quantities for the local naive Bayes indices: the role ratio
// R_z = (N_closed + 1)/(N_open + 1) over the triads centered at z, and the
// constant prior term log s with s = (|U| - |E^T|)/|E^T|.
struct LnbData {
    std::vector<double> log_role;
    double log_prior = 0.0;
};

inline LnbData lnb_data(const Graph& g) {
    LnbData data;
    const std::size_t n = g.node_count();
    data.log_role.resize(n);

    for (std::size_t z = 0; z < n; ++z) {
        const auto& nbrs = g.neighbors(NodeId(z));
        std::size_t closed2 = 0;  // twice the closed-triad count
        for (NodeId a : nbrs) {
            // |Γ(a) ∩ Γ(z)| by sorted merge
            const auto& na = g.neighbors(a);
            std::size_t i = 0, j = 0;
            while (i < na.size() && j < nbrs.size()) {
                if (na[i] < nbrs[j])
                    ++i;
                else if (na[i] > nbrs[j])
                    ++j;
                else {
                    ++closed2;
                    ++i;
                    ++j;
                }
            }
        }
        std::size_t k = nbrs.size();
        std::size_t closed = closed2 / 2;
        std::size_t open = k * (k - 1) / 2 - closed;
        data.log_role[z] = std::log(double(closed + 1) / double(open + 1));
    }

    double pairs = double(g.pair_count());
    double m = double(g.edge_count());
    data.log_prior = m > 0.0 ? std::log((pairs - m) / m) : 0.0;
    return data;
}

inline std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source) {
    std::vector<std::int32_t> dist(g.node_count(), -1);
    std::deque<NodeId> queue;
    dist[std::size_t(source)] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
        NodeId x = queue.front();
        queue.pop_front();
        for (NodeId y : g.neighbors(x))
            if (dist[std::size_t(y)] < 0) {
                dist[std::size_t(y)] = dist[std::size_t(x)] + 1;
                queue.push_back(y);
            }
    }
    return dist;
}

}  // namespace detail

// Scores for the 1- and 2-hop neighborhood indices. Degree-normalized rules
// define division by zero (isolated endpoint) as score 0.
inline std::vector<double> local_scores(const Graph& g_train, const std::vector<Edge>& pairs,
                                        LocalRule rule, const LocalParams& params = {}) {
    const std::size_t n = g_train.node_count();
    std::vector<double> scores(pairs.size(), 0.0);

    detail::LnbData lnb;
    if (rule == LocalRule::LNBAA || rule == LocalRule::LNBRA) lnb = detail::lnb_data(g_train);
    if (rule == LocalRule::CCPA && !(params.ccpa_alpha >= 0.0 && params.ccpa_alpha <= 1.0))
        throw domain_error("CCPA alpha must lie in [0,1]");

    std::vector<char> is_nbr(n, 0);
    std::vector<std::int32_t> dist;
    NodeId marked = -1;

    std::vector<NodeId> common;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        NodeId x = pairs[idx].u, y = pairs[idx].v;
        if (x != marked) {
            if (marked >= 0)
                for (NodeId z : g_train.neighbors(marked)) is_nbr[std::size_t(z)] = 0;
            for (NodeId z : g_train.neighbors(x)) is_nbr[std::size_t(z)] = 1;
            if (rule == LocalRule::CCPA) dist = detail::bfs_distances(g_train, x);
            marked = x;
        }

        common.clear();
        for (NodeId z : g_train.neighbors(y))
            if (is_nbr[std::size_t(z)]) common.push_back(z);

        const double cn = double(common.size());
        const double kx = double(g_train.degree(x));
        const double ky = double(g_train.degree(y));
        double s = 0.0;
        switch (rule) {
            case LocalRule::CN:
                s = cn;
                break;
            case LocalRule::RA:
                for (NodeId z : common) s += 1.0 / double(g_train.degree(z));
                break;
            case LocalRule::AA:
                for (NodeId z : common) s += 1.0 / std::log(double(g_train.degree(z)));
                break;
            case LocalRule::PA:
                s = kx * ky;
                break;
            case LocalRule::Jaccard:
                s = kx + ky - cn > 0.0 ? cn / (kx + ky - cn) : 0.0;
                break;
            case LocalRule::Salton:
            case LocalRule::S1:
                // Table-style duplicate: the Salton index and the "Salton
                // cosine similarity" share the same formula and reference.
                s = kx * ky > 0.0 ? cn / std::sqrt(kx * ky) : 0.0;
                break;
            case LocalRule::Sorensen:
                s = kx + ky > 0.0 ? 2.0 * cn / (kx + ky) : 0.0;
                break;
            case LocalRule::HPI:
                s = std::min(kx, ky) > 0.0 ? cn / std::min(kx, ky) : 0.0;
                break;
            case LocalRule::HDI:
                s = std::max(kx, ky) > 0.0 ? cn / std::max(kx, ky) : 0.0;
                break;
            case LocalRule::LHN1:
                s = kx * ky > 0.0 ? cn / (kx * ky) : 0.0;
                break;
            case LocalRule::Sim:
                // cosine over closed neighborhoods Γ(x) ∪ {x}; for a
                // non-adjacent pair the intersection is the common-neighbor
                // set, so this is a degree-smoothed Salton index
                s = cn / std::sqrt((kx + 1.0) * (ky + 1.0));
                break;
            case LocalRule::CCPA: {
                double d = double(dist[std::size_t(y)]);
                double closeness = dist[std::size_t(y)] > 0 ? double(n) / d : 0.0;
                s = params.ccpa_alpha * cn + (1.0 - params.ccpa_alpha) * closeness;
                break;
            }
            case LocalRule::LNBAA:
                for (NodeId z : common)
                    s += (lnb.log_prior + lnb.log_role[std::size_t(z)]) /
                         std::log(double(g_train.degree(z)));
                break;
            case LocalRule::LNBRA:
                for (NodeId z : common)
                    s += (lnb.log_prior + lnb.log_role[std::size_t(z)]) /
                         double(g_train.degree(z));
                break;
        }
        scores[idx] = s;
    }
    return scores;
}

}  // namespace linkpred
