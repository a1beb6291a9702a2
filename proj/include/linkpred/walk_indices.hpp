#pragma once

#include <vector>

#include <Eigen/Dense>

#include "linkpred/errors.hpp"
#include "linkpred/graph.hpp"

namespace linkpred {

enum class WalkRule { LRW, SRW };

struct WalkParams {
    int steps = 3;  // t
};

// Local random walk scores:
//   LRW_t(x,y) = q_x pi_xy(t) + q_y pi_yx(t),  q_x = k_x / (2|E^T|)
// where pi(t) is the t-step transition probability. SRW superposes the LRW
// terms for tau = 1..t. Isolated endpoints score 0 (their walk never starts).
inline std::vector<double> walk_scores(const Graph& g_train, const std::vector<Edge>& pairs,
                                       WalkRule rule, const WalkParams& params = {}) {
    if (params.steps < 1) throw domain_error("walk step count must be >= 1");
    std::vector<double> scores(pairs.size(), 0.0);
    if (g_train.edge_count() == 0) return scores;

    const Eigen::Index n = Eigen::Index(g_train.node_count());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : g_train.edges()) {
        p(e.u, e.v) = 1.0;
        p(e.v, e.u) = 1.0;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        double k = p.row(i).sum();
        if (k > 0.0) p.row(i) /= k;
    }

    std::vector<double> q(static_cast<std::size_t>(n), 0.0);
    const double two_m = 2.0 * double(g_train.edge_count());
    for (Eigen::Index i = 0; i < n; ++i)
        q[std::size_t(i)] = double(g_train.degree(NodeId(i))) / two_m;

    Eigen::MatrixXd power = p;
    for (int tau = 1; tau <= params.steps; ++tau) {
        if (tau > 1) power = Eigen::MatrixXd(power * p);
        if (rule == WalkRule::SRW || tau == params.steps) {
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                NodeId x = pairs[i].u, y = pairs[i].v;
                scores[i] += q[std::size_t(x)] * power(x, y) + q[std::size_t(y)] * power(y, x);
            }
        }
    }
    return scores;
}

}  // namespace linkpred
