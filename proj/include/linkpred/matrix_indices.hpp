#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "linkpred/errors.hpp"
#include "linkpred/graph.hpp"

namespace linkpred {

enum class MatrixRule { LP, Katz, L3, A3, ACT, MFI, LO, CLE };

struct MatrixParams {
    double lp_epsilon = 0.001;
    double katz_beta = 0.0;  // 0 means auto: min(0.01, 0.85/lambda_max)
    double lo_alpha = 0.1;
};

inline Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    const auto n = Eigen::Index(g.node_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : g.edges()) {
        a(e.u, e.v) = 1.0;
        a(e.v, e.u) = 1.0;
    }
    return a;
}

namespace detail {

// Power iteration on A + I; the shift breaks the even/odd oscillation on
// bipartite graphs while keeping the eigenvectors of A.
inline Eigen::VectorXd dominant_eigenvector(const Eigen::MatrixXd& a, double* eigenvalue) {
    const Eigen::Index n = a.rows();
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    double lambda = 0.0;
    for (int iter = 0; iter < 500; ++iter) {
        Eigen::VectorXd next = a * x + x;
        double norm = next.norm();
        if (norm == 0.0) break;
        next /= norm;
        double rayleigh = next.dot(a * next);
        if (std::abs(rayleigh - lambda) < 1e-13 * (1.0 + std::abs(rayleigh)) && iter > 2) {
            x = next;
            lambda = rayleigh;
            break;
        }
        lambda = rayleigh;
        x = next;
    }
    if (eigenvalue) *eigenvalue = lambda;
    return x;
}

}  // namespace detail

inline double spectral_radius(const Eigen::MatrixXd& a) {
    double lambda = 0.0;
    detail::dominant_eigenvector(a, &lambda);
    return std::max(lambda, 0.0);
}

// Scores for the global, matrix-backed indices. Dense linear algebra; fine up
// to a few thousand nodes.
inline std::vector<double> matrix_scores(const Graph& g_train, const std::vector<Edge>& pairs,
                                         MatrixRule rule, const MatrixParams& params = {}) {
    const Eigen::Index n = Eigen::Index(g_train.node_count());
    const Eigen::MatrixXd a = adjacency_matrix(g_train);
    std::vector<double> scores(pairs.size(), 0.0);

    auto gather = [&](const Eigen::MatrixXd& s) {
        for (std::size_t i = 0; i < pairs.size(); ++i) scores[i] = s(pairs[i].u, pairs[i].v);
    };

    switch (rule) {
        case MatrixRule::LP: {
            if (params.lp_epsilon < 0.0) throw domain_error("LP epsilon must be >= 0");
            Eigen::MatrixXd a2 = a * a;
            gather(a2 + params.lp_epsilon * (a2 * a));
            break;
        }
        case MatrixRule::Katz: {
            double lambda = spectral_radius(a);
            double beta = params.katz_beta;
            if (beta == 0.0) beta = lambda > 0.0 ? std::min(0.01, 0.85 / lambda) : 0.01;
            if (beta <= 0.0 || (lambda > 0.0 && beta >= 1.0 / lambda))
                throw domain_error("Katz beta must lie in (0, 1/lambda_max)");
            // I - beta*A is SPD for admissible beta, so LLT doubles as the
            // convergence check
            Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - beta * a;
            Eigen::LLT<Eigen::MatrixXd> llt(m);
            if (llt.info() != Eigen::Success) throw numeric_error("Katz: I - beta*A not SPD");
            gather(llt.solve(Eigen::MatrixXd::Identity(n, n)) -
                   Eigen::MatrixXd::Identity(n, n));
            break;
        }
        case MatrixRule::L3: {
            // degree-normalized paths of length three:
            // sum_{u,v} a_xu a_uv a_vy / sqrt(k_u k_v)
            Eigen::VectorXd dinv = Eigen::VectorXd::Zero(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                double k = double(g_train.degree(NodeId(i)));
                dinv(i) = k > 0.0 ? 1.0 / std::sqrt(k) : 0.0;
            }
            Eigen::MatrixXd mid = dinv.asDiagonal() * a * dinv.asDiagonal();
            gather(a * mid * a);
            break;
        }
        case MatrixRule::A3:
            gather(a * a * a);
            break;
        case MatrixRule::ACT: {
            // similarity = inverse average commute time, from the Laplacian
            // pseudoinverse
            Eigen::VectorXd deg = a.rowwise().sum();
            Eigen::MatrixXd lap = Eigen::MatrixXd(deg.asDiagonal()) - a;
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lap);
            Eigen::MatrixXd lp = cod.pseudoInverse();
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                NodeId x = pairs[i].u, y = pairs[i].v;
                double denom = lp(x, x) + lp(y, y) - 2.0 * lp(x, y);
                scores[i] = denom > 1e-12 ? 1.0 / denom : 0.0;
            }
            break;
        }
        case MatrixRule::MFI: {
            Eigen::VectorXd deg = a.rowwise().sum();
            Eigen::MatrixXd m =
                Eigen::MatrixXd(deg.asDiagonal()) - a + Eigen::MatrixXd::Identity(n, n);
            Eigen::LLT<Eigen::MatrixXd> llt(m);
            if (llt.info() != Eigen::Success) throw numeric_error("MFI: I + L not SPD");
            gather(llt.solve(Eigen::MatrixXd::Identity(n, n)));
            break;
        }
        case MatrixRule::LO: {
            // S = alpha * A (alpha*A^2 + I)^{-1} A^2, the closed form of the
            // linear-optimization likelihood fit
            if (params.lo_alpha <= 0.0) throw domain_error("LO alpha must be > 0");
            Eigen::MatrixXd a2 = a * a;
            Eigen::MatrixXd m =
                params.lo_alpha * a2 + Eigen::MatrixXd::Identity(n, n);
            Eigen::LLT<Eigen::MatrixXd> llt(m);
            if (llt.info() != Eigen::Success) throw numeric_error("LO: system not SPD");
            gather(params.lo_alpha * a * llt.solve(a2));
            break;
        }
        case MatrixRule::CLE: {
            // rank-one score from the leading eigenvector: the first-order
            // growth of lambda_max when the candidate edge is added
            Eigen::VectorXd v = detail::dominant_eigenvector(a, nullptr);
            for (std::size_t i = 0; i < pairs.size(); ++i)
                scores[i] = v(pairs[i].u) * v(pairs[i].v);
            break;
        }
    }
    return scores;
}

}  // namespace linkpred
