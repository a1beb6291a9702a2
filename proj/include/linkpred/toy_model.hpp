#pragma once

#include <cstdint>
#include <vector>

#include "linkpred/errors.hpp"
#include "linkpred/rank_correlation.hpp"
#include "linkpred/rng.hpp"

namespace linkpred {

enum class Aggregation {
    PerNetworkAverage,  // method 1: correlate per network, then average
    MeanRank,           // method 2: average ranks per algorithm, correlate once
};

// Two consistent synthetic metrics X and Y observed through independent
// uniform noise: x_ij = j + sigma_ij, y_ij = j + eta_ij over Q networks and
// P algorithms, noise ~ U(0, noise_high).
struct ToyConfig {
    std::size_t algorithms_p = 100;
    std::size_t networks_q = 500;
    double noise_high = -1.0;  // negative means "use P"
    std::uint64_t seed = 1;
};

struct ToyScores {
    // [network][algorithm]
    std::vector<std::vector<double>> x;
    std::vector<std::vector<double>> y;
};

inline ToyScores generate_toy_scores(const ToyConfig& cfg) {
    if (cfg.algorithms_p < 2) throw domain_error("toy model needs P >= 2");
    if (cfg.networks_q < 1) throw domain_error("toy model needs Q >= 1");
    double high = cfg.noise_high < 0.0 ? double(cfg.algorithms_p) : cfg.noise_high;
    if (high < 0.0) throw domain_error("noise_high must be >= 0");

    // independent substreams so the sigma/eta tables can be exchanged
    Rng sigma = Rng(cfg.seed).child(0);
    Rng eta = Rng(cfg.seed).child(1);

    ToyScores scores;
    scores.x.assign(cfg.networks_q, std::vector<double>(cfg.algorithms_p));
    scores.y.assign(cfg.networks_q, std::vector<double>(cfg.algorithms_p));
    for (std::size_t i = 0; i < cfg.networks_q; ++i) {
        for (std::size_t j = 0; j < cfg.algorithms_p; ++j) {
            scores.x[i][j] = double(j + 1) + sigma.uniform() * high;
            scores.y[i][j] = double(j + 1) + eta.uniform() * high;
        }
    }
    return scores;
}

// X-Y correlation for every prefix Q' = 1..Q of the score tables.
// Undefined prefixes (constant rankings) are carried as missing.
inline std::vector<std::optional<double>> toy_trace(const ToyScores& scores,
                                                    Aggregation aggregation,
                                                    Coefficient coefficient = Coefficient::Spearman) {
    const std::size_t q = scores.x.size();
    const std::size_t p = q > 0 ? scores.x[0].size() : 0;
    std::vector<std::optional<double>> trace(q);

    std::vector<std::vector<double>> ranks_x(q), ranks_y(q);
    for (std::size_t i = 0; i < q; ++i) {
        ranks_x[i] = ranks_from_scores(scores.x[i]);
        ranks_y[i] = ranks_from_scores(scores.y[i]);
    }

    if (aggregation == Aggregation::PerNetworkAverage) {
        double sum = 0.0;
        std::size_t defined = 0;
        for (std::size_t i = 0; i < q; ++i) {
            if (auto r = correlate(ranks_x[i], ranks_y[i], coefficient)) {
                sum += *r;
                ++defined;
            }
            if (defined > 0) trace[i] = sum / double(defined);
        }
    } else {
        std::vector<double> mean_x(p, 0.0), mean_y(p, 0.0);
        for (std::size_t i = 0; i < q; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                mean_x[j] += ranks_x[i][j];
                mean_y[j] += ranks_y[i][j];
            }
            std::vector<double> mx(p), my(p);
            for (std::size_t j = 0; j < p; ++j) {
                mx[j] = mean_x[j] / double(i + 1);
                my[j] = mean_y[j] / double(i + 1);
            }
            // mean ranks order algorithms; correlate the induced rankings
            trace[i] = correlate(ranks_from_scores(mx, /*higher_is_better=*/false),
                                 ranks_from_scores(my, false), coefficient);
        }
    }
    return trace;
}

inline std::vector<std::optional<double>> run_toy(const ToyConfig& cfg, Aggregation aggregation,
                                                  Coefficient coefficient = Coefficient::Spearman) {
    return toy_trace(generate_toy_scores(cfg), aggregation, coefficient);
}

}  // namespace linkpred
