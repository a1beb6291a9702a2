#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "linkpred/errors.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/rng.hpp"

namespace linkpred {

struct ScoredCandidate {
    Edge pair;
    double score = 0.0;
    bool is_positive = false;
};

// Candidates in descending score order. Ties are put in a seeded uniform
// random order so that position-based metrics see a total order; rank-based
// metrics (AUC) recover exact tie handling from the scores themselves.
struct RankedCandidates {
    std::vector<ScoredCandidate> entries;
    std::uint64_t tie_seed = 0;

    std::size_t size() const { return entries.size(); }
    std::size_t positive_count() const { return n_pos_; }
    std::size_t negative_count() const { return entries.size() - n_pos_; }

    // 1-based ranks r_1 < r_2 < ... of the positive entries
    std::vector<std::size_t> positive_ranks() const {
        std::vector<std::size_t> ranks;
        ranks.reserve(n_pos_);
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i].is_positive) ranks.push_back(i + 1);
        return ranks;
    }

    friend RankedCandidates rank_candidates(const CandidateSet&, const std::vector<double>&,
                                            std::uint64_t);

private:
    std::size_t n_pos_ = 0;
};

inline RankedCandidates rank_candidates(const CandidateSet& cand,
                                        const std::vector<double>& scores,
                                        std::uint64_t tie_seed) {
    if (scores.size() != cand.pairs.size())
        throw domain_error("score vector length does not match candidate set");
    for (double s : scores)
        if (!std::isfinite(s)) throw numeric_error("non-finite candidate score");

    std::vector<std::uint64_t> tiebreak(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) tiebreak[i] = mix_seed(tie_seed, i);

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        if (tiebreak[a] != tiebreak[b]) return tiebreak[a] < tiebreak[b];
        return a < b;
    });

    RankedCandidates ranked;
    ranked.tie_seed = tie_seed;
    ranked.entries.reserve(scores.size());
    for (std::size_t i : order) {
        ranked.entries.push_back({cand.pairs[i], scores[i], cand.positive[i] != 0});
        ranked.n_pos_ += cand.positive[i] != 0;
    }
    return ranked;
}

}  // namespace linkpred
